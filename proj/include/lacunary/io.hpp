#pragma once

// JSON encodings. Numbers that may exceed a machine word travel as decimal strings.

#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "decompose.hpp"
#include "error.hpp"
#include "param_enum.hpp"
#include "rational.hpp"
#include "series.hpp"
#include "sparse_poly.hpp"
#include "wronskian.hpp"

namespace lacunary::io {

using Json = nlohmann::json;

inline constexpr int catalog_schema_version = 1;

namespace detail {

inline void require_object(const Json& j, const std::string& what, std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        fail(ErrorCode::Parse, what + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            known = known || it.key() == k;
        if (!known)
            fail(ErrorCode::Parse, what + ": unknown field \"" + it.key() + "\"");
    }
}

inline const Json& field(const Json& j, const char* key, const std::string& what) {
    auto it = j.find(key);
    if (it == j.end())
        fail(ErrorCode::Parse, what + ": missing field \"" + key + "\"");
    return *it;
}

/// Accepts a decimal string or a JSON integer.
inline Integer integer_of(const Json& j, const std::string& what) {
    if (j.is_string())
        return parse_integer(j.get<std::string>());
    if (j.is_number_integer())
        return j.is_number_unsigned() ? Integer(std::to_string(j.get<unsigned long long>()))
                                      : Integer(std::to_string(j.get<long long>()));
    fail(ErrorCode::Parse, what + ": expected an integer or decimal string");
}

/// Accepts "p", "p/q" or a JSON integer.
inline Rational rational_of(const Json& j, const std::string& what) {
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    return Rational(integer_of(j, what));
}

inline long small_of(const Json& j, const std::string& what) {
    Integer v = integer_of(j, what);
    if (!v.fits_slong_p())
        fail(ErrorCode::Parse, what + ": value out of range");
    return v.get_si();
}

inline Json exponent_json(const Exponent& e) {
    if (e.fits_slong_p())
        return e.get_si();
    return e.get_str();
}

inline Json matrix_json(const IntMatrix& m) {
    Json out = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row)
            r.push_back(exponent_json(x));
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace detail

inline Json to_json(const Rational& q) { return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

inline Json to_json(const SparsePoly& f) {
    Json terms = Json::array();
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it)
        terms.push_back({{"exp", it->first.get_str()},
                         {"num", it->second.get_num().get_str()},
                         {"den", it->second.get_den().get_str()}});
    return Json{{"terms", std::move(terms)}};
}

inline Json to_json(const DensePoly& g) { return to_json(SparsePoly::from_dense(g)); }

inline SparsePoly sparse_from_json(const Json& j) {
    detail::require_object(j, "polynomial", {"terms"});
    const Json& terms = detail::field(j, "terms", "polynomial");
    if (!terms.is_array())
        fail(ErrorCode::Parse, "polynomial: \"terms\" must be an array");
    SparsePoly f;
    for (const auto& t : terms) {
        detail::require_object(t, "term", {"exp", "num", "den"});
        Exponent e = detail::integer_of(detail::field(t, "exp", "term"), "exp");
        if (e < 0)
            fail(ErrorCode::Parse, "term: negative exponent");
        Integer num = detail::integer_of(detail::field(t, "num", "term"), "num");
        Integer den = t.contains("den") ? detail::integer_of(t["den"], "den") : Integer(1);
        if (den == 0)
            fail(ErrorCode::Parse, "term: zero denominator");
        f.add_term(e, make_rational(num, den));
    }
    return f;
}

inline DensePoly dense_from_json(const Json& j, const Limits& limits = {}) {
    return to_dense(sparse_from_json(j), limits);
}

/// Truncated series: {"order": N, "terms": [{"exp": int, "num", "den"}]} ascending.
inline Json to_json(const TruncatedSeries& s) {
    Json terms = Json::array();
    for (const auto& [e, c] : s.terms())
        terms.push_back({{"exp", detail::exponent_json(e)}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
    return Json{{"order", detail::exponent_json(s.order())}, {"terms", std::move(terms)}};
}

inline TruncatedSeries series_from_json(const Json& j) {
    detail::require_object(j, "series", {"order", "terms"});
    Exponent order = detail::integer_of(detail::field(j, "order", "series"), "order");
    if (order < 0)
        fail(ErrorCode::Parse, "series: negative order");
    const Json& terms = detail::field(j, "terms", "series");
    if (!terms.is_array())
        fail(ErrorCode::Parse, "series: \"terms\" must be an array");
    TruncatedSeries s(order);
    for (const auto& t : terms) {
        detail::require_object(t, "term", {"exp", "num", "den"});
        Exponent e = detail::integer_of(detail::field(t, "exp", "term"), "exp");
        if (e < 0)
            fail(ErrorCode::Parse, "series term: negative exponent");
        Integer num = detail::integer_of(detail::field(t, "num", "term"), "num");
        Integer den = t.contains("den") ? detail::integer_of(t["den"], "den") : Integer(1);
        if (den == 0)
            fail(ErrorCode::Parse, "term: zero denominator");
        s.add_term(e, make_rational(num, den));
    }
    return s;
}

inline Json to_json(const DeltaSplitTerm& t) {
    return Json{{"num", t.coeff.get_num().get_str()},
                {"den", t.coeff.get_den().get_str()},
                {"k", t.k},
                {"exp", detail::exponent_json(t.y_exp)}};
}

inline Json to_json(const Place& p) {
    if (p.is_infinite())
        return "inf";
    return to_json(p.poly());
}

inline Place place_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() != "inf")
            fail(ErrorCode::Parse, "place: the only string form is \"inf\"");
        return Place::infinity();
    }
    DensePoly p = dense_from_json(j);
    if (p.degree() < 1)
        fail(ErrorCode::Parse, "place: polynomial must be nonconstant");
    return Place::finite(p);
}

inline Json to_json(const RatFunc& f) { return Json{{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

inline RatFunc ratfunc_from_json(const Json& j) {
    detail::require_object(j, "rational function", {"num", "den"});
    DensePoly num = dense_from_json(detail::field(j, "num", "rational function"));
    DensePoly den = j.contains("den") ? dense_from_json(j["den"]) : DensePoly::constant(1);
    return RatFunc(std::move(num), std::move(den));
}

inline Json to_json(const Prop1Report& r) {
    Json details = Json::array();
    for (const auto& d : r.details)
        details.push_back({{"place", to_json(d.place)},
                           {"degree", d.place.degree()},
                           {"v_sigma", d.v_sigma},
                           {"min_v", d.min_v},
                           {"contribution", d.contribution}});
    return Json{{"lhs", r.lhs}, {"rhs", r.rhs},       {"holds", r.holds},
                {"n", r.n},     {"r", r.r},           {"s_size", r.s_size},
                {"details", std::move(details)}};
}

inline Json to_json(const WronskianOrderReport& r) {
    Json places = Json::array();
    for (const auto& p : r.places)
        places.push_back({{"place", to_json(p.place)}, {"degree", p.place.degree()}, {"order", p.order}});
    return Json{{"total", r.total}, {"expected", r.expected}, {"places", std::move(places)}};
}

inline Json to_json(const DecompositionResult& r) {
    return Json{{"kind", std::string(to_string(r.kind))},
                {"d", r.divisor_d},
                {"outer", to_json(r.outer)},
                {"inner", to_json(r.inner)}};
}

inline Json to_json(const DecomposeReport& rep) {
    Json results = Json::array();
    for (const auto& r : rep.results)
        results.push_back(to_json(r));
    Json diags = Json::array();
    for (const auto& d : rep.diagnostics) {
        Json e{{"d", d.d}, {"status", std::string(to_string(d.status))}};
        if (!d.note.empty())
            e["note"] = d.note;
        diags.push_back(std::move(e));
    }
    Json out{{"results", std::move(results)},
             {"diagnostics", std::move(diags)},
             {"outer_degree_bound", rep.outer_degree_bound.get_str()},
             {"max_inner_terms", rep.max_inner_terms},
             {"decomposable", rep.decomposable()}};
    if (!rep.note.empty())
        out["note"] = rep.note;
    return out;
}

inline Json to_json(const Catalog& cat) {
    const MasterShape& sh = cat.shape;
    Json vars = Json::array();
    for (std::size_t v = 0; v < sh.var_count(); ++v)
        vars.push_back(sh.var_name(v));
    Json terms = Json::array();
    for (const auto& t : cat.terms)
        terms.push_back({{"scalar", t.scalar.get_str()},
                         {"monomial", monomial_string(t.monomial)},
                         {"degree", t.degree.coeffs},
                         {"text", term_string(t, sh)}});
    Json entries = Json::array();
    for (const auto& e : cat.entries) {
        Json eqs = Json::array();
        for (const auto& q : e.system.equations) {
            Json jq{{"terms", q.term_indices}, {"equation", q.str()}};
            if (auto rel = q.relation())
                jq["relation"] = *rel;
            eqs.push_back(std::move(jq));
        }
        entries.push_back({{"id", e.id},
                           {"groups", e.partition.groups},
                           {"rank", e.lattice.rank},
                           {"basis", detail::matrix_json(e.lattice.basis)},
                           {"alpha", detail::matrix_json(e.lattice.alpha)},
                           {"beta", detail::matrix_json(e.lattice.beta)},
                           {"equations", std::move(eqs)}});
    }
    return Json{{"schema_version", catalog_schema_version},
                {"shape", {{"l", sh.l}, {"ell", sh.ell}, {"B", sh.B}}},
                {"variables", std::move(vars)},
                {"terms", std::move(terms)},
                {"entries", std::move(entries)},
                {"stats",
                 {{"partitions_visited", cat.stats.visited},
                  {"pruned_forced_merge", cat.stats.pruned_forced_merge},
                  {"pruned_zero_lattice", cat.stats.pruned_zero_lattice},
                  {"kept", cat.entries.size()}}}};
}

inline Json to_json(const BoxScanReport& rep) {
    Json closure = Json::array();
    for (const auto& c : rep.closure)
        closure.push_back({{"m", c.m}, {"t", c.t}, {"multiple_decomposable", c.multiple_decomposable}});
    return Json{{"box", rep.box},
                {"scanned", rep.scanned},
                {"decomposable", rep.decomposable},
                {"closure", std::move(closure)},
                {"closure_holds", rep.closure_holds}};
}

inline Json error_json(ErrorCode code, const std::string& message) {
    return Json{{"error", {{"code", std::string(to_string(code))}, {"message", message}}}};
}

} // namespace lacunary::io
