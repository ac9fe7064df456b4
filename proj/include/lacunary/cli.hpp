#pragma once

// Command-line front end: JSON in, JSON out, exit 0 / 1 (domain error) / 2 (usage).

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"

namespace lacunary::cli {

enum ExitCode { Ok = 0, DomainError = 1, UsageError = 2 };

struct CommandConfig {
    std::string subcommand;
    /// Path, "-" for standard input, or inline JSON (first character '{' or '[').
    std::string input = "-";
    std::optional<std::string> output;
    std::optional<std::size_t> budget_terms;
    std::optional<unsigned> cap_l, cap_ell, cap_b;
    std::optional<unsigned long> box;
    bool json_errors = true;
    int verbosity = 0;
};

namespace detail {

using io::Json;

struct UsageFailure {
    std::string message;
};

inline std::string read_input(const CommandConfig& cfg, std::istream& in) {
    const std::string& src = cfg.input;
    auto first = src.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (src[first] == '{' || src[first] == '['))
        return src;
    if (src == "-")
        return std::string(std::istreambuf_iterator<char>(in), {});
    std::ifstream f(src);
    if (!f)
        throw UsageFailure{"cannot read input file " + src};
    return std::string(std::istreambuf_iterator<char>(f), {});
}

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw UsageFailure{std::string("malformed JSON: ") + e.what()};
    }
}

inline Limits limits_of(const CommandConfig& cfg) {
    Limits lim;
    if (cfg.budget_terms)
        lim.term_cap = *cfg.budget_terms;
    return lim;
}

inline EnumCaps caps_of(const CommandConfig& cfg) {
    EnumCaps caps;
    if (cfg.cap_l)
        caps.max_l = *cfg.cap_l;
    if (cfg.cap_ell)
        caps.max_ell = *cfg.cap_ell;
    if (cfg.cap_b)
        caps.max_B = *cfg.cap_b;
    return caps;
}

inline Json cmd_decompose(const CommandConfig& cfg, const Json& in) {
    DecomposeOptions opts;
    opts.limits = limits_of(cfg);
    SparsePoly f = io::sparse_from_json(in);
    Json out = io::to_json(sparse_decompose(f, opts));
    out["input"] = io::to_json(f);
    return out;
}

inline Json cmd_expand(const CommandConfig& cfg, const Json& in) {
    io::detail::require_object(in, "expand", {"mode", "series", "s", "d", "order", "p", "delta", "g", "count", "f"});
    const Json& mode_j = io::detail::field(in, "mode", "expand");
    if (!mode_j.is_string())
        fail(ErrorCode::Parse, "expand: \"mode\" must be a string");
    const std::string mode = mode_j.get<std::string>();
    auto small = [&](const char* key) { return io::detail::small_of(io::detail::field(in, key, "expand"), key); };
    auto order = [&] { return io::detail::integer_of(io::detail::field(in, "order", "expand"), "order"); };
    PowOptions opts;
    if (cfg.budget_terms)
        opts.budget = *cfg.budget_terms;
    Json out;
    if (mode == "pow") {
        out = io::to_json(pow_fractional(io::series_from_json(io::detail::field(in, "series", "expand")), small("s"),
                                         small("d"), order(), opts));
    } else if (mode == "delta_split") {
        const long p = small("p");
        if (p < 0)
            fail(ErrorCode::Parse, "expand: \"p\" must be non-negative");
        TruncatedSeries fs = io::series_from_json(io::detail::field(in, "series", "expand"));
        // delta defaults to the first p+1 terms of the series
        TruncatedSeries delta(fs.order());
        if (in.contains("delta")) {
            delta = io::series_from_json(in["delta"]);
        } else {
            std::size_t taken = 0;
            for (const auto& [e, c] : fs.terms())
                if (taken++ <= static_cast<std::size_t>(p))
                    delta.add_term(e, c);
        }
        Json terms = Json::array();
        const Exponent n = order();
        for (const auto& t : delta_split_expand(fs, static_cast<std::size_t>(p), delta, small("s"), small("d"), n, opts))
            terms.push_back(io::to_json(t));
        out = Json{{"order", io::detail::exponent_json(n)}, {"terms", std::move(terms)}};
    } else if (mode == "puiseux") {
        const long count = small("count");
        if (count < 1)
            fail(ErrorCode::UndefinedInput, "count must be positive");
        PuiseuxTail tail = puiseux_inverse_at_infinity(io::dense_from_json(io::detail::field(in, "g", "expand")),
                                                       static_cast<std::size_t>(count));
        Json cs = Json::array();
        for (const auto& c : tail.c)
            cs.push_back(io::to_json(c));
        out = Json{{"count", count}, {"coefficients", std::move(cs)}};
    } else if (mode == "tilde_h") {
        out = io::to_json(tilde_h_truncation(io::sparse_from_json(io::detail::field(in, "f", "expand")),
                                             io::dense_from_json(io::detail::field(in, "g", "expand")), order(),
                                             opts));
    } else {
        fail(ErrorCode::Parse, "expand: unknown mode \"" + mode + "\"");
    }
    out["mode"] = mode;
    return out;
}

inline Json cmd_wronskian(const CommandConfig&, const Json& in) {
    io::detail::require_object(in, "wronskian-check", {"functions", "r", "S"});
    const Json& fs = io::detail::field(in, "functions", "wronskian-check");
    if (!fs.is_array())
        fail(ErrorCode::Parse, "wronskian-check: \"functions\" must be an array");
    std::vector<RatFunc> phis;
    for (const auto& f : fs)
        phis.push_back(io::ratfunc_from_json(f));
    long r = in.contains("r") ? io::detail::small_of(in["r"], "r") : 0;
    if (r < 0)
        fail(ErrorCode::Parse, "wronskian-check: \"r\" must be non-negative");
    std::optional<std::vector<Place>> S;
    if (in.contains("S")) {
        if (!in["S"].is_array())
            fail(ErrorCode::Parse, "wronskian-check: \"S\" must be an array");
        S.emplace();
        for (const auto& p : in["S"])
            S->push_back(io::place_from_json(p));
    }
    Json out = io::to_json(verify_prop1(phis, static_cast<std::size_t>(r), S));
    out["wronskian"] = io::to_json(wronskian_det(phis));
    out["order_sum"] = io::to_json(wronskian_order_sum(phis));
    return out;
}

inline Json cmd_enumerate(const CommandConfig& cfg, const Json& in) {
    io::detail::require_object(in, "enumerate", {"l", "ell", "B"});
    auto get = [&](const char* key) {
        long v = io::detail::small_of(io::detail::field(in, key, "enumerate"), key);
        if (v < 0)
            fail(ErrorCode::Parse, std::string("enumerate: negative ") + key);
        return static_cast<unsigned>(v);
    };
    MasterShape shape{get("l"), get("ell"), get("B")};
    return io::to_json(build_catalog(shape, caps_of(cfg)));
}

inline Json cmd_corollary(const CommandConfig& cfg, const Json& in) {
    io::detail::require_object(in, "corollary-scan", {"a", "m", "box"});
    const Json& aj = io::detail::field(in, "a", "corollary-scan");
    if (!aj.is_array())
        fail(ErrorCode::Parse, "corollary-scan: \"a\" must be an array");
    std::vector<Rational> a;
    for (const auto& x : aj)
        a.push_back(io::detail::rational_of(x, "a"));
    DecomposeOptions opts;
    opts.limits = limits_of(cfg);
    if (in.contains("m")) {
        if (!in["m"].is_array())
            fail(ErrorCode::Parse, "corollary-scan: \"m\" must be an array");
        std::vector<Exponent> m;
        for (const auto& x : in["m"])
            m.push_back(io::detail::integer_of(x, "m"));
        Json ms = Json::array();
        for (const auto& e : m)
            ms.push_back(io::detail::exponent_json(e));
        return Json{{"m", std::move(ms)}, {"decomposable", corollary_membership(a, m, opts)}};
    }
    unsigned long box = 12;
    if (in.contains("box"))
        box = static_cast<unsigned long>(io::detail::small_of(in["box"], "box"));
    if (cfg.box)
        box = *cfg.box;
    if (box < 1)
        fail(ErrorCode::Precondition, "box must be positive");
    return io::to_json(corollary_box_scan(a, box, opts));
}

inline void report_error(const CommandConfig& cfg, std::ostream& err, ErrorCode code, const std::string& msg) {
    if (cfg.json_errors)
        err << io::error_json(code, msg).dump() << "\n";
    if (!cfg.json_errors || cfg.verbosity > 0)
        err << "error (" << to_string(code) << "): " << msg << "\n";
}

} // namespace detail

inline const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names{"decompose", "expand", "wronskian-check", "enumerate",
                                                "corollary-scan"};
    return names;
}

/// Runs one subcommand. Output is written only when the whole command succeeded.
inline int run(const CommandConfig& cfg, std::ostream& out, std::ostream& err, std::istream& in = std::cin) {
    using detail::Json;
    try {
        Json input = detail::parse_json(detail::read_input(cfg, in));
        Json result;
        if (cfg.subcommand == "decompose")
            result = detail::cmd_decompose(cfg, input);
        else if (cfg.subcommand == "expand")
            result = detail::cmd_expand(cfg, input);
        else if (cfg.subcommand == "wronskian-check")
            result = detail::cmd_wronskian(cfg, input);
        else if (cfg.subcommand == "enumerate")
            result = detail::cmd_enumerate(cfg, input);
        else if (cfg.subcommand == "corollary-scan")
            result = detail::cmd_corollary(cfg, input);
        else
            throw detail::UsageFailure{"unknown subcommand " + cfg.subcommand};
        const std::string text = result.dump(2) + "\n";
        if (cfg.output) {
            std::ofstream f(*cfg.output, std::ios::binary);
            if (!f || !(f << text))
                throw detail::UsageFailure{"cannot write output file " + *cfg.output};
        } else {
            out << text;
        }
        return Ok;
    } catch (const detail::UsageFailure& e) {
        detail::report_error(cfg, err, ErrorCode::Parse, e.message);
        return UsageError;
    } catch (const Error& e) {
        detail::report_error(cfg, err, e.code(), e.what());
        return e.code() == ErrorCode::Parse ? UsageError : DomainError;
    } catch (const Json::exception& e) {
        detail::report_error(cfg, err, ErrorCode::Parse, e.what());
        return UsageError;
    }
}

/// Parses argv into a CommandConfig and runs it.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr,
                std::istream& in = std::cin) {
    CLI::App app{"Exact decomposition tools for sparse polynomials"};
    app.require_subcommand(1);
    CommandConfig cfg;
    std::string output;
    std::size_t budget = 0;
    unsigned cap_l = 0, cap_ell = 0, cap_b = 0;
    unsigned long box = 0;
    bool json_errors = true;
    for (const auto& name : subcommands()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("-i,--input", cfg.input, "input JSON file, '-' for stdin, or inline JSON");
        sub->add_option("-o,--output", output, "write the result here instead of stdout");
        sub->add_option("--budget-terms", budget, "term cap for expanding operations")->check(CLI::PositiveNumber);
        sub->add_option("--cap-l", cap_l, "catalog cap on l");
        sub->add_option("--cap-ell", cap_ell, "catalog cap on ell");
        sub->add_option("--cap-b", cap_b, "catalog cap on B");
        sub->add_option("--box", box, "exponent bound for corollary-scan")->check(CLI::PositiveNumber);
        sub->add_flag("--json-errors,!--text-errors", json_errors, "errors as JSON on stderr (default)");
        sub->add_flag("-v,--verbose", "also print human-readable error text");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        // report usage problems in the same machine-readable form
        CommandConfig probe;
        detail::report_error(probe, err, ErrorCode::Parse, e.what());
        return UsageError;
    }
    for (const auto* sub : app.get_subcommands()) {
        cfg.subcommand = sub->get_name();
        if (sub->count("--output"))
            cfg.output = output;
        if (sub->count("--budget-terms"))
            cfg.budget_terms = budget;
        if (sub->count("--cap-l"))
            cfg.cap_l = cap_l;
        if (sub->count("--cap-ell"))
            cfg.cap_ell = cap_ell;
        if (sub->count("--cap-b"))
            cfg.cap_b = cap_b;
        if (sub->count("--box"))
            cfg.box = box;
        cfg.verbosity = static_cast<int>(sub->count("--verbose"));
    }
    cfg.json_errors = json_errors;
    return run(cfg, out, err, in);
}

} // namespace lacunary::cli
