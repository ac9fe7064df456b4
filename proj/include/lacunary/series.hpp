#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dense_poly.hpp"
#include "error.hpp"
#include "factor.hpp"
#include "rational.hpp"
#include "sparse_poly.hpp"

namespace lacunary {

/// Power series in y known modulo y^order. Coefficients at exponents >= order
/// are unknown, not zero; no stored exponent reaches the order.
class TruncatedSeries {
  public:
    using TermMap = std::map<Exponent, Rational>;

    TruncatedSeries() = default;

    explicit TruncatedSeries(Exponent order) : order_(std::move(order)) {
        if (order_ < 0)
            fail(ErrorCode::UndefinedInput, "negative truncation order");
    }

    TruncatedSeries(std::initializer_list<std::pair<Exponent, Rational>> terms, Exponent order)
        : TruncatedSeries(std::move(order)) {
        for (const auto& [e, a] : terms)
            add_term(e, a);
    }

    /// Reads a polynomial in y as a series modulo y^order.
    static TruncatedSeries from_poly(const SparsePoly& p, Exponent order) {
        TruncatedSeries s(std::move(order));
        for (const auto& [e, a] : p.terms())
            s.add_term(e, a);
        return s;
    }

    void add_term(const Exponent& e, const Rational& a) {
        if (e < 0)
            fail(ErrorCode::UndefinedInput, "negative series exponent");
        if (a == 0 || e >= order_)
            return;
        auto [it, inserted] = terms_.try_emplace(e, a);
        if (!inserted) {
            it->second += a;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    const Exponent& order() const { return order_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    Rational coeff(const Exponent& e) const {
        if (e >= order_)
            fail(ErrorCode::Inconsistency, "coefficient at or beyond the truncation order");
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Same series known to a smaller order.
    TruncatedSeries truncated(const Exponent& order) const {
        TruncatedSeries r(std::min(order, order_));
        for (const auto& [e, a] : terms_) {
            if (e >= r.order_)
                break;
            r.terms_.emplace(e, a);
        }
        return r;
    }

    /// Multiplication by c*y^shift; the order moves with the shift.
    TruncatedSeries shifted(const Exponent& shift, const Rational& c = 1) const {
        TruncatedSeries r(order_ + shift);
        if (c == 0)
            return r;
        for (const auto& [e, a] : terms_)
            r.terms_.emplace(e + shift, a * c);
        return r;
    }

    SparsePoly to_poly() const {
        SparsePoly p;
        for (const auto& [e, a] : terms_)
            p.add_term(e, a);
        return p;
    }

    /// Equality as truncated series: same order and same known coefficients.
    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order_, b.order_));
        for (const auto& [e, c] : a.terms_)
            r.add_term(e, c);
        for (const auto& [e, c] : b.terms_)
            r.add_term(e, c);
        return r;
    }

    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a + b.shifted(0, -1);
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order_, b.order_));
        for (const auto& [ea, ca] : a.terms_) {
            if (ea >= r.order_)
                break;
            for (const auto& [eb, cb] : b.terms_) {
                Exponent e = ea + eb;
                if (e >= r.order_)
                    break;
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

  private:
    Exponent order_ = 0;
    TermMap terms_;
};

inline TruncatedSeries pow(const TruncatedSeries& base, unsigned long e) {
    TruncatedSeries result({{0, 1}}, base.order());
    TruncatedSeries b = base;
    while (e) {
        if (e & 1)
            result = result * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return result;
}

/// Generalized binomial coefficient (s/d choose k).
inline Rational binom_general(long s, long d, unsigned long k) {
    if (d < 1)
        fail(ErrorCode::UndefinedInput, "binomial denominator must be positive");
    Rational alpha(s, d);
    alpha.canonicalize();
    Rational acc = 1;
    for (unsigned long i = 0; i < k; ++i)
        acc *= (alpha - static_cast<long>(i)) / Rational(static_cast<long>(i + 1));
    return acc;
}

/// Coefficient of prod b_i^{h_i} in (1 + sum b_i y^{n_i})^{s/d}.
inline Rational multinomial_coeff(long s, long d, const std::vector<unsigned long>& h) {
    unsigned long k = 0;
    for (auto x : h)
        k += x;
    Integer ways;
    mpz_fac_ui(ways.get_mpz_t(), k);
    for (auto x : h) {
        Integer f;
        mpz_fac_ui(f.get_mpz_t(), x);
        ways /= f;
    }
    return binom_general(s, d, k) * Rational(ways);
}

struct PowOptions {
    /// Maximum number of series positions the engine may visit.
    std::size_t budget = 100'000;
    /// Re-check result^d == fs^s modulo the truncation order.
    bool verify = true;
};

namespace detail {

/// fs^alpha for fs with constant term 1, visiting only exponents reachable as
/// sums of exponents of fs. Uses n*F_n = sum_j ((alpha+1)*j - n)*a_j*F_{n-j}.
inline TruncatedSeries power_push(const TruncatedSeries& fs, const Rational& alpha,
                                  const Exponent& order, std::size_t budget) {
    std::vector<std::pair<Exponent, Rational>> tail;
    for (const auto& [e, a] : fs.terms())
        if (e > 0)
            tail.emplace_back(e, a);
    TruncatedSeries out(order);
    if (order <= 0)
        return out;
    std::map<Exponent, Rational> known{{Exponent(0), Rational(1)}};
    std::set<Exponent> frontier;
    for (const auto& [j, a] : tail)
        if (j < order)
            frontier.insert(j);
    const Rational alpha1 = alpha + 1;
    std::size_t visited = 0;
    Exponent back;
    while (!frontier.empty()) {
        Exponent n = *frontier.begin();
        frontier.erase(frontier.begin());
        if (++visited > budget)
            fail(ErrorCode::CandidateBudget,
                 "series expansion exceeded budget of " + std::to_string(budget) + " positions");
        Rational sum = 0;
        for (const auto& [j, a] : tail) {
            if (j > n)
                break;
            back = n - j;
            auto it = known.find(back);
            if (it == known.end())
                continue;
            sum += (alpha1 * Rational(j) - Rational(n)) * a * it->second;
        }
        if (sum == 0)
            continue;
        sum /= Rational(n);
        known.emplace(n, sum);
        for (const auto& [j, a] : tail) {
            Exponent next = n + j;
            if (next >= order)
                break;
            frontier.insert(std::move(next));
        }
    }
    for (const auto& [e, a] : known)
        out.add_term(e, a);
    return out;
}

inline void require_unit_constant(const TruncatedSeries& fs) {
    if (fs.order() < 1 || fs.coeff(0) != 1)
        fail(ErrorCode::Normalization, "series must have constant term exactly 1");
}

} // namespace detail

/// Truncated fs^{s/d} to order min(N, order(fs)).
inline TruncatedSeries pow_fractional(const TruncatedSeries& fs, long s, long d, const Exponent& order,
                                      const PowOptions& opts = {}) {
    if (d < 1)
        fail(ErrorCode::UndefinedInput, "root index must be positive");
    detail::require_unit_constant(fs);
    const Exponent n = std::min(order, fs.order());
    Rational alpha(s, d);
    alpha.canonicalize();
    TruncatedSeries result = detail::power_push(fs.truncated(n), alpha, n, opts.budget);
    if (opts.verify) {
        TruncatedSeries base = fs.truncated(n);
        TruncatedSeries lhs = pow(result, static_cast<unsigned long>(d));
        TruncatedSeries rhs({{0, 1}}, n);
        if (s >= 0)
            rhs = pow(base, static_cast<unsigned long>(s));
        else
            lhs = lhs * pow(base, static_cast<unsigned long>(-s));
        if (!(lhs == rhs))
            fail(ErrorCode::Inconsistency, "fractional power failed its self-check");
    }
    return result;
}

/// One summand c * delta^{s/d - k} * y^e of the split expansion.
struct DeltaSplitTerm {
    Rational coeff;
    unsigned long k;
    Exponent y_exp;

    friend bool operator==(const DeltaSplitTerm&, const DeltaSplitTerm&) = default;
};

/// Re-expands a split term list into a plain series modulo y^order.
inline TruncatedSeries reexpand_delta_split(const std::vector<DeltaSplitTerm>& terms,
                                            const TruncatedSeries& delta, long s, long d,
                                            const Exponent& order, const PowOptions& opts = {}) {
    TruncatedSeries acc(order);
    TruncatedSeries base = TruncatedSeries::from_poly(delta.to_poly(), order);
    for (const auto& t : terms) {
        Exponent rest = order - t.y_exp;
        if (rest <= 0)
            continue;
        long exponent = s - static_cast<long>(t.k) * d;
        PowOptions inner = opts;
        inner.verify = false;
        TruncatedSeries piece = pow_fractional(base, exponent, d, rest, inner);
        TruncatedSeries lifted = piece.shifted(t.y_exp, t.coeff);
        for (const auto& [e, a] : lifted.terms())
            acc.add_term(e, a);
    }
    return acc;
}

/// Writes fs^{s/d} = delta^{s/d} (1 + T/delta)^{s/d}, T = fs - delta, as the
/// list of terms c * delta^{s/d-k} * y^e with e < order. delta must be the
/// partial sum of the first p+1 terms of fs.
inline std::vector<DeltaSplitTerm> delta_split_expand(const TruncatedSeries& fs, std::size_t p,
                                                      const TruncatedSeries& delta, long s, long d,
                                                      const Exponent& order,
                                                      const PowOptions& opts = {}) {
    if (d < 1)
        fail(ErrorCode::UndefinedInput, "root index must be positive");
    detail::require_unit_constant(fs);
    detail::require_unit_constant(delta);
    if (delta.term_count() != p + 1)
        fail(ErrorCode::Inconsistency, "delta must have exactly p+1 terms");
    auto fit = fs.terms().begin();
    for (const auto& [e, a] : delta.terms()) {
        if (fit == fs.terms().end() || fit->first != e || fit->second != a)
            fail(ErrorCode::Inconsistency, "delta is not a prefix of the series");
        ++fit;
    }
    const Exponent n = std::min(order, fs.order());
    std::vector<std::pair<Exponent, Rational>> tail(fit, fs.terms().end());

    std::map<std::pair<unsigned long, Exponent>, Rational> merged;
    std::vector<unsigned long> h(tail.size(), 0);
    std::size_t visited = 0;
    // depth-first over exponent vectors h with sum h_i * e_i < n
    auto walk = [&](auto&& self, std::size_t i, const Exponent& e, const Rational& mono) -> void {
        if (i == tail.size()) {
            if (++visited > opts.budget)
                fail(ErrorCode::CandidateBudget, "split expansion exceeded its budget");
            unsigned long k = 0;
            for (auto x : h)
                k += x;
            Rational c = multinomial_coeff(s, d, h) * mono;
            if (c != 0)
                merged[{k, e}] += c;
            return;
        }
        Exponent cur = e;
        Rational m = mono;
        for (h[i] = 0; cur < n; ++h[i]) {
            self(self, i + 1, cur, m);
            cur += tail[i].first;
            m *= tail[i].second;
        }
        h[i] = 0;
    };
    walk(walk, 0, Exponent(0), Rational(1));

    std::vector<DeltaSplitTerm> out;
    for (auto& [key, c] : merged)
        if (c != 0)
            out.push_back({c, key.first, key.second});
    std::sort(out.begin(), out.end(), [](const DeltaSplitTerm& a, const DeltaSplitTerm& b) {
        return a.y_exp != b.y_exp ? a.y_exp < b.y_exp : a.k < b.k;
    });

    TruncatedSeries expect = pow_fractional(fs, s, d, n, PowOptions{opts.budget, false});
    if (!(reexpand_delta_split(out, delta, s, d, n, opts) == expect))
        fail(ErrorCode::Inconsistency, "split expansion does not re-expand to the direct power");
    return out;
}

/// Coefficients c_{-1}, c_0, c_1, ... with g(c_{-1} F + c_0 + c_1/F + ...) = F^d + O(F^{d-count}).
struct PuiseuxTail {
    std::vector<Rational> c; // c[i] holds c_{i-1}
};

namespace detail {

/// Exact rational d-th root if one exists; the positive one for even d.
inline std::optional<Rational> rational_root(const Rational& a, unsigned long d) {
    if (a == 0)
        return Rational(0);
    if (a < 0 && d % 2 == 0)
        return std::nullopt;
    Integer num = abs(a.get_num()), den = a.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), d) || !mpz_root(rd.get_mpz_t(), den.get_mpz_t(), d))
        return std::nullopt;
    Rational r(rn, rd);
    r.canonicalize();
    return a < 0 ? -r : r;
}

/// P(w) = sum_j b_j w^{d-j} u(w)^j modulo w^len, u given densely.
inline std::vector<Rational> inverse_defect(const DensePoly& g, const std::vector<Rational>& u,
                                            std::size_t len) {
    const auto d = static_cast<std::size_t>(g.degree());
    auto mul_trunc = [len](const std::vector<Rational>& a, const std::vector<Rational>& b) {
        std::vector<Rational> r(len);
        for (std::size_t i = 0; i < a.size() && i < len; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
                r[i + j] += a[i] * b[j];
        }
        return r;
    };
    std::vector<Rational> P(len);
    std::vector<Rational> upow(len);
    upow[0] = 1;
    for (std::size_t j = 0; j <= d; ++j) {
        if (j > 0)
            upow = mul_trunc(upow, u);
        const Rational& b = g.coeffs()[j];
        if (b == 0)
            continue;
        for (std::size_t i = 0; i + (d - j) < len; ++i)
            P[i + d - j] += b * upow[i];
    }
    return P;
}

} // namespace detail

/// Puiseux expansion at infinity of the branch of g^{-1}(F^d), by coefficient
/// matching one unknown at a time.
inline PuiseuxTail puiseux_inverse_at_infinity(const DensePoly& g, std::size_t count) {
    if (g.degree() < 1)
        fail(ErrorCode::UndefinedInput, "outer polynomial must be non-constant");
    if (count < 1)
        fail(ErrorCode::UndefinedInput, "count must be positive");
    const auto d = static_cast<unsigned long>(g.degree());
    auto root = detail::rational_root(1 / g.lead(), d);
    if (!root)
        fail(ErrorCode::Normalization, "leading coefficient has no rational root of index " +
                                           std::to_string(d));
    std::vector<Rational> u(count);
    u[0] = *root;
    Rational u0pow = 1;
    for (unsigned long i = 1; i < d; ++i)
        u0pow *= u[0];
    const Rational slope = Rational(static_cast<long>(d)) * g.lead() * u0pow;
    for (std::size_t i = 1; i < count; ++i) {
        // u[i] is still 0 here, so P[i] holds everything but its linear term.
        auto P = detail::inverse_defect(g, u, i + 1);
        u[i] = -P[i] / slope;
    }
    auto P = detail::inverse_defect(g, u, count);
    for (std::size_t i = 0; i < count; ++i)
        if (P[i] != (i == 0 ? 1 : 0))
            fail(ErrorCode::Inconsistency, "Puiseux back-substitution failed");
    return {std::move(u)};
}

namespace detail {

/// f(x) = lead * x^m * reversal(y) with y = 1/x.
inline TruncatedSeries reversal(const SparsePoly& f, const Exponent& order) {
    const Exponent& m = f.degree();
    const Rational inv = 1 / f.lead();
    TruncatedSeries r(order);
    for (const auto& [e, a] : f.terms())
        r.add_term(m - e, a * inv);
    return r;
}

inline std::vector<Rational> rational_roots(const DensePoly& g) {
    std::vector<Rational> roots;
    for (const auto& [p, mult] : factor(g))
        if (p.degree() == 1)
            roots.push_back(-p.coeffs()[0]);
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace detail

/// Series of x^{-m/d} (h(x) - xi) in y = 1/x, where h is the Puiseux branch of
/// g^{-1}(f) and xi the root of g singled out by the order of f at x = 0.
inline TruncatedSeries tilde_h_truncation(const SparsePoly& f, const DensePoly& g, const Exponent& order,
                                          const PowOptions& opts = {}) {
    if (f.is_zero() || f.degree() == 0)
        fail(ErrorCode::UndefinedInput, "f must be non-constant");
    if (g.degree() < 1)
        fail(ErrorCode::UndefinedInput, "g must be non-constant");
    const Exponent& m = f.degree();
    const long d = g.degree();
    if (!mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(d)))
        fail(ErrorCode::NotApplicable, "deg g does not divide deg f");
    const Exponent step = m / d;
    const DensePoly g1 = g * (1 / f.lead());
    if (order <= 0)
        return TruncatedSeries(order);
    Exponent terms_needed = (order - 1) / step + 1; // c_{-1} .. c_{J}
    if (terms_needed > opts.budget)
        fail(ErrorCode::CandidateBudget, "too many Puiseux coefficients requested");
    const auto count = static_cast<std::size_t>(terms_needed.get_ui());
    const PuiseuxTail tail = puiseux_inverse_at_infinity(g1, count);
    const TruncatedSeries ft = detail::reversal(f, order);

    TruncatedSeries acc(order);
    for (std::size_t i = 0; i < count; ++i) {
        const Rational& c = tail.c[i];
        if (c == 0)
            continue;
        // c_j y^{(j+1)m/d} ftilde^{-j/d}, j = i - 1
        const Exponent shift = step * static_cast<unsigned long>(i);
        const long j = static_cast<long>(i) - 1;
        TruncatedSeries piece = j == 0 ? TruncatedSeries({{0, 1}}, order - shift)
                                       : pow_fractional(ft, -j, d, order - shift, PowOptions{opts.budget, false});
        const TruncatedSeries lifted = piece.shifted(shift, c);
        for (const auto& [e, a] : lifted.terms())
            acc.add_term(e, a);
    }

    if (step >= order)
        return acc;
    const Rational h0 = acc.coeff(step);
    const auto roots = detail::rational_roots(g1);
    Rational xi;
    if (f.low_degree() > 0) {
        if (std::find(roots.begin(), roots.end(), h0) == roots.end())
            fail(ErrorCode::NotApplicable, "value h(0) of the branch is not a root of g");
        xi = h0;
    } else {
        if (roots.empty())
            fail(ErrorCode::IrrationalShift, "g has no rational root to shift by");
        xi = roots.front();
    }
    acc.add_term(step, -xi);
    return acc;
}

} // namespace lacunary
