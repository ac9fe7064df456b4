#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dense_poly.hpp"
#include "error.hpp"
#include "limits.hpp"
#include "rational.hpp"
#include "series.hpp"
#include "sparse_poly.hpp"

namespace lacunary {

enum class DecompositionKind { Trivial, Proper };

constexpr std::string_view to_string(DecompositionKind k) {
    return k == DecompositionKind::Trivial ? "trivial" : "proper";
}

/// f = outer(inner). The inner polynomial is monic with zero constant term;
/// the outer one absorbs the affine ambiguity.
struct DecompositionResult {
    DensePoly outer;
    SparsePoly inner;
    DecompositionKind kind = DecompositionKind::Proper;
    unsigned long divisor_d = 0; // deg outer
};

struct DecomposeOptions {
    Limits limits;
    /// Series positions one divisor may visit before it is reported as exhausted.
    std::size_t candidate_budget = 100'000;
    std::size_t oracle_cap = 64;
    /// Reject divisors modulo a large prime before any rational arithmetic.
    bool modular_filter = true;
};

enum class DivisorStatus { Found, None, TrivialOnly, BudgetExhausted };

constexpr std::string_view to_string(DivisorStatus s) {
    switch (s) {
    case DivisorStatus::Found: return "found";
    case DivisorStatus::None: return "none";
    case DivisorStatus::TrivialOnly: return "trivial_only";
    case DivisorStatus::BudgetExhausted: return "budget_exhausted";
    }
    return "unknown";
}

struct DivisorDiagnostic {
    unsigned long d;
    DivisorStatus status;
    std::string note;
};

struct DecomposeReport {
    std::vector<DecompositionResult> results;
    std::vector<DivisorDiagnostic> diagnostics;
    /// 2 l (l+1) for the input's term count l.
    Exponent outer_degree_bound;
    std::size_t max_inner_terms = 0;
    /// f = g(x^n) for some n >= 2 and deg g >= 2, whether or not g was materialized.
    bool trivial_family = false;
    std::string note;

    bool decomposable() const { return trivial_family || !results.empty(); }
};

/// True when inner has the shape x^n.
inline bool is_monomial_inner(const SparsePoly& h) { return h.term_count() == 1; }

namespace detail {

inline std::optional<Exponent> smallest_prime_factor(const Exponent& n) {
    if (n < 2 || mpz_probab_prime_p(n.get_mpz_t(), 30))
        return std::nullopt;
    for (unsigned long q = 2; q < 10'000'000; ++q)
        if (mpz_divisible_ui_p(n.get_mpz_t(), q))
            return Exponent(q);
    fail(ErrorCode::CapExceeded, "cannot find a factor of exponent " + n.get_str());
}

} // namespace detail

/// f = g(x^n) for the largest n dividing every exponent with deg g >= 2.
inline std::optional<DecompositionResult> trivial_decompose(const SparsePoly& f, const Limits& limits = {}) {
    if (f.is_zero() || f.degree() == 0)
        fail(ErrorCode::UndefinedInput, "trivial_decompose needs a non-constant polynomial");
    Exponent n = exponent_gcd(f);
    const Exponent& m = f.degree();
    if (n < 2)
        return std::nullopt;
    if (m / n < 2) {
        // f = a x^n + b: use the largest proper divisor of n
        auto q = detail::smallest_prime_factor(n);
        if (!q)
            return std::nullopt;
        n /= *q;
    }
    const Exponent outer_deg = m / n;
    if (outer_deg > limits.dense_cap)
        fail(ErrorCode::CapExceeded, "outer degree " + outer_deg.get_str() + " exceeds dense cap");
    std::vector<Rational> g(outer_deg.get_ui() + 1);
    for (const auto& [e, a] : f.terms())
        g[Exponent(e / n).get_ui()] = a;
    DecompositionResult r;
    r.outer = DensePoly(std::move(g));
    r.inner = SparsePoly::monomial(1, n);
    r.kind = DecompositionKind::Trivial;
    r.divisor_d = outer_deg.get_ui();
    return r;
}

/// Polynomial part of f^{1/d} at infinity, from the reversal of f.
/// The candidate equals inner + constant whenever f = g(inner) with deg g = d.
inline SparsePoly sparse_root_candidate(const SparsePoly& f, unsigned long d, std::size_t budget = 100'000) {
    if (!f.is_monic())
        fail(ErrorCode::Precondition, "sparse_root_candidate needs a monic polynomial");
    const Exponent& m = f.degree();
    if (d < 2 || !mpz_divisible_ui_p(m.get_mpz_t(), d))
        fail(ErrorCode::Precondition, "d must be at least 2 and divide deg f");
    const Exponent top = m / d;
    const Exponent order = top + 1;
    const TruncatedSeries ft = detail::reversal(f, order);
    const TruncatedSeries root =
        pow_fractional(ft, 1, static_cast<long>(d), order, PowOptions{budget, false});
    SparsePoly h;
    for (const auto& [k, a] : root.terms())
        h.add_term(top - k, a);
    return h;
}

namespace detail {

/// Quotient and remainder of f by h, long division from the top.
inline std::pair<SparsePoly, SparsePoly> sparse_divmod(const SparsePoly& f, const SparsePoly& h,
                                                       const Limits& limits) {
    if (h.is_zero())
        fail(ErrorCode::UndefinedInput, "division by the zero polynomial");
    const Exponent& dh = h.degree();
    const Rational inv = 1 / h.lead();
    SparsePoly rem = f;
    SparsePoly quo;
    std::size_t steps = 0;
    Exponent shift;
    while (!rem.is_zero() && rem.degree() >= dh) {
        if (++steps > limits.term_cap)
            fail(ErrorCode::ExpansionOverflow, "sparse division exceeds term cap");
        shift = rem.degree() - dh;
        const Rational t = rem.lead() * inv;
        quo.add_term(shift, t);
        for (const auto& [e, a] : h.terms())
            rem.add_term(e + shift, -t * a);
    }
    return {quo, rem};
}

} // namespace detail

/// The unique g with f = g(h), by repeated division of f by h; none when some
/// remainder is not constant.
inline std::optional<DensePoly> recover_outer(const SparsePoly& f, const SparsePoly& h, const Limits& limits = {}) {
    if (h.is_zero() || h.degree() < 1)
        fail(ErrorCode::Precondition, "inner polynomial must be non-constant");
    if (f.is_zero())
        return DensePoly();
    const Exponent& m = f.degree();
    const Exponent& e = h.degree();
    if (!mpz_divisible_p(m.get_mpz_t(), e.get_mpz_t()))
        return std::nullopt;
    if (m / e > limits.dense_cap)
        fail(ErrorCode::CapExceeded, "outer degree exceeds dense cap");
    std::vector<Rational> g;
    SparsePoly q = f;
    while (!q.is_zero()) {
        auto [quo, rem] = detail::sparse_divmod(q, h, limits);
        if (!rem.is_zero() && rem.degree() > 0)
            return std::nullopt;
        g.push_back(rem.coeff(0));
        q = std::move(quo);
    }
    return DensePoly(std::move(g));
}

namespace detail::modp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct Zp {
    u64 p;
    u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p); }
    u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p ? s - p : s; }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (p - b); }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        while (e) {
            if (e & 1)
                r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); }
    std::optional<u64> reduce(const Rational& q) const {
        Integer n, dd;
        mpz_fdiv_r_ui(n.get_mpz_t(), q.get_num_mpz_t(), p);
        mpz_fdiv_r_ui(dd.get_mpz_t(), q.get_den_mpz_t(), p);
        if (dd == 0)
            return std::nullopt;
        return mul(n.get_ui(), inv(dd.get_ui()));
    }
};

constexpr u64 kPrimes[] = {2305843009213693951ULL, 4611686018427387847ULL, 9223372036854775783ULL};
constexpr std::int64_t kDenseLimit = std::int64_t{1} << 22;

using Terms = std::vector<std::pair<std::int64_t, u64>>; // (exponent, value)

inline u64 eval(const Zp& F, const Terms& p, u64 t) {
    u64 acc = 0;
    for (const auto& [e, a] : p)
        acc = F.add(acc, F.mul(a, F.pow(t, static_cast<u64>(e))));
    return acc;
}

/// Outcome of the modular screen for one divisor.
enum class Screen { Reject, Pass, NotApplicable };

/// Screens the divisor d of deg f (f monic) modulo a prime p with p > deg f
/// and p coprime to d and to every denominator of f. Then every rational
/// quantity below is p-integral and reduces correctly, so a failed check mod p
/// proves there is no decomposition with deg g = d over Q.
inline Screen screen_divisor(const SparsePoly& f, unsigned long d, std::size_t budget) {
    const Exponent& m = f.degree();
    if (!m.fits_slong_p())
        return Screen::NotApplicable;
    const std::int64_t deg = m.get_si();
    const std::int64_t top = deg / static_cast<std::int64_t>(d);
    if (top > kDenseLimit)
        return Screen::NotApplicable;
    for (u64 p : kPrimes) {
        Zp F{p};
        if (static_cast<u64>(deg) >= p || d % p == 0)
            continue;
        Terms fmod;
        std::vector<std::pair<std::int64_t, u64>> tail; // reversal exponents j > 0
        bool ok = true;
        for (const auto& [e, a] : f.terms()) {
            auto r = F.reduce(a);
            if (!r) {
                ok = false;
                break;
            }
            fmod.emplace_back(e.get_si(), *r);
            std::int64_t j = deg - e.get_si();
            if (j > 0 && *r != 0)
                tail.emplace_back(j, *r);
        }
        if (!ok)
            continue;
        std::sort(tail.begin(), tail.end());

        // root of the reversal, F_0 = 1, at reachable positions only
        const u64 alpha1 = F.add(F.inv(d % p), 1);
        std::vector<u64> val(static_cast<std::size_t>(top + 1), 0);
        std::vector<char> reach(static_cast<std::size_t>(top + 1), 0);
        val[0] = 1;
        for (const auto& [j, a] : tail)
            if (j <= top)
                reach[static_cast<std::size_t>(j)] = 1;
        std::size_t visited = 0;
        for (std::int64_t n = 1; n <= top; ++n) {
            if (!reach[static_cast<std::size_t>(n)])
                continue;
            if (++visited > budget)
                fail(ErrorCode::CandidateBudget,
                     "root expansion for d = " + std::to_string(d) + " exceeded its budget");
            u64 sum = 0;
            const u64 nm = static_cast<u64>(n) % p;
            for (const auto& [j, a] : tail) {
                if (j > n)
                    break;
                u64 prev = val[static_cast<std::size_t>(n - j)];
                if (!prev)
                    continue;
                u64 w = F.sub(F.mul(alpha1, static_cast<u64>(j) % p), nm);
                sum = F.add(sum, F.mul(F.mul(w, a), prev));
            }
            if (!sum)
                continue;
            val[static_cast<std::size_t>(n)] = F.mul(sum, F.inv(nm));
            for (const auto& [j, a] : tail) {
                if (n + j > top)
                    break;
                reach[static_cast<std::size_t>(n + j)] = 1;
            }
        }
        Terms h;
        for (std::int64_t k = 0; k <= top; ++k)
            if (val[static_cast<std::size_t>(k)])
                h.emplace_back(top - k, val[static_cast<std::size_t>(k)]);

        // interpolate g through d+1 points with distinct h-values, then test
        std::vector<u64> xs, ys;
        std::vector<u64> extra;
        for (u64 t = 1; t < 64 + 8 * static_cast<u64>(d) && (xs.size() <= d || extra.size() < 2); ++t) {
            u64 ht = eval(F, h, t);
            if (xs.size() <= d) {
                if (std::find(xs.begin(), xs.end(), ht) != xs.end())
                    continue;
                xs.push_back(ht);
                ys.push_back(eval(F, fmod, t));
            } else {
                extra.push_back(t);
            }
        }
        if (xs.size() <= d || extra.size() < 2)
            return Screen::Pass;
        auto lagrange = [&](u64 x) {
            u64 acc = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                u64 num = 1, den = 1;
                for (std::size_t k = 0; k < xs.size(); ++k) {
                    if (k == i)
                        continue;
                    num = F.mul(num, F.sub(x, xs[k]));
                    den = F.mul(den, F.sub(xs[i], xs[k]));
                }
                acc = F.add(acc, F.mul(ys[i], F.mul(num, F.inv(den))));
            }
            return acc;
        };
        for (u64 t : extra)
            if (lagrange(eval(F, h, t)) != eval(F, fmod, t))
                return Screen::Reject;
        return Screen::Pass;
    }
    return Screen::NotApplicable;
}

} // namespace detail::modp

/// All decompositions of f up to the canonical normalization: the trivial
/// family through its largest n, plus one proper candidate per divisor d of
/// deg f with 2 <= d <= min(2l(l+1), deg f / 2). Every result is recomposed
/// and checked before it is returned.
inline DecomposeReport sparse_decompose(const SparsePoly& f, const DecomposeOptions& opts = {}) {
    if (f.is_zero() || f.degree() == 0)
        fail(ErrorCode::UndefinedInput, "sparse_decompose needs a non-constant polynomial");
    DecomposeReport rep;
    const SparsePoly fm = f.monic();
    const Rational lead = f.lead();

    try {
        if (auto t = trivial_decompose(f, opts.limits)) {
            rep.results.push_back(std::move(*t));
            rep.trivial_family = true;
            rep.note = "trivial family listed with the largest n; divisors of n give further trivial decompositions";
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::CapExceeded)
            throw;
        // f = g(x^n) may still hold; g is just too long to write down densely
        rep.trivial_family = f.degree() / exponent_gcd(f) >= 2;
        rep.note = "trivial family exists (exponent gcd " + exponent_gcd(f).get_str() + ") but was not materialized: " +
                   e.what();
    }

    const Exponent l = static_cast<unsigned long>(f.term_count());
    rep.outer_degree_bound = 2 * l * (l + 1);
    const Exponent& m = f.degree();
    Exponent limit = std::min(rep.outer_degree_bound, Exponent(m / 2));
    if (!limit.fits_ulong_p())
        fail(ErrorCode::CapExceeded, "divisor range too large");
    const unsigned long last = limit.get_ui();

    for (unsigned long d = 2; d <= last; ++d) {
        if (!mpz_divisible_ui_p(m.get_mpz_t(), d))
            continue;
        DivisorDiagnostic diag{d, DivisorStatus::None, {}};
        try {
            if (opts.modular_filter &&
                detail::modp::screen_divisor(fm, d, opts.candidate_budget) == detail::modp::Screen::Reject) {
                diag.note = "rejected modulo p";
                rep.diagnostics.push_back(std::move(diag));
                continue;
            }
            SparsePoly h = sparse_root_candidate(fm, d, opts.candidate_budget).without_constant();
            if (is_monomial_inner(h)) {
                diag.status = DivisorStatus::TrivialOnly;
                rep.diagnostics.push_back(std::move(diag));
                continue;
            }
            if (auto g = recover_outer(fm, h, opts.limits)) {
                DensePoly outer = *g * lead;
                if (!(compose_outer(outer, h, opts.limits) == f))
                    fail(ErrorCode::Inconsistency, "recomposition check failed");
                rep.max_inner_terms = std::max(rep.max_inner_terms, h.term_count());
                rep.results.push_back({std::move(outer), std::move(h), DecompositionKind::Proper, d});
                diag.status = DivisorStatus::Found;
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::CandidateBudget && e.code() != ErrorCode::ExpansionOverflow)
                throw;
            diag.status = DivisorStatus::BudgetExhausted;
            diag.note = e.what();
        }
        rep.diagnostics.push_back(std::move(diag));
    }

    std::stable_sort(rep.results.begin(), rep.results.end(), [](const auto& a, const auto& b) {
        if (a.divisor_d != b.divisor_d)
            return a.divisor_d < b.divisor_d;
        return a.kind == DecompositionKind::Trivial && b.kind != DecompositionKind::Trivial;
    });
    return rep;
}

/// Exhaustive dense decomposition over every inner degree r | deg f: the top
/// coefficients of h^(n/r) fix h, then the base-h expansion fixes g. Kept
/// independent of the series engine; used to cross-check sparse_decompose.
inline std::vector<DecompositionResult> dense_decompose_oracle(const DensePoly& f, const DecomposeOptions& opts = {}) {
    if (f.degree() < 1)
        fail(ErrorCode::UndefinedInput, "oracle needs a non-constant polynomial");
    if (static_cast<std::size_t>(f.degree()) > opts.oracle_cap)
        fail(ErrorCode::CapExceeded, "degree exceeds oracle cap " + std::to_string(opts.oracle_cap));
    const long n = f.degree();
    const DensePoly fm = f.monic();
    std::vector<DecompositionResult> out;
    for (long r = n / 2; r >= 2; --r) {
        if (n % r)
            continue;
        const long s = n / r;
        std::vector<Rational> hc(static_cast<std::size_t>(r + 1));
        hc[static_cast<std::size_t>(r)] = 1;
        for (long k = 1; k < r; ++k) {
            DensePoly hs = pow(DensePoly(hc), static_cast<unsigned long>(s));
            hc[static_cast<std::size_t>(r - k)] = (fm[static_cast<std::size_t>(n - k)] - hs[static_cast<std::size_t>(n - k)]) / s;
        }
        DensePoly h(hc);
        std::vector<Rational> gc;
        DensePoly q = fm;
        bool ok = true;
        while (!q.is_zero()) {
            auto [quo, rem] = divmod(q, h);
            if (rem.degree() > 0) {
                ok = false;
                break;
            }
            gc.push_back(rem[0]);
            q = std::move(quo);
        }
        if (!ok)
            continue;
        DensePoly g = DensePoly(gc) * f.lead();
        if (!(compose(g, h) == f))
            fail(ErrorCode::Inconsistency, "oracle recomposition failed");
        SparsePoly inner = SparsePoly::from_dense(h);
        DecompositionKind kind = is_monomial_inner(inner) ? DecompositionKind::Trivial : DecompositionKind::Proper;
        out.push_back({std::move(g), std::move(inner), kind, static_cast<unsigned long>(s)});
    }
    return out;
}

} // namespace lacunary
