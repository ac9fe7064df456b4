#pragma once

// Factorization of univariate polynomials over Q into monic irreducibles:
// square-free decomposition, then Zassenhaus (Cantor-Zassenhaus modulo a
// word-sized prime, quadratic Hensel lifting, subset recombination).

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "dense_poly.hpp"
#include "error.hpp"
#include "rational.hpp"

namespace lacunary {

namespace detail::zp {

using u64 = std::uint64_t;
using Poly = std::vector<u64>; // ascending, trimmed

struct Field {
    u64 p;

    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
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
    u64 reduce(const Integer& z) const {
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
        return r.get_ui();
    }
};

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline long deg(const Poly& a) { return static_cast<long>(a.size()) - 1; }

inline Poly sub(const Field& F, Poly a, const Poly& b) {
    if (b.size() > a.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = F.sub(a[i], b[i]);
    trim(a);
    return a;
}

inline Poly mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty())
        return {};
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
    Poly r(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i)
        r[i] = static_cast<u64>(acc[i] % F.p);
    trim(r);
    return r;
}

inline std::pair<Poly, Poly> divmod(const Field& F, Poly a, const Poly& b) {
    if (deg(a) < deg(b))
        return {{}, a};
    const long db = deg(b);
    const u64 inv = F.inv(b.back());
    Poly q(static_cast<std::size_t>(deg(a) - db + 1), 0);
    for (long k = deg(a) - db; k >= 0; --k) {
        u64 t = F.mul(a[static_cast<std::size_t>(k + db)], inv);
        q[static_cast<std::size_t>(k)] = t;
        if (!t)
            continue;
        for (long i = 0; i <= db; ++i) {
            auto& slot = a[static_cast<std::size_t>(k + i)];
            slot = F.sub(slot, F.mul(t, b[static_cast<std::size_t>(i)]));
        }
    }
    a.resize(static_cast<std::size_t>(db));
    trim(a);
    trim(q);
    return {q, a};
}

inline Poly mod(const Field& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

inline Poly monic(const Field& F, Poly a) {
    if (a.empty())
        return a;
    u64 inv = F.inv(a.back());
    for (auto& x : a)
        x = F.mul(x, inv);
    return a;
}

inline Poly gcd(const Field& F, Poly a, Poly b) {
    while (!b.empty()) {
        Poly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, std::move(a));
}

/// s, t with s*a + t*b = 1, deg s < deg b, deg t < deg a (a, b coprime).
inline std::pair<Poly, Poly> bezout(const Field& F, const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        auto [q, r] = divmod(F, r0, r1);
        Poly s2 = sub(F, s0, mul(F, q, s1));
        Poly t2 = sub(F, t0, mul(F, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 is a nonzero constant
    u64 inv = F.inv(r0.at(0));
    for (auto& x : s0)
        x = F.mul(x, inv);
    for (auto& x : t0)
        x = F.mul(x, inv);
    auto [q, s] = divmod(F, s0, b);
    // s0 = q*b + s, so t = t0 + q*a
    Poly qa = mul(F, q, a);
    Poly t = t0;
    if (qa.size() > t.size())
        t.resize(qa.size(), 0);
    for (std::size_t i = 0; i < qa.size(); ++i)
        t[i] = F.add(t[i], qa[i]);
    trim(t);
    return {s, t};
}

inline Poly powmod(const Field& F, Poly base, const Integer& e, const Poly& m) {
    Poly result{1};
    base = mod(F, base, m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = mod(F, mul(F, result, result), m);
        if (mpz_tstbit(e.get_mpz_t(), i))
            result = mod(F, mul(F, result, base), m);
    }
    return result;
}

inline Poly derivative(const Field& F, const Poly& a) {
    if (a.size() <= 1)
        return {};
    Poly d(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i)
        d[i - 1] = F.mul(a[i], i % F.p);
    trim(d);
    return d;
}

/// Distinct-degree factorization of a monic square-free polynomial.
inline std::vector<std::pair<Poly, long>> distinct_degree(const Field& F, Poly f) {
    std::vector<std::pair<Poly, long>> out;
    Poly h{0, 1};
    const Poly x{0, 1};
    for (long i = 1; 2 * i <= deg(f); ++i) {
        h = powmod(F, h, Integer(static_cast<unsigned long>(F.p)), f);
        Poly g = gcd(F, sub(F, h, x), f);
        if (deg(g) > 0) {
            out.emplace_back(g, i);
            f = divmod(F, f, g).first;
            h = mod(F, h, f);
        }
    }
    if (deg(f) > 0)
        out.emplace_back(f, deg(f));
    return out;
}

/// Splits a product of distinct monic irreducibles of degree d (odd p).
inline void equal_degree(const Field& F, const Poly& g, long d, std::mt19937_64& rng,
                         std::vector<Poly>& out) {
    if (deg(g) == d) {
        out.push_back(g);
        return;
    }
    Integer e;
    mpz_ui_pow_ui(e.get_mpz_t(), F.p, static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    std::uniform_int_distribution<u64> coin(0, F.p - 1);
    for (;;) {
        Poly a(static_cast<std::size_t>(deg(g)));
        for (auto& c : a)
            c = coin(rng);
        trim(a);
        if (deg(a) < 1)
            continue;
        Poly b = powmod(F, a, e, g);
        b = sub(F, b, Poly{1});
        Poly dvs = gcd(F, b, g);
        if (deg(dvs) > 0 && deg(dvs) < deg(g)) {
            equal_degree(F, dvs, d, rng, out);
            equal_degree(F, divmod(F, g, dvs).first, d, rng, out);
            return;
        }
    }
}

} // namespace detail::zp

namespace detail {

using ZPoly = std::vector<Integer>; // ascending, trimmed

inline void ztrim(ZPoly& a) {
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline Integer mod_nonneg(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline ZPoly zreduce(ZPoly a, const Integer& m) {
    for (auto& x : a)
        x = mod_nonneg(x, m);
    ztrim(a);
    return a;
}

inline ZPoly zmul(const ZPoly& a, const ZPoly& b, const Integer& m) {
    if (a.empty() || b.empty())
        return {};
    ZPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return zreduce(std::move(r), m);
}

inline ZPoly zadd(ZPoly a, const ZPoly& b, const Integer& m) {
    if (b.size() > a.size())
        a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] += b[i];
    return zreduce(std::move(a), m);
}

inline ZPoly zsub(ZPoly a, const ZPoly& b, const Integer& m) {
    if (b.size() > a.size())
        a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    return zreduce(std::move(a), m);
}

/// Division by a monic b modulo m.
inline std::pair<ZPoly, ZPoly> zdivmod_monic(ZPoly a, const ZPoly& b, const Integer& m) {
    a = zreduce(std::move(a), m);
    const long db = static_cast<long>(b.size()) - 1;
    const long da = static_cast<long>(a.size()) - 1;
    if (da < db)
        return {{}, a};
    ZPoly q(static_cast<std::size_t>(da - db + 1));
    for (long k = da - db; k >= 0; --k) {
        Integer t = mod_nonneg(a[static_cast<std::size_t>(k + db)], m);
        q[static_cast<std::size_t>(k)] = t;
        if (t == 0)
            continue;
        for (long i = 0; i <= db; ++i)
            a[static_cast<std::size_t>(k + i)] -= t * b[static_cast<std::size_t>(i)];
    }
    a.resize(static_cast<std::size_t>(db));
    return {zreduce(std::move(q), m), zreduce(std::move(a), m)};
}

inline ZPoly lift_from(const zp::Poly& a) {
    ZPoly r;
    r.reserve(a.size());
    for (auto x : a)
        r.emplace_back(static_cast<unsigned long>(x));
    return r;
}

inline zp::Poly drop_to(const zp::Field& F, const ZPoly& a) {
    zp::Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = F.reduce(a[i]);
    zp::trim(r);
    return r;
}

/// Lifts f = g*h (mod p) to modulus >= target; h monic, s*g + t*h = 1 (mod p).
inline std::pair<ZPoly, ZPoly> hensel_two(const ZPoly& f, ZPoly g, ZPoly h, ZPoly s, ZPoly t,
                                          unsigned long p, const Integer& target) {
    Integer m = p;
    while (m < target) {
        Integer m2 = m * m;
        ZPoly e = zsub(f, zmul(g, h, m2), m2);
        auto [q, r] = zdivmod_monic(zmul(s, e, m2), h, m2);
        ZPoly g2 = zadd(zadd(g, zmul(t, e, m2), m2), zmul(q, g, m2), m2);
        ZPoly h2 = zadd(h, r, m2);
        ZPoly b = zsub(zadd(zmul(s, g2, m2), zmul(t, h2, m2), m2), ZPoly{1}, m2);
        auto [c, d] = zdivmod_monic(zmul(s, b, m2), h2, m2);
        s = zsub(s, d, m2);
        t = zsub(zsub(t, zmul(t, b, m2), m2), zmul(c, g2, m2), m2);
        g = std::move(g2);
        h = std::move(h2);
        m = std::move(m2);
    }
    return {zreduce(std::move(g), target), zreduce(std::move(h), target)};
}

/// Monic factors mod `target` whose product times lc(f) is f (mod target).
inline std::vector<ZPoly> hensel_multi(const ZPoly& f, const std::vector<zp::Poly>& factors,
                                       const zp::Field& F, const Integer& target) {
    if (factors.size() == 1) {
        Integer inv;
        Integer lc = mod_nonneg(f.back(), target);
        mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), target.get_mpz_t());
        ZPoly r = f;
        for (auto& x : r)
            x *= inv;
        return {zreduce(std::move(r), target)};
    }
    const std::size_t half = factors.size() / 2;
    std::vector<zp::Poly> left(factors.begin(), factors.begin() + static_cast<long>(half));
    std::vector<zp::Poly> right(factors.begin() + static_cast<long>(half), factors.end());
    zp::Poly g0{F.reduce(f.back())};
    for (const auto& a : left)
        g0 = zp::mul(F, g0, a);
    zp::Poly h0{1};
    for (const auto& a : right)
        h0 = zp::mul(F, h0, a);
    auto [s0, t0] = zp::bezout(F, g0, h0);
    auto [g, h] = hensel_two(f, lift_from(g0), lift_from(h0), lift_from(s0), lift_from(t0), F.p, target);
    auto lhs = hensel_multi(g, left, F, target);
    auto rhs = hensel_multi(h, right, F, target);
    lhs.insert(lhs.end(), rhs.begin(), rhs.end());
    return lhs;
}

inline Integer zcontent(const ZPoly& a) {
    Integer g = 0;
    for (const auto& x : a)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

inline ZPoly primitive_part(ZPoly a) {
    Integer c = zcontent(a);
    if (c == 0)
        return a;
    if (a.back() < 0)
        c = -c;
    for (auto& x : a)
        x /= c;
    return a;
}

inline DensePoly to_rational(const ZPoly& a) { return DensePoly(std::vector<Rational>(a.begin(), a.end())); }

/// Integer primitive associate of a nonzero rational polynomial.
inline ZPoly to_primitive_integer(const DensePoly& a) {
    Integer l = 1;
    for (const auto& c : a.coeffs())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    ZPoly r;
    for (const auto& c : a.coeffs())
        r.push_back(Integer(c * l));
    return primitive_part(std::move(r));
}

inline std::vector<unsigned long> small_primes_from(unsigned long start, std::size_t count) {
    std::vector<unsigned long> out;
    for (unsigned long n = start | 1; out.size() < count; n += 2)
        if (mpz_probab_prime_p(Integer(n).get_mpz_t(), 30))
            out.push_back(n);
    return out;
}

/// Irreducible factors of a primitive square-free integer polynomial of degree >= 2.
inline std::vector<ZPoly> zassenhaus(ZPoly f) {
    const std::size_t n = f.size() - 1;
    std::vector<zp::Poly> best;
    zp::Field bestF{0};
    std::mt19937_64 rng(0x5eedULL + n);
    int good = 0;
    for (unsigned long p : small_primes_from(1009, 400)) {
        zp::Field F{p};
        if (F.reduce(f.back()) == 0)
            continue;
        zp::Poly fp = zp::monic(F, drop_to(F, f));
        if (zp::deg(zp::gcd(F, fp, zp::derivative(F, fp))) > 0)
            continue;
        std::vector<zp::Poly> facs;
        for (auto& [g, d] : zp::distinct_degree(F, fp))
            zp::equal_degree(F, g, d, rng, facs);
        if (best.empty() || facs.size() < best.size()) {
            best = std::move(facs);
            bestF = F;
        }
        if (best.size() == 1 || ++good == 5)
            break;
    }
    if (best.empty())
        fail(ErrorCode::Inconsistency, "no admissible prime for factorization");
    if (best.size() == 1)
        return {f};
    std::sort(best.begin(), best.end());

    // coefficient bound for lc * (any factor): |lc| * 2^n * ||f||_2
    Integer norm2 = 0;
    for (const auto& c : f)
        norm2 += c * c;
    Integer root;
    mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
    root += 1;
    Integer bound = abs(f.back()) * root;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n);
    Integer target = bestF.p;
    while (target <= 2 * bound)
        target *= bestF.p;

    std::vector<ZPoly> lifted = hensel_multi(f, best, bestF, target);
    const Integer half_target = target / 2;
    auto symmetric = [&](ZPoly a) {
        for (auto& x : a) {
            x = mod_nonneg(x, target);
            if (x > half_target)
                x -= target;
        }
        ztrim(a);
        return a;
    };

    std::vector<ZPoly> found;
    std::size_t s = 1;
    while (2 * s <= lifted.size()) {
        bool hit = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i)
            idx[i] = i;
        for (;;) {
            ZPoly g{f.back()};
            for (auto i : idx)
                g = zmul(g, lifted[i], target);
            g = primitive_part(symmetric(std::move(g)));
            bool divides = f.front() == 0 || (g.front() != 0 && mpz_divisible_p(f.front().get_mpz_t(), g.front().get_mpz_t()));
            if (divides) {
                auto [q, r] = divmod(to_rational(f), to_rational(g));
                if (r.is_zero()) {
                    found.push_back(g);
                    f = to_primitive_integer(q);
                    for (std::size_t k = s; k-- > 0;)
                        lifted.erase(lifted.begin() + static_cast<long>(idx[k]));
                    hit = true;
                    break;
                }
            }
            // next combination
            std::size_t k = s;
            while (k > 0 && idx[k - 1] == lifted.size() - s + k - 1)
                --k;
            if (k == 0)
                break;
            ++idx[k - 1];
            for (std::size_t j = k; j < s; ++j)
                idx[j] = idx[j - 1] + 1;
        }
        if (!hit)
            ++s;
    }
    if (f.size() > 1)
        found.push_back(f);
    return found;
}

} // namespace detail

/// Factors a nonzero polynomial over Q as lead * prod P_i^{e_i} with monic
/// irreducible P_i. Output is sorted by (degree, coefficients).
inline std::vector<std::pair<DensePoly, unsigned>> factor(const DensePoly& a) {
    std::vector<std::pair<DensePoly, unsigned>> out;
    for (const auto& [part, mult] : squarefree_decomposition(a)) {
        if (part.degree() == 1) {
            out.emplace_back(part, mult);
            continue;
        }
        for (const auto& z : detail::zassenhaus(detail::to_primitive_integer(part)))
            out.emplace_back(detail::to_rational(z).monic(), mult);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree())
            return x.first.degree() < y.first.degree();
        return x.first.coeffs() < y.first.coeffs();
    });
    return out;
}

inline bool is_irreducible(const DensePoly& a) {
    if (a.degree() < 1)
        return false;
    if (a.degree() == 1)
        return true;
    auto fs = factor(a);
    return fs.size() == 1 && fs[0].second == 1;
}

} // namespace lacunary
