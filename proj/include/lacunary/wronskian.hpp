#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dense_poly.hpp"
#include "error.hpp"
#include "factor.hpp"
#include "rational.hpp"

namespace lacunary {

/// Element of Q(y): coprime numerator and monic denominator.
class RatFunc {
  public:
    RatFunc() : den_(DensePoly::constant(1)) {}

    RatFunc(DensePoly num, DensePoly den = DensePoly::constant(1)) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }

    static RatFunc constant(const Rational& a) { return RatFunc(DensePoly::constant(a)); }

    const DensePoly& num() const { return num_; }
    const DensePoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    /// Degree as a map to the projective line: max(deg num, deg den).
    long degree() const {
        if (num_.is_zero())
            return 0;
        return std::max(num_.degree(), den_.degree());
    }

    RatFunc derivative() const {
        return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    Rational evaluate(const Rational& t) const { return num_.evaluate(t) / den_.evaluate(t); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero())
            fail(ErrorCode::UndefinedInput, "division by the zero function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

  private:
    void normalize() {
        if (den_.is_zero())
            fail(ErrorCode::UndefinedInput, "zero denominator");
        if (num_.is_zero()) {
            den_ = DensePoly::constant(1);
            return;
        }
        DensePoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        Rational lc = den_.lead();
        if (lc != 1) {
            num_ *= 1 / lc;
            den_ *= 1 / lc;
        }
    }

    DensePoly num_;
    DensePoly den_;
};

/// Place of Q(y): a monic irreducible polynomial, or the place at infinity.
/// A finite place of degree e stands for its e conjugate complex places.
class Place {
  public:
    static Place infinity() { return Place(); }

    static Place finite(const DensePoly& p) {
        DensePoly m = p.monic();
        if (!is_irreducible(m))
            fail(ErrorCode::Precondition, "place polynomial " + m.str("y") + " is not irreducible over Q");
        return Place(std::move(m));
    }

    /// Skips the irreducibility check; for factors produced by factor().
    static Place trusted(DensePoly monic_irreducible) { return Place(std::move(monic_irreducible)); }

    bool is_infinite() const { return poly_.is_zero(); }
    const DensePoly& poly() const { return poly_; }
    long degree() const { return is_infinite() ? 1 : poly_.degree(); }

    std::string str() const { return is_infinite() ? "inf" : poly_.str("y"); }

    friend bool operator==(const Place& a, const Place& b) { return a.poly_ == b.poly_; }
    friend bool operator<(const Place& a, const Place& b) {
        if (a.is_infinite() != b.is_infinite())
            return b.is_infinite();
        if (a.poly_.degree() != b.poly_.degree())
            return a.poly_.degree() < b.poly_.degree();
        return a.poly_.coeffs() < b.poly_.coeffs();
    }

  private:
    Place() = default;
    explicit Place(DensePoly p) : poly_(std::move(p)) {}

    DensePoly poly_;
};

inline long valuation(const RatFunc& f, const Place& v) {
    if (f.is_zero())
        fail(ErrorCode::UndefinedValuation, "valuation of the zero function");
    if (v.is_infinite())
        return f.den().degree() - f.num().degree();
    return static_cast<long>(multiplicity(f.num(), v.poly())) - static_cast<long>(multiplicity(f.den(), v.poly()));
}

/// Finite places where f has a zero (zeros = true) or a pole.
inline std::vector<Place> finite_support(const RatFunc& f, bool zeros) {
    std::vector<Place> out;
    for (const auto& [p, mult] : factor(zeros ? f.num() : f.den()))
        out.push_back(Place::trusted(p));
    return out;
}

/// All places where f has nonzero valuation, with that valuation.
inline std::vector<std::pair<Place, long>> divisor(const RatFunc& f) {
    if (f.is_zero())
        fail(ErrorCode::UndefinedValuation, "divisor of the zero function");
    std::vector<std::pair<Place, long>> out;
    for (const auto& [p, mult] : factor(f.num()))
        out.emplace_back(Place::trusted(p), static_cast<long>(mult));
    for (const auto& [p, mult] : factor(f.den()))
        out.emplace_back(Place::trusted(p), -static_cast<long>(mult));
    if (long vinf = f.den().degree() - f.num().degree())
        out.emplace_back(Place::infinity(), vinf);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

inline long binom2(long n) { return n * (n - 1) / 2; }

/// Determinant of the matrix whose row j holds the j-th derivatives in y.
/// Uses W(D*phi_1, ..., D*phi_n) = D^n W(phi) for a common denominator D and
/// fraction-free elimination over Q[y].
inline RatFunc wronskian_det(const std::vector<RatFunc>& phis) {
    const std::size_t n = phis.size();
    if (n == 0)
        fail(ErrorCode::UndefinedInput, "Wronskian of an empty list");
    DensePoly common = DensePoly::constant(1);
    for (const auto& f : phis)
        common = exact_div(common * f.den(), gcd(common, f.den()));
    Rational scale = 1;
    std::vector<std::vector<DensePoly>> m(n, std::vector<DensePoly>(n));
    for (std::size_t i = 0; i < n; ++i) {
        DensePoly p = phis[i].num() * exact_div(common, phis[i].den());
        if (!p.is_zero()) {
            const std::vector<Integer> ip = detail::primitive_integer(p);
            const Rational c = Rational(ip.back()) / p.lead();
            scale *= c;
            p = DensePoly(std::vector<Rational>(ip.begin(), ip.end()));
        }
        m[0][i] = p;
        for (std::size_t j = 1; j < n; ++j)
            m[j][i] = m[j - 1][i].derivative();
    }
    // Bareiss
    bool negate = false;
    DensePoly prev = DensePoly::constant(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m[pivot][k].is_zero())
            ++pivot;
        if (pivot == n)
            return RatFunc();
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            m[i][k] = DensePoly();
        }
        prev = m[k][k];
    }
    DensePoly det = m[n - 1][n - 1];
    if (det.is_zero())
        return RatFunc();
    if (negate)
        det = -det;
    return RatFunc(det * (1 / scale), pow(common, static_cast<unsigned long>(n)));
}

struct PlaceOrder {
    Place place;
    /// v(W_v): order of the Wronskian taken with respect to the local parameter at v.
    long order;
};

struct WronskianOrderReport {
    long total = 0;    // degree-weighted sum of v(W_v)
    long expected = 0; // -2 * C(n, 2), genus 0
    std::vector<PlaceOrder> places;
};

/// Orders of W_v over every place where they are nonzero. Local parameters are
/// the irreducible itself at finite places and 1/y at infinity, so only the
/// infinite place picks up the correction -2*C(n,2) from dy/dt.
inline WronskianOrderReport wronskian_order_sum(const std::vector<RatFunc>& phis) {
    RatFunc w = wronskian_det(phis);
    if (w.is_zero())
        fail(ErrorCode::Dependence, "functions are linearly dependent over the constants");
    const long c = binom2(static_cast<long>(phis.size()));
    WronskianOrderReport rep;
    rep.expected = -2 * c;
    bool saw_infinity = false;
    for (auto& [place, v] : divisor(w)) {
        long order = v;
        if (place.is_infinite()) {
            order -= 2 * c;
            saw_infinity = true;
        }
        if (order != 0)
            rep.places.push_back({place, order});
    }
    if (!saw_infinity && c != 0)
        rep.places.push_back({Place::infinity(), -2 * c});
    for (const auto& po : rep.places)
        rep.total += po.place.degree() * po.order;
    return rep;
}

struct Prop1PlaceDetail {
    Place place;
    long v_sigma;
    long min_v;
    /// degree(place) * (v_sigma - min_v)
    long contribution;
};

struct Prop1Report {
    long lhs = 0;
    long rhs = 0;
    bool holds = false;
    std::size_t n = 0;
    std::size_t r = 0;
    long s_size = 0; // degree-weighted #S
    std::vector<Prop1PlaceDetail> details;
};

/// Poles of every phi_i together with the zeros of phi_1..phi_r.
inline std::vector<Place> minimal_place_set(const std::vector<RatFunc>& phis, std::size_t r) {
    std::vector<Place> s;
    for (std::size_t i = 0; i < phis.size(); ++i) {
        const RatFunc& f = phis[i];
        auto poles = finite_support(f, false);
        s.insert(s.end(), poles.begin(), poles.end());
        if (f.num().degree() > f.den().degree())
            s.push_back(Place::infinity());
        if (i < r) {
            auto zeros = finite_support(f, true);
            s.insert(s.end(), zeros.begin(), zeros.end());
            if (f.num().degree() < f.den().degree())
                s.push_back(Place::infinity());
        }
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

/// Evaluates both sides of the S-unit inequality over Q(y) (genus 0) with
/// sigma = sum phi_i. Places are counted with their degrees.
inline Prop1Report verify_prop1(const std::vector<RatFunc>& phis, std::size_t r,
                                const std::optional<std::vector<Place>>& given = std::nullopt) {
    const std::size_t n = phis.size();
    if (n == 0)
        fail(ErrorCode::UndefinedInput, "empty function list");
    if (r > n)
        fail(ErrorCode::Precondition, "r exceeds the number of functions");
    if (wronskian_det(phis).is_zero())
        fail(ErrorCode::Dependence, "functions are linearly dependent over the constants");

    std::vector<Place> s = minimal_place_set(phis, r);
    if (given) {
        std::vector<Place> g = *given;
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        for (const auto& v : s)
            if (!std::binary_search(g.begin(), g.end(), v))
                fail(ErrorCode::Precondition, "place set is missing required place " + v.str());
        s = std::move(g);
    }

    RatFunc sigma;
    for (const auto& f : phis)
        sigma = sigma + f;

    Prop1Report rep;
    rep.n = n;
    rep.r = r;
    for (const auto& v : s) {
        long vs = valuation(sigma, v);
        long mn = valuation(phis[0], v);
        for (std::size_t i = 1; i < n; ++i)
            mn = std::min(mn, valuation(phis[i], v));
        long contrib = v.degree() * (vs - mn);
        rep.details.push_back({v, vs, mn, contrib});
        rep.lhs += contrib;
        rep.s_size += v.degree();
    }
    rep.rhs = binom2(static_cast<long>(n)) * (rep.s_size - 2);
    for (std::size_t i = r; i < n; ++i)
        rep.rhs += phis[i].degree();
    rep.holds = rep.lhs <= rep.rhs;
    return rep;
}

} // namespace lacunary
