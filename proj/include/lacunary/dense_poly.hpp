#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace lacunary {

/// Univariate polynomial over Q stored densely, coefficient i at index i.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
class DensePoly {
  public:
    DensePoly() = default;

    explicit DensePoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    DensePoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    static DensePoly constant(const Rational& a) { return DensePoly({a}); }

    static DensePoly monomial(const Rational& a, std::size_t deg) {
        std::vector<Rational> c(deg + 1);
        c[deg] = a;
        return DensePoly(std::move(c));
    }

    /// x
    static DensePoly identity() { return monomial(1, 1); }

    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    std::size_t size() const { return c_.size(); }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    const Rational& lead() const {
        if (c_.empty())
            fail(ErrorCode::UndefinedInput, "leading coefficient of zero polynomial");
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    DensePoly monic() const {
        if (c_.empty())
            return {};
        DensePoly r(*this);
        Rational inv = 1 / c_.back();
        for (auto& a : r.c_)
            a *= inv;
        return r;
    }

    Rational evaluate(const Rational& t) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * t + *it;
        return acc;
    }

    DensePoly derivative() const {
        if (c_.size() <= 1)
            return {};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * static_cast<unsigned long>(i);
        return DensePoly(std::move(d));
    }

    DensePoly& operator+=(const DensePoly& o) {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }

    DensePoly& operator-=(const DensePoly& o) {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] -= o.c_[i];
        trim();
        return *this;
    }

    DensePoly& operator*=(const Rational& a) {
        if (a == 0) {
            c_.clear();
            return *this;
        }
        for (auto& x : c_)
            x *= a;
        return *this;
    }

    friend DensePoly operator+(DensePoly a, const DensePoly& b) { return a += b; }
    friend DensePoly operator-(DensePoly a, const DensePoly& b) { return a -= b; }
    friend DensePoly operator*(DensePoly a, const Rational& s) { return a *= s; }
    friend DensePoly operator*(const Rational& s, DensePoly a) { return a *= s; }
    friend DensePoly operator-(DensePoly a) { return a *= Rational(-1); }

    friend DensePoly operator*(const DensePoly& a, const DensePoly& b) {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        }
        return DensePoly(std::move(r));
    }

    friend bool operator==(const DensePoly& a, const DensePoly& b) { return a.c_ == b.c_; }

    std::string str(const char* var = "x") const {
        if (c_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = c_.size(); k-- > 0;) {
            const Rational& a = c_[k];
            if (a == 0)
                continue;
            Rational mag = abs(a);
            os << (a < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            if (mag != 1 || k == 0)
                os << mag.get_str() << (k ? "*" : "");
            if (k == 1)
                os << var;
            else if (k > 1)
                os << var << "^" << k;
            first = false;
        }
        return os.str();
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<Rational> c_;
};

/// Euclidean division over Q; the divisor must be nonzero.
inline std::pair<DensePoly, DensePoly> divmod(const DensePoly& a, const DensePoly& b) {
    if (b.is_zero())
        fail(ErrorCode::UndefinedInput, "division by zero polynomial");
    if (a.degree() < b.degree())
        return {DensePoly(), a};
    std::vector<Rational> r = a.coeffs();
    const long db = b.degree();
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
    Rational inv = 1 / b.lead();
    for (long k = a.degree() - db; k >= 0; --k) {
        Rational t = r[static_cast<std::size_t>(k + db)] * inv;
        q[static_cast<std::size_t>(k)] = t;
        if (t == 0)
            continue;
        for (long i = 0; i <= db; ++i)
            r[static_cast<std::size_t>(k + i)] -= t * b.coeffs()[static_cast<std::size_t>(i)];
    }
    r.resize(static_cast<std::size_t>(db));
    return {DensePoly(std::move(q)), DensePoly(std::move(r))};
}

inline DensePoly operator%(const DensePoly& a, const DensePoly& b) { return divmod(a, b).second; }

/// Quotient a / b, failing when b does not divide a.
inline DensePoly exact_div(const DensePoly& a, const DensePoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero())
        fail(ErrorCode::Inconsistency, "inexact polynomial division");
    return q;
}

namespace detail {

/// Integer coefficient vector of a nonzero multiple of a with content 1 and positive lead.
inline std::vector<Integer> primitive_integer(const DensePoly& a) {
    Integer l = 1;
    for (const auto& c : a.coeffs())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Integer> v;
    Integer g = 0;
    for (const auto& c : a.coeffs()) {
        v.push_back(c.get_num() * (l / c.get_den()));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.back().get_mpz_t());
    }
    if (g != 0)
        for (auto& x : v)
            x /= g;
    if (!v.empty() && v.back() < 0)
        for (auto& x : v)
            x = -x;
    return v;
}

inline void make_primitive(std::vector<Integer>& v) {
    while (!v.empty() && v.back() == 0)
        v.pop_back();
    Integer g = 0;
    for (const auto& x : v)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : v)
            x /= g;
}

/// Pseudo-remainder of a by b (b nonzero), made primitive.
inline std::vector<Integer> primitive_prem(std::vector<Integer> a, const std::vector<Integer>& b) {
    const std::size_t db = b.size() - 1;
    while (a.size() > db && !a.empty()) {
        const Integer la = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (auto& x : a)
            x *= b.back();
        for (std::size_t i = 0; i <= db; ++i)
            a[shift + i] -= la * b[i];
        make_primitive(a);
    }
    make_primitive(a);
    return a;
}

} // namespace detail

/// Monic gcd; gcd(0, 0) = 0. Primitive remainder sequence over Z keeps coefficients small.
inline DensePoly gcd(const DensePoly& a, const DensePoly& b) {
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    std::vector<Integer> x = detail::primitive_integer(a), y = detail::primitive_integer(b);
    if (x.size() < y.size())
        std::swap(x, y);
    while (!y.empty()) {
        std::vector<Integer> r = detail::primitive_prem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return DensePoly(std::vector<Rational>(x.begin(), x.end())).monic();
}

inline DensePoly pow(const DensePoly& base, unsigned long e) {
    DensePoly result = DensePoly::constant(1);
    DensePoly b = base;
    while (e) {
        if (e & 1)
            result = result * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return result;
}

/// outer(inner(x)) by Horner's rule.
inline DensePoly compose(const DensePoly& outer, const DensePoly& inner) {
    DensePoly acc;
    for (std::size_t k = outer.size(); k-- > 0;)
        acc = acc * inner + DensePoly::constant(outer.coeffs()[k]);
    return acc;
}

/// Square-free decomposition (Yun): returns (P_i, i) with a = lead * prod P_i^i,
/// every P_i monic, square-free and pairwise coprime.
inline std::vector<std::pair<DensePoly, unsigned>> squarefree_decomposition(const DensePoly& a) {
    std::vector<std::pair<DensePoly, unsigned>> out;
    if (a.degree() < 1)
        return out;
    DensePoly f = a.monic();
    DensePoly fp = f.derivative();
    DensePoly g = gcd(f, fp);
    DensePoly b = exact_div(f, g);
    DensePoly c = exact_div(fp, g.is_zero() ? DensePoly::constant(1) : g);
    DensePoly d = c - b.derivative();
    unsigned i = 1;
    while (b.degree() > 0) {
        DensePoly h = gcd(b, d);
        if (h.degree() > 0)
            out.emplace_back(h, i);
        b = exact_div(b, h);
        c = exact_div(d, h);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

/// Multiplicity of the nonconstant polynomial p in the nonzero a.
inline unsigned multiplicity(DensePoly a, const DensePoly& p) {
    if (a.is_zero())
        fail(ErrorCode::UndefinedValuation, "multiplicity in the zero polynomial");
    unsigned k = 0;
    for (;;) {
        auto [q, r] = divmod(a, p);
        if (!r.is_zero())
            return k;
        a = std::move(q);
        ++k;
    }
}

} // namespace lacunary
