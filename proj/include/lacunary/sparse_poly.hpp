#pragma once

#include <cstddef>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dense_poly.hpp"
#include "error.hpp"
#include "limits.hpp"
#include "rational.hpp"

namespace lacunary {

/// Lacunary polynomial: a finite map exponent -> nonzero rational coefficient.
/// Exponents are arbitrary precision, so x^(10^100) costs one map entry.
class SparsePoly {
  public:
    using TermMap = std::map<Exponent, Rational>;

    SparsePoly() = default;

    /// Builds from (exponent, coefficient) pairs, merging duplicates.
    SparsePoly(std::initializer_list<std::pair<Exponent, Rational>> terms) {
        for (const auto& [e, a] : terms)
            add_term(e, a);
    }

    static SparsePoly monomial(const Rational& a, const Exponent& e) {
        SparsePoly p;
        p.add_term(e, a);
        return p;
    }

    static SparsePoly constant(const Rational& a) { return monomial(a, 0); }

    static SparsePoly from_dense(const DensePoly& g) {
        SparsePoly p;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g.coeffs()[i] != 0)
                p.terms_.emplace(Exponent(static_cast<unsigned long>(i)), g.coeffs()[i]);
        return p;
    }

    /// Adds a*x^e in place; a zero result removes the entry.
    void add_term(const Exponent& e, const Rational& a) {
        if (a == 0)
            return;
        if (e < 0)
            fail(ErrorCode::UndefinedInput, "negative exponent in polynomial");
        auto [it, inserted] = terms_.try_emplace(e, a);
        if (!inserted) {
            it->second += a;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    const Exponent& degree() const {
        if (terms_.empty())
            fail(ErrorCode::UndefinedInput, "degree of the zero polynomial");
        return terms_.rbegin()->first;
    }

    const Exponent& low_degree() const {
        if (terms_.empty())
            fail(ErrorCode::UndefinedInput, "order of the zero polynomial");
        return terms_.begin()->first;
    }

    const Rational& lead() const {
        if (terms_.empty())
            fail(ErrorCode::UndefinedInput, "leading coefficient of the zero polynomial");
        return terms_.rbegin()->second;
    }

    Rational coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool is_monic() const { return !terms_.empty() && lead() == 1; }

    SparsePoly scaled(const Rational& s) const {
        if (s == 0)
            return {};
        SparsePoly r(*this);
        for (auto& [e, a] : r.terms_)
            a *= s;
        return r;
    }

    SparsePoly monic() const { return terms_.empty() ? SparsePoly() : scaled(1 / lead()); }

    /// Drops the x^0 term.
    SparsePoly without_constant() const {
        SparsePoly r(*this);
        r.terms_.erase(Exponent(0));
        return r;
    }

    Rational evaluate(const Rational& t) const {
        Rational acc = 0;
        for (const auto& [e, a] : terms_) {
            Rational pw;
            mpz_pow_ui(pw.get_num_mpz_t(), t.get_num_mpz_t(), to_ulong_checked(e, "exponent"));
            mpz_pow_ui(pw.get_den_mpz_t(), t.get_den_mpz_t(), e.get_ui());
            pw.canonicalize();
            acc += a * pw;
        }
        return acc;
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        for (const auto& [e, a] : o.terms_)
            add_term(e, a);
        return *this;
    }

    SparsePoly& operator-=(const SparsePoly& o) {
        for (const auto& [e, a] : o.terms_)
            add_term(e, -a);
        return *this;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    friend SparsePoly operator-(const SparsePoly& a) { return a.scaled(-1); }
    friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

    std::string str(const char* var = "x") const {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, a] = *it;
            Rational mag = abs(a);
            os << (a < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            if (mag != 1 || e == 0)
                os << mag.get_str() << (e != 0 ? "*" : "");
            if (e == 1)
                os << var;
            else if (e > 1)
                os << var << "^" << e.get_str();
            first = false;
        }
        return os.str();
    }

  private:
    TermMap terms_;
};

/// Exact product. The result may not hold more than limits.term_cap terms.
inline SparsePoly mul(const SparsePoly& p, const SparsePoly& q, const Limits& limits = {}) {
    SparsePoly r;
    Exponent e;
    for (const auto& [ep, ap] : p.terms()) {
        for (const auto& [eq, aq] : q.terms()) {
            e = ep + eq;
            r.add_term(e, ap * aq);
        }
        if (r.term_count() > limits.term_cap)
            fail(ErrorCode::ExpansionOverflow,
                 "product exceeds term cap of " + std::to_string(limits.term_cap));
    }
    return r;
}

inline SparsePoly operator*(const SparsePoly& p, const SparsePoly& q) { return mul(p, q); }

inline SparsePoly pow(const SparsePoly& base, unsigned long e, const Limits& limits = {}) {
    SparsePoly result = SparsePoly::constant(1);
    SparsePoly b = base;
    while (e) {
        if (e & 1)
            result = mul(result, b, limits);
        e >>= 1;
        if (e)
            b = mul(b, b, limits);
    }
    return result;
}

/// g(h(x)) by Horner evaluation in the sparse ring.
inline SparsePoly compose_outer(const DensePoly& g, const SparsePoly& h, const Limits& limits = {}) {
    if (g.degree() < 1)
        fail(ErrorCode::UndefinedInput, "outer polynomial must be non-constant");
    SparsePoly acc;
    for (std::size_t k = g.size(); k-- > 0;) {
        acc = mul(acc, h, limits);
        acc.add_term(0, g.coeffs()[k]);
    }
    return acc;
}

/// gcd of all exponents present, the x^0 term included.
inline Exponent exponent_gcd(const SparsePoly& f) {
    if (f.is_zero())
        fail(ErrorCode::UndefinedInput, "exponent gcd of the zero polynomial");
    Exponent g = 0;
    for (const auto& [e, a] : f.terms())
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    return g;
}

inline DensePoly to_dense(const SparsePoly& f, const Limits& limits = {}) {
    if (f.is_zero())
        return {};
    if (f.degree() > limits.dense_cap)
        fail(ErrorCode::CapExceeded, "degree " + f.degree().get_str() + " exceeds dense cap " +
                                         std::to_string(limits.dense_cap));
    std::vector<Rational> c(f.degree().get_ui() + 1);
    for (const auto& [e, a] : f.terms())
        c[e.get_ui()] = a;
    return DensePoly(std::move(c));
}

/// Substitutes x -> x^n, i.e. every exponent is multiplied by n.
inline SparsePoly inflate(const SparsePoly& f, const Exponent& n) {
    SparsePoly r;
    for (const auto& [e, a] : f.terms())
        r.add_term(e * n, a);
    return r;
}

} // namespace lacunary
