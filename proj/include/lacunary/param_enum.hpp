#pragma once

// Finite parametric description of decompositions of l-term polynomials:
// the identity h2^ell f - sum_j b_j h1^j h2^(ell-j) = 0 is expanded with
// symbolic coefficients and exponents, its terms are grouped by equal degree,
// every grouping yields an exponent lattice and a coefficient system.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "decompose.hpp"
#include "error.hpp"
#include "lattice.hpp"
#include "rational.hpp"
#include "sparse_poly.hpp"

namespace lacunary {

enum class SymbolKind { A, B, C1, C2 };

/// a_i (f), b_j (g), c_1k (numerator h1), c_2k (denominator h2).
struct Symbol {
    SymbolKind kind;
    unsigned index; // a, c: 1-based; b: 0-based

    std::string name() const {
        switch (kind) {
        case SymbolKind::A: return "a" + std::to_string(index);
        case SymbolKind::B: return "b" + std::to_string(index);
        case SymbolKind::C1: return "c1" + std::to_string(index);
        case SymbolKind::C2: return "c2" + std::to_string(index);
        }
        return "?";
    }

    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

using Monomial = std::map<Symbol, unsigned>;

inline std::string monomial_string(const Monomial& mono) {
    if (mono.empty())
        return "1";
    std::string s;
    for (const auto& [sym, e] : mono) {
        if (!s.empty())
            s += "*";
        s += sym.name();
        if (e > 1)
            s += "^" + std::to_string(e);
    }
    return s;
}

/// Sizes of the master identity: f has l terms, deg g <= ell, h1 and h2 have B terms.
struct MasterShape {
    unsigned l = 1;
    unsigned ell = 2;
    unsigned B = 1;

    std::size_t var_count() const { return l + 2 * B; }

    /// m_1..m_l, n_11..n_1B, n_21..n_2B
    std::string var_name(std::size_t v) const {
        if (v < l)
            return "m" + std::to_string(v + 1);
        v -= l;
        if (v < B)
            return "n1" + std::to_string(v + 1);
        return "n2" + std::to_string(v - B + 1);
    }
    std::size_t m_var(unsigned i) const { return i; }
    std::size_t n_var(unsigned r, unsigned k) const { return l + (r - 1) * B + k; }
};

/// Integer linear form in the exponent variables.
struct LinearForm {
    std::vector<long> coeffs;

    std::string str(const MasterShape& shape) const {
        std::string s;
        for (std::size_t v = 0; v < coeffs.size(); ++v) {
            if (coeffs[v] == 0)
                continue;
            if (!s.empty())
                s += "+";
            if (coeffs[v] != 1)
                s += std::to_string(coeffs[v]) + "*";
            s += shape.var_name(v);
        }
        return s.empty() ? "0" : s;
    }

    Integer at(const std::vector<Integer>& w) const {
        Integer acc = 0;
        for (std::size_t v = 0; v < coeffs.size(); ++v)
            acc += coeffs[v] * w[v];
        return acc;
    }

    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// scalar * monomial * x^degree
struct SymbolicTerm {
    Rational scalar;
    Monomial monomial;
    LinearForm degree;

    bool involves(SymbolKind kind) const {
        return std::any_of(monomial.begin(), monomial.end(), [&](const auto& p) { return p.first.kind == kind; });
    }
};

struct EnumCaps {
    unsigned max_l = 3;
    unsigned max_ell = 4;
    unsigned max_B = 2;
    /// Upper bound on the number of set partitions examined.
    std::size_t max_partitions = 2'000'000;
};

namespace detail {

/// All vectors of `parts` non-negative integers summing to `total`, lexicographically descending.
inline std::vector<std::vector<unsigned>> compositions(unsigned total, unsigned parts) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(parts, 0);
    auto rec = [&](auto&& self, unsigned i, unsigned left) -> void {
        if (i + 1 == parts) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (unsigned v = left + 1; v-- > 0;) {
            cur[i] = v;
            self(self, i + 1, left - v);
        }
    };
    if (parts > 0)
        rec(rec, 0, total);
    return out;
}

inline Integer multinomial(unsigned total, const std::vector<unsigned>& parts) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), total);
    for (auto p : parts) {
        Integer f;
        mpz_fac_ui(f.get_mpz_t(), p);
        r /= f;
    }
    return r;
}

} // namespace detail

/// Every term of h2^ell * f - sum_j b_j h1^j h2^(ell-j), like terms collected,
/// in a fixed order: the f-part first (by i, then h2 exponent pattern), then j = 0..ell.
inline std::vector<SymbolicTerm> expand_master_identity(const MasterShape& shape, const EnumCaps& caps = {}) {
    if (shape.l < 1 || shape.ell < 2 || shape.B < 1)
        fail(ErrorCode::Precondition, "need l >= 1, ell >= 2, B >= 1");
    if (shape.l > caps.max_l || shape.ell > caps.max_ell || shape.B > caps.max_B)
        fail(ErrorCode::SizeGuard, "shape exceeds the configured caps (l <= " + std::to_string(caps.max_l) +
                                       ", ell <= " + std::to_string(caps.max_ell) +
                                       ", B <= " + std::to_string(caps.max_B) + ")");
    const std::size_t nv = shape.var_count();
    std::vector<SymbolicTerm> out;
    for (unsigned i = 1; i <= shape.l; ++i) {
        for (const auto& e : detail::compositions(shape.ell, shape.B)) {
            SymbolicTerm t{Rational(detail::multinomial(shape.ell, e)), {}, {std::vector<long>(nv, 0)}};
            for (unsigned k = 0; k < shape.B; ++k) {
                if (e[k]) {
                    t.monomial[{SymbolKind::C2, k + 1}] = e[k];
                    t.degree.coeffs[shape.n_var(2, k)] = e[k];
                }
            }
            t.monomial[{SymbolKind::A, i}] = 1;
            t.degree.coeffs[shape.m_var(i - 1)] += 1;
            out.push_back(std::move(t));
        }
    }
    for (unsigned j = 0; j <= shape.ell; ++j) {
        for (const auto& e1 : detail::compositions(j, shape.B)) {
            for (const auto& e2 : detail::compositions(shape.ell - j, shape.B)) {
                SymbolicTerm t{-Rational(detail::multinomial(j, e1) * detail::multinomial(shape.ell - j, e2)),
                               {},
                               {std::vector<long>(nv, 0)}};
                t.monomial[{SymbolKind::B, j}] = 1;
                for (unsigned k = 0; k < shape.B; ++k) {
                    if (e1[k]) {
                        t.monomial[{SymbolKind::C1, k + 1}] = e1[k];
                        t.degree.coeffs[shape.n_var(1, k)] = e1[k];
                    }
                    if (e2[k]) {
                        t.monomial[{SymbolKind::C2, k + 1}] = e2[k];
                        t.degree.coeffs[shape.n_var(2, k)] = e2[k];
                    }
                }
                out.push_back(std::move(t));
            }
        }
    }
    return out;
}

inline std::string term_string(const SymbolicTerm& t, const MasterShape& shape) {
    std::ostringstream os;
    if (t.scalar == -1)
        os << "-";
    else if (t.scalar != 1)
        os << t.scalar.get_str() << "*";
    os << monomial_string(t.monomial) << "*x^(" << t.degree.str(shape) << ")";
    return os.str();
}

/// Set partition of term indices: groups sorted by their smallest index.
struct PartitionScheme {
    std::vector<std::vector<std::size_t>> groups;

    friend bool operator==(const PartitionScheme&, const PartitionScheme&) = default;
};

/// Integer solutions of the in-group degree equalities: exponent vector = basis^T u.
struct ExponentLattice {
    std::size_t rank = 0;  // p
    IntMatrix alpha;       // l x p, rows m_i
    IntMatrix beta;        // (2B) x p, rows n_1k then n_2k
    IntMatrix basis;       // p x (l + 2B), Hermite normal form

    /// Exponent vector (m, n_1, n_2) for parameter u.
    std::vector<Integer> exponents(const std::vector<Integer>& u) const {
        if (u.size() != rank)
            fail(ErrorCode::Precondition, "parameter vector has wrong length");
        const std::size_t nv = basis.empty() ? 0 : basis[0].size();
        std::vector<Integer> w(nv, 0);
        for (std::size_t j = 0; j < rank; ++j)
            for (std::size_t v = 0; v < nv; ++v)
                w[v] += u[j] * basis[j][v];
        return w;
    }
};

namespace detail {

inline IntMatrix equality_rows(const PartitionScheme& part, const std::vector<SymbolicTerm>& terms, std::size_t nv) {
    IntMatrix rows;
    for (const auto& g : part.groups) {
        for (std::size_t i = 1; i < g.size(); ++i) {
            std::vector<Integer> row(nv);
            for (std::size_t v = 0; v < nv; ++v)
                row[v] = terms[g[i]].degree.coeffs[v] - terms[g[0]].degree.coeffs[v];
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

/// True when the two forms agree on every lattice vector.
inline bool forced_equal(const LinearForm& a, const LinearForm& b, const IntMatrix& basis) {
    for (const auto& row : basis) {
        Integer acc = 0;
        for (std::size_t v = 0; v < row.size(); ++v)
            acc += (a.coeffs[v] - b.coeffs[v]) * row[v];
        if (acc != 0)
            return false;
    }
    return true;
}

} // namespace detail

/// Lattice of integer exponent vectors making degrees equal inside each group.
/// Non-negativity is not imposed here. None when only the zero vector solves it.
inline std::optional<ExponentLattice> solve_degree_system(const PartitionScheme& part,
                                                          const std::vector<SymbolicTerm>& terms,
                                                          const MasterShape& shape) {
    const std::size_t nv = shape.var_count();
    IntMatrix basis = integer_kernel(detail::equality_rows(part, terms, nv), nv);
    if (basis.empty())
        return std::nullopt;
    ExponentLattice lat;
    lat.rank = basis.size();
    for (std::size_t v = 0; v < nv; ++v) {
        std::vector<Integer> row(lat.rank);
        for (std::size_t j = 0; j < lat.rank; ++j)
            row[j] = basis[j][v];
        (v < shape.l ? lat.alpha : lat.beta).push_back(std::move(row));
    }
    lat.basis = std::move(basis);
    return lat;
}

struct PartitionStats {
    std::size_t visited = 0;
    std::size_t pruned_forced_merge = 0;
    std::size_t pruned_zero_lattice = 0;
};

namespace detail {

inline Integer bell_number(std::size_t n) {
    // Bell triangle
    std::vector<Integer> row{1};
    for (std::size_t i = 1; i <= n; ++i) {
        std::vector<Integer> next{row.back()};
        for (const auto& x : row)
            next.push_back(next.back() + x);
        row = std::move(next);
    }
    return row.front();
}

} // namespace detail

/// Set partitions of the terms whose degree system admits a solution keeping
/// distinct groups at distinct degrees. Partitions where two groups coincide on
/// the whole lattice are pruned and counted in `stats`.
inline std::vector<PartitionScheme> enumerate_partitions(const std::vector<SymbolicTerm>& terms,
                                                         const MasterShape& shape, const EnumCaps& caps = {},
                                                         PartitionStats* stats = nullptr) {
    const std::size_t n = terms.size();
    if (n == 0)
        fail(ErrorCode::Precondition, "no terms to partition");
    if (detail::bell_number(n) > caps.max_partitions)
        fail(ErrorCode::SizeGuard, std::to_string(n) + " terms have more set partitions than the guard allows");
    PartitionStats local;
    std::vector<PartitionScheme> out;
    std::vector<std::size_t> rgs(n, 0);
    auto emit = [&](std::size_t blocks) {
        ++local.visited;
        PartitionScheme part;
        part.groups.assign(blocks, {});
        for (std::size_t i = 0; i < n; ++i)
            part.groups[rgs[i]].push_back(i);
        auto lat = solve_degree_system(part, terms, shape);
        if (!lat) {
            ++local.pruned_zero_lattice;
            return;
        }
        for (std::size_t a = 0; a < blocks; ++a)
            for (std::size_t b = a + 1; b < blocks; ++b)
                if (detail::forced_equal(terms[part.groups[a][0]].degree, terms[part.groups[b][0]].degree, lat->basis)) {
                    ++local.pruned_forced_merge;
                    return;
                }
        out.push_back(std::move(part));
    };
    // restricted growth strings
    auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
        if (i == n) {
            emit(blocks);
            return;
        }
        for (std::size_t b = 0; b <= blocks; ++b) {
            rgs[i] = b;
            self(self, i + 1, b == blocks ? blocks + 1 : blocks);
        }
    };
    rgs[0] = 0;
    rec(rec, 1, 1);
    if (stats)
        *stats = local;
    return out;
}

/// Sum of the group's terms set to zero.
struct CoeffEquation {
    std::vector<std::size_t> term_indices;
    std::vector<std::pair<Rational, Monomial>> terms;

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [c, mono] : terms) {
            Rational mag = abs(c);
            os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            if (mag != 1)
                os << mag.get_str() << "*";
            os << monomial_string(mono);
            first = false;
        }
        os << " = 0";
        return os.str();
    }

    /// For groups holding a term of f: "a-terms = the rest", signs moved across.
    std::optional<std::string> relation() const {
        std::vector<std::pair<Rational, Monomial>> lhs, rhs;
        for (const auto& [c, mono] : terms) {
            bool has_a = std::any_of(mono.begin(), mono.end(), [](const auto& p) { return p.first.kind == SymbolKind::A; });
            (has_a ? lhs : rhs).emplace_back(has_a ? c : -c, mono);
        }
        if (lhs.empty())
            return std::nullopt;
        auto side = [](const std::vector<std::pair<Rational, Monomial>>& s) {
            if (s.empty())
                return std::string("0");
            std::ostringstream os;
            bool first = true;
            for (const auto& [c, mono] : s) {
                Rational mag = abs(c);
                os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
                if (mag != 1)
                    os << mag.get_str() << "*";
                os << monomial_string(mono);
                first = false;
            }
            return os.str();
        };
        return side(lhs) + " = " + side(rhs);
    }
};

struct CoeffSystem {
    std::vector<CoeffEquation> equations;
};

/// One equation per group: its coefficients must cancel. Groups without a term
/// of f are written with a positive first coefficient.
inline CoeffSystem coefficient_system(const PartitionScheme& part, const std::vector<SymbolicTerm>& terms) {
    CoeffSystem sys;
    for (const auto& g : part.groups) {
        CoeffEquation eq;
        eq.term_indices = g;
        bool has_a = false;
        for (auto i : g) {
            eq.terms.emplace_back(terms[i].scalar, terms[i].monomial);
            has_a = has_a || terms[i].involves(SymbolKind::A);
        }
        if (!has_a && eq.terms.front().first < 0)
            for (auto& t : eq.terms)
                t.first = -t.first;
        sys.equations.push_back(std::move(eq));
    }
    return sys;
}

/// Rational values for every coefficient symbol.
struct SymbolPoint {
    std::vector<Rational> a;  // a_1..a_l
    std::vector<Rational> b;  // b_0..b_ell
    std::vector<Rational> c1; // c_11..c_1B
    std::vector<Rational> c2; // c_21..c_2B

    const Rational& value(const Symbol& s) const {
        switch (s.kind) {
        case SymbolKind::A: return a.at(s.index - 1);
        case SymbolKind::B: return b.at(s.index);
        case SymbolKind::C1: return c1.at(s.index - 1);
        case SymbolKind::C2: return c2.at(s.index - 1);
        }
        fail(ErrorCode::Precondition, "unknown symbol");
    }

    Rational evaluate(const Monomial& mono) const {
        Rational acc = 1;
        for (const auto& [s, e] : mono) {
            const Rational& v = value(s);
            for (unsigned k = 0; k < e; ++k)
                acc *= v;
        }
        return acc;
    }

    bool fits(const MasterShape& shape) const {
        return a.size() == shape.l && b.size() == shape.ell + 1 && c1.size() == shape.B && c2.size() == shape.B;
    }
};

inline bool satisfies(const CoeffSystem& sys, const SymbolPoint& point) {
    for (const auto& eq : sys.equations) {
        Rational acc = 0;
        for (const auto& [c, mono] : eq.terms)
            acc += c * point.evaluate(mono);
        if (acc != 0)
            return false;
    }
    return true;
}

/// Given values for the c-symbols, the equations are linear in (a_1..a_l, b_0..b_ell);
/// returns a basis of the rational solution space in that variable order.
inline std::vector<std::vector<Rational>> linear_solutions(const CoeffSystem& sys, const MasterShape& shape,
                                                           const std::vector<Rational>& c1,
                                                           const std::vector<Rational>& c2) {
    const std::size_t nv = shape.l + shape.ell + 1;
    SymbolPoint partial;
    partial.c1 = c1;
    partial.c2 = c2;
    std::vector<std::vector<Rational>> rows;
    for (const auto& eq : sys.equations) {
        std::vector<Rational> row(nv, 0);
        for (const auto& [c, mono] : eq.terms) {
            Monomial rest;
            std::size_t col = nv;
            for (const auto& [s, e] : mono) {
                if (s.kind == SymbolKind::A)
                    col = s.index - 1;
                else if (s.kind == SymbolKind::B)
                    col = shape.l + s.index;
                else
                    rest[s] = e;
            }
            if (col == nv)
                fail(ErrorCode::Precondition, "equation term without an a or b symbol");
            row[col] += c * partial.evaluate(rest);
        }
        rows.push_back(std::move(row));
    }
    // reduced row echelon form
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < nv && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[r], rows[piv]);
        const Rational inv = 1 / rows[r][col];
        for (auto& x : rows[r])
            x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0)
                continue;
            const Rational f = rows[i][col];
            for (std::size_t k = 0; k < nv; ++k)
                rows[i][k] -= f * rows[r][k];
        }
        pivots.push_back(col);
        ++r;
    }
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < nv; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end())
            continue;
        std::vector<Rational> v(nv, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -rows[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

struct CatalogEntry {
    std::size_t id = 0;
    PartitionScheme partition;
    ExponentLattice lattice;
    CoeffSystem system;
};

struct Catalog {
    MasterShape shape;
    std::vector<SymbolicTerm> terms;
    std::vector<CatalogEntry> entries;
    PartitionStats stats;
};

/// Every admissible partition with its lattice and coefficient system, in
/// restricted-growth-string order.
inline Catalog build_catalog(const MasterShape& shape, const EnumCaps& caps = {}) {
    Catalog cat;
    cat.shape = shape;
    cat.terms = expand_master_identity(shape, caps);
    for (auto& part : enumerate_partitions(cat.terms, shape, caps, &cat.stats)) {
        CatalogEntry e;
        e.id = cat.entries.size();
        e.lattice = *solve_degree_system(part, cat.terms, shape);
        e.system = coefficient_system(part, cat.terms);
        e.partition = std::move(part);
        cat.entries.push_back(std::move(e));
    }
    return cat;
}

/// Concrete data of an instantiated catalog entry.
struct Instantiation {
    std::vector<Integer> exponents; // m, n_1, n_2
    SparsePoly f;
    DensePoly g;
    SparsePoly h1;
    SparsePoly h2;
    /// h1 / h2 when the division is exact.
    std::optional<SparsePoly> h;
};

namespace detail {

inline SparsePoly assemble(const std::vector<Rational>& coeffs, const std::vector<Integer>& w, std::size_t offset) {
    SparsePoly p;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        p.add_term(w[offset + k], coeffs[k]);
    return p;
}

/// h2^ell f - sum_j b_j h1^j h2^(ell-j)
inline SparsePoly master_residual(const SparsePoly& f, const DensePoly& g, const SparsePoly& h1,
                                  const SparsePoly& h2, unsigned ell, const Limits& limits) {
    SparsePoly acc = mul(pow(h2, ell, limits), f, limits);
    for (unsigned j = 0; j <= ell; ++j) {
        const Rational bj = g[j];
        if (bj == 0)
            continue;
        acc -= mul(pow(h1, j, limits), pow(h2, ell - j, limits), limits).scaled(bj);
    }
    return acc;
}

} // namespace detail

/// Substitutes a coefficient point and a lattice parameter u into a catalog
/// entry and verifies the master identity exactly.
inline Instantiation instantiate(const Catalog& cat, const CatalogEntry& entry, const SymbolPoint& point,
                                 const std::vector<Integer>& u, const Limits& limits = {}) {
    const MasterShape& shape = cat.shape;
    if (!point.fits(shape))
        fail(ErrorCode::InvalidPoint, "point does not match the shape");
    if (!satisfies(entry.system, point))
        fail(ErrorCode::InvalidPoint, "point violates the coefficient system of entry " + std::to_string(entry.id));
    Instantiation out;
    out.exponents = entry.lattice.exponents(u);
    for (std::size_t v = 0; v < out.exponents.size(); ++v)
        if (out.exponents[v] < 0)
            fail(ErrorCode::LaurentRejected, "exponent " + shape.var_name(v) + " = " + out.exponents[v].get_str() +
                                                 " is negative");
    out.f = detail::assemble(point.a, out.exponents, 0);
    out.g = DensePoly(point.b);
    out.h1 = detail::assemble(point.c1, out.exponents, shape.l);
    out.h2 = detail::assemble(point.c2, out.exponents, shape.l + shape.B);
    if (!detail::master_residual(out.f, out.g, out.h1, out.h2, shape.ell, limits).is_zero())
        fail(ErrorCode::Inconsistency, "instantiated identity does not vanish");
    if (!out.h2.is_zero()) {
        auto [q, r] = detail::sparse_divmod(out.h1, out.h2, limits);
        if (r.is_zero())
            out.h = std::move(q);
    }
    return out;
}

/// Degree of every term at a concrete exponent vector, grouped into the
/// partition it induces.
inline PartitionScheme induced_partition(const std::vector<SymbolicTerm>& terms, const std::vector<Integer>& w) {
    std::vector<Integer> deg;
    for (const auto& t : terms)
        deg.push_back(t.degree.at(w));
    PartitionScheme part;
    std::vector<Integer> seen;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        auto it = std::find(seen.begin(), seen.end(), deg[i]);
        if (it == seen.end()) {
            seen.push_back(deg[i]);
            part.groups.push_back({i});
        } else {
            part.groups[static_cast<std::size_t>(it - seen.begin())].push_back(i);
        }
    }
    return part;
}

struct Location {
    std::size_t entry_id;
    std::vector<Integer> u;
};

/// Finds the entry covering a concrete identity given by its coefficient point
/// and exponent vector (m, n_1, n_2).
inline std::optional<Location> locate(const Catalog& cat, const SymbolPoint& point, const std::vector<Integer>& w) {
    PartitionScheme part = induced_partition(cat.terms, w);
    for (const auto& e : cat.entries) {
        if (!(e.partition == part))
            continue;
        auto u = lattice_coordinates(e.lattice.basis, w);
        if (!u || !satisfies(e.system, point))
            return std::nullopt;
        return Location{e.id, std::move(*u)};
    }
    return std::nullopt;
}

/// Is a_1 x^m_1 + ... + a_l x^m_l decomposable (trivially or not)?
inline bool corollary_membership(const std::vector<Rational>& a, const std::vector<Exponent>& m,
                                 const DecomposeOptions& opts = {}) {
    if (a.empty() || a.size() != m.size())
        fail(ErrorCode::Precondition, "coefficient and exponent vectors must have equal nonzero length");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            fail(ErrorCode::Precondition, "coefficients must be nonzero");
        if (m[i] < 1 || (i > 0 && !(m[i] < m[i - 1])))
            fail(ErrorCode::Precondition, "exponents must be positive and strictly decreasing");
    }
    SparsePoly f;
    for (std::size_t i = 0; i < a.size(); ++i)
        f.add_term(m[i], a[i]);
    DecomposeReport rep = sparse_decompose(f, opts);
    if (rep.decomposable())
        return true;
    for (const auto& d : rep.diagnostics)
        if (d.status == DivisorStatus::BudgetExhausted)
            fail(ErrorCode::CandidateBudget, "membership undecided: " + d.note);
    return false;
}

struct ClosureCheck {
    std::vector<unsigned long> m;
    unsigned long t;
    bool multiple_decomposable;
};

struct BoxScanReport {
    unsigned long box = 0;
    std::size_t scanned = 0;
    std::vector<std::vector<unsigned long>> decomposable; // lexicographic
    std::vector<ClosureCheck> closure;
    bool closure_holds = true;
};

/// Decomposable exponent vectors box >= m_1 > ... > m_l >= 1, with the
/// scalar-multiple closure evidence inside the box.
inline BoxScanReport corollary_box_scan(const std::vector<Rational>& a, unsigned long box,
                                        const DecomposeOptions& opts = {}, std::size_t max_points = 200'000) {
    const std::size_t l = a.size();
    if (l == 0)
        fail(ErrorCode::Precondition, "empty coefficient vector");
    for (const auto& x : a)
        if (x == 0)
            fail(ErrorCode::Precondition, "coefficients must be nonzero");
    Integer count;
    mpz_bin_uiui(count.get_mpz_t(), box, l);
    if (count > max_points)
        fail(ErrorCode::SizeGuard, "box holds " + count.get_str() + " exponent vectors");

    BoxScanReport rep;
    rep.box = box;
    std::set<std::vector<unsigned long>> members;
    std::vector<unsigned long> m(l);
    auto rec = [&](auto&& self, std::size_t i, unsigned long below) -> void {
        if (i == l) {
            ++rep.scanned;
            std::vector<Exponent> me(m.begin(), m.end());
            if (corollary_membership(a, me, opts))
                members.insert(m);
            return;
        }
        for (unsigned long v = 1; v < below; ++v) {
            m[i] = v;
            self(self, i + 1, v);
        }
    };
    rec(rec, 0, box + 1);
    rep.decomposable.assign(members.begin(), members.end());
    for (const auto& mv : rep.decomposable) {
        for (unsigned long t = 2; t * mv[0] <= box; ++t) {
            std::vector<unsigned long> mult(mv);
            for (auto& x : mult)
                x *= t;
            bool ok = members.count(mult) > 0;
            rep.closure.push_back({mv, t, ok});
            rep.closure_holds = rep.closure_holds && ok;
        }
    }
    return rep;
}

} // namespace lacunary
