#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace lacunary {

using IntMatrix = std::vector<std::vector<Integer>>; // row-major

namespace detail {

/// Integer row reduction of the first `cols` columns of m by unimodular row
/// operations. Returns the number of pivot rows, which come first.
inline std::size_t integer_echelon(IntMatrix& m, std::size_t cols) {
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        // gcd-combine every lower row into `row`
        for (std::size_t r = row + 1; r < m.size(); ++r) {
            if (m[r][c] == 0)
                continue;
            if (m[row][c] == 0) {
                std::swap(m[row], m[r]);
                continue;
            }
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m[row][c].get_mpz_t(), m[r][c].get_mpz_t());
            const Integer a = m[row][c] / g;
            const Integer b = m[r][c] / g;
            for (std::size_t k = 0; k < m[row].size(); ++k) {
                Integer top = s * m[row][k] + t * m[r][k];
                Integer bottom = a * m[r][k] - b * m[row][k];
                m[row][k] = std::move(top);
                m[r][k] = std::move(bottom);
            }
        }
        if (m[row][c] != 0)
            ++row;
    }
    return row;
}

} // namespace detail

/// Row Hermite normal form: echelon, positive pivots, entries above each pivot
/// reduced into [0, pivot). Zero rows are dropped.
inline IntMatrix hermite_normal_form(IntMatrix m) {
    if (m.empty())
        return m;
    const std::size_t cols = m[0].size();
    std::size_t rank = detail::integer_echelon(m, cols);
    m.resize(rank);
    std::size_t c = 0;
    for (std::size_t r = 0; r < rank; ++r) {
        while (m[r][c] == 0)
            ++c;
        if (m[r][c] < 0)
            for (auto& x : m[r])
                x = -x;
        for (std::size_t above = 0; above < r; ++above) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), m[above][c].get_mpz_t(), m[r][c].get_mpz_t());
            if (q == 0)
                continue;
            for (std::size_t k = 0; k < cols; ++k)
                m[above][k] -= q * m[r][k];
        }
        ++c;
    }
    return m;
}

/// Basis (as rows, in Hermite normal form) of { w in Z^n : A w = 0 }, where
/// n is the column count of A.
inline IntMatrix integer_kernel(const IntMatrix& a, std::size_t n) {
    // rows of [A^T | I]; reducing the A^T part leaves kernel vectors in I
    const std::size_t e = a.size();
    IntMatrix aug(n, std::vector<Integer>(e + n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < e; ++r)
            aug[i][r] = a[r][i];
        aug[i][e + i] = 1;
    }
    std::size_t rank = detail::integer_echelon(aug, e);
    IntMatrix kernel;
    for (std::size_t i = rank; i < n; ++i)
        kernel.emplace_back(aug[i].begin() + static_cast<long>(e), aug[i].end());
    return hermite_normal_form(std::move(kernel));
}

/// u with w = sum_j u_j * basis[j], for a basis in Hermite normal form.
inline std::optional<std::vector<Integer>> lattice_coordinates(const IntMatrix& basis,
                                                               const std::vector<Integer>& w) {
    std::vector<Integer> rest = w;
    std::vector<Integer> u;
    std::size_t c = 0;
    for (const auto& row : basis) {
        while (c < row.size() && row[c] == 0) {
            if (rest[c] != 0)
                return std::nullopt;
            ++c;
        }
        if (!mpz_divisible_p(rest[c].get_mpz_t(), row[c].get_mpz_t()))
            return std::nullopt;
        Integer q = rest[c] / row[c];
        for (std::size_t k = 0; k < row.size(); ++k)
            rest[k] -= q * row[k];
        u.push_back(std::move(q));
        ++c;
    }
    for (const auto& x : rest)
        if (x != 0)
            return std::nullopt;
    return u;
}

} // namespace lacunary
