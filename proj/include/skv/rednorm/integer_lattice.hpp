#pragma once

#include <utility>
#include <vector>

#include "skv/exact/rational.hpp"
#include "skv/rednorm/matrix.hpp"

namespace skv {

using IntMatrix = Matrix<Integer>;
using IntVector = std::vector<Integer>;

namespace detail {

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace detail

/// Row-style Hermite normal form of the lattice spanned by `rows` (vectors of
/// equal length). Returns the nonzero echelon rows with positive pivots and
/// entries above each pivot reduced into [0, pivot).
inline std::vector<IntVector> hermite_rows(std::vector<IntVector> rows) {
    if (rows.empty()) return {};
    const std::size_t n = rows.front().size();
    std::vector<IntVector> basis;
    std::size_t top = 0;
    for (std::size_t col = 0; col < n && top < rows.size(); ++col) {
        // Euclid down the column among rows[top..]
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = top; i < rows.size(); ++i)
                if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col]))) best = i;
            if (best == rows.size()) break;
            std::swap(rows[top], rows[best]);
            bool done = true;
            for (std::size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                Integer q = detail::floor_div(rows[i][col], rows[top][col]);
                for (std::size_t k = col; k < n; ++k) rows[i][k] -= q * rows[top][k];
                if (rows[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[top][col] == 0) continue;
        if (rows[top][col] < 0)
            for (std::size_t k = col; k < n; ++k) rows[top][k] = -rows[top][k];
        ++top;
    }
    rows.resize(top);
    // reduce entries above pivots
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::size_t pc = 0;
        while (rows[i][pc] == 0) ++pc;
        for (std::size_t r = 0; r < i; ++r) {
            Integer q = detail::floor_div(rows[r][pc], rows[i][pc]);
            if (q != 0)
                for (std::size_t k = pc; k < n; ++k) rows[r][k] -= q * rows[i][k];
        }
    }
    return rows;
}

/// Membership of v in the lattice with the given Hermite basis.
inline bool lattice_contains(const std::vector<IntVector>& hnf, IntVector v) {
    for (const auto& row : hnf) {
        std::size_t pc = 0;
        while (row[pc] == 0) ++pc;
        for (std::size_t k = 0; k < pc; ++k)
            if (v[k] != 0) return false;
        if (v[pc] % row[pc] != 0) return false;
        Integer q = v[pc] / row[pc];
        for (std::size_t k = pc; k < v.size(); ++k) v[k] -= q * row[k];
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

/// Smith normal form U A V = D with unimodular U, V. Also returns V^-1.
struct SmithForm {
    IntMatrix d, u, v, v_inv;
};

inline SmithForm smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SmithForm s{a, IntMatrix::identity(m, 0, 1), IntMatrix::identity(n, 0, 1), IntMatrix::identity(n, 0, 1)};
    auto& d = s.d;
    auto row_op = [&](std::size_t dst, std::size_t src, const Integer& q) {  // row dst -= q row src
        for (std::size_t k = 0; k < n; ++k) d(dst, k) -= q * d(src, k);
        for (std::size_t k = 0; k < m; ++k) s.u(dst, k) -= q * s.u(src, k);
    };
    auto col_op = [&](std::size_t dst, std::size_t src, const Integer& q) {  // col dst -= q col src
        for (std::size_t k = 0; k < m; ++k) d(k, dst) -= q * d(k, src);
        for (std::size_t k = 0; k < n; ++k) s.v(k, dst) -= q * s.v(k, src);
        for (std::size_t k = 0; k < n; ++k) s.v_inv(src, k) += q * s.v_inv(dst, k);
    };
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < n; ++k) std::swap(d(i, k), d(j, k));
        for (std::size_t k = 0; k < m; ++k) std::swap(s.u(i, k), s.u(j, k));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < m; ++k) std::swap(d(k, i), d(k, j));
        for (std::size_t k = 0; k < n; ++k) std::swap(s.v(k, i), s.v(k, j));
        for (std::size_t k = 0; k < n; ++k) std::swap(s.v_inv(i, k), s.v_inv(j, k));
    };
    auto negate_row = [&](std::size_t i) {
        for (std::size_t k = 0; k < n; ++k) d(i, k) = -d(i, k);
        for (std::size_t k = 0; k < m; ++k) s.u(i, k) = -s.u(i, k);
    };
    const std::size_t r = std::min(m, n);
    for (std::size_t t = 0; t < r; ++t) {
        while (true) {
            // smallest nonzero entry in the trailing block becomes the pivot
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (d(i, j) != 0 && (bi == m || abs(d(i, j)) < abs(d(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == m) return s;
            swap_rows(t, bi);
            swap_cols(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i)
                if (d(i, t) != 0) {
                    row_op(i, t, detail::floor_div(d(i, t), d(t, t)));
                    if (d(i, t) != 0) clean = false;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (d(t, j) != 0) {
                    col_op(j, t, detail::floor_div(d(t, j), d(t, t)));
                    if (d(t, j) != 0) clean = false;
                }
            if (!clean) continue;
            // divisibility: pivot must divide the rest of the block
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        row_op(t, i, -1);  // row t += row i, then reduce again
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (d(t, t) < 0) negate_row(t);
    }
    return s;
}

}  // namespace skv
