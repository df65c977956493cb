#pragma once

#include <optional>
#include <vector>

#include "eucalc/rational.hpp"

namespace eucalc {

// Dense exact matrix, row-major.
using Mat = std::vector<Vec>;

// In-place Gauss elimination to row echelon form; returns the rank and
// the pivot-column list.
inline int row_echelon(Mat& m, std::vector<int>* pivot_cols = nullptr) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        if (pivot_cols) pivot_cols->push_back(static_cast<int>(c));
        ++r;
    }
    return static_cast<int>(r);
}

inline int rank(Mat m) { return row_echelon(m); }

// Solve A x = b exactly; nullopt when inconsistent. If the system is
// underdetermined, free variables are set to zero.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    Mat aug(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        aug[i] = a[i];
        aug[i].push_back(b[i]);
    }
    std::vector<int> piv;
    row_echelon(aug, &piv);
    Vec x(cols, Rational(0));
    std::size_t r = 0;
    for (; r < aug.size(); ++r) {
        std::size_t c = 0;
        while (c < cols && sgn(aug[r][c]) == 0) ++c;
        if (c == cols) {
            if (sgn(aug[r][cols]) != 0) return std::nullopt;
            continue;
        }
        x[c] = aug[r][cols] / aug[r][c];
    }
    // echelon form is fully reduced above the pivots, so back substitution
    // is already done; verify once for safety against free-variable coupling
    for (std::size_t i = 0; i < rows; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < cols; ++j) s += a[i][j] * x[j];
        if (s != b[i]) return std::nullopt;
    }
    return x;
}

// Basis of the kernel of A (columns = dim of the domain).
inline std::vector<Vec> nullspace(Mat a, std::size_t cols) {
    if (a.empty()) {
        std::vector<Vec> basis;
        for (std::size_t i = 0; i < cols; ++i) {
            Vec e(cols, Rational(0));
            e[i] = 1;
            basis.push_back(e);
        }
        return basis;
    }
    std::vector<int> piv;
    row_echelon(a, &piv);
    std::vector<bool> is_pivot(cols, false);
    for (int c : piv) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        Vec v(cols, Rational(0));
        v[free_c] = 1;
        // walk pivot rows and solve for the pivot variables
        std::size_t r = 0;
        for (int pc : piv) {
            Rational s = 0;
            for (std::size_t j = 0; j < cols; ++j)
                if (j != static_cast<std::size_t>(pc)) s += a[r][j] * v[j];
            v[pc] = -s / a[r][pc];
            ++r;
        }
        basis.push_back(primitive_signed(v));
    }
    return basis;
}

// Exact inverse of a square matrix; nullopt when singular.
inline std::optional<Mat> inverse(const Mat& a) {
    const std::size_t n = a.size();
    Mat aug(n);
    for (std::size_t i = 0; i < n; ++i) {
        aug[i] = a[i];
        for (std::size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? Rational(1) : Rational(0));
    }
    if (row_echelon(aug) != static_cast<int>(n)) return std::nullopt;
    Mat inv(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i) {
        // echelon form is diagonal here; normalize each pivot row
        std::size_t c = 0;
        while (sgn(aug[i][c]) == 0) ++c;
        for (std::size_t j = 0; j < n; ++j) inv[c][j] = aug[i][n + j] / aug[i][c];
    }
    return inv;
}

inline Vec apply(const Mat& a, const Vec& x) {
    Vec r(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) r[i] += a[i][j] * x[j];
    return r;
}

inline Mat transpose(const Mat& a) {
    if (a.empty()) return {};
    Mat t(a[0].size(), Vec(a.size(), Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

} // namespace eucalc
