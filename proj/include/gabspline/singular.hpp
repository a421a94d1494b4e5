#pragma once

// Extremal singular values of small dense complex matrices.
//
// The frame bounds of the rows' span are the extreme eigenvalues of the
// Gram matrix M M^*. Forming M M^* explicitly squares the condition number,
// which caps the resolution of a vanishing sigma_min at about sqrt(eps).
// Instead the cyclic Jacobi rotations that would diagonalize M M^* are
// applied to the rows of M themselves (one-sided Jacobi, Hestenes): once
// every pair of rows is orthogonal the row norms are the singular values,
// accurate to a few eps * sigma_max even when sigma_min is ~1e-17.

#include "gabspline/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace gabspline {

struct SingularExtrema {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
};

namespace detail {

/// Orthogonalizes `rows` (rows x cols, row-major) in place.
inline void one_sided_jacobi(std::vector<Complex>& a, std::size_t rows, std::size_t cols) {
    constexpr double tol = 1e-15;
    constexpr int max_sweeps = 80;
    auto row = [&](std::size_t i) { return a.data() + i * cols; };

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < rows; ++i) {
            for (std::size_t j = i + 1; j < rows; ++j) {
                Complex* u = row(i);
                Complex* v = row(j);
                double alpha = 0.0, beta = 0.0;
                Complex gamma{0.0, 0.0};
                for (std::size_t k = 0; k < cols; ++k) {
                    alpha += std::norm(u[k]);
                    beta += std::norm(v[k]);
                    gamma += std::conj(u[k]) * v[k];
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= tol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const Complex phase = gamma / g;  // e^{i phi}
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t k = 0; k < cols; ++k) {
                    const Complex uk = u[k];
                    const Complex vk = std::conj(phase) * v[k];  // rotate against e^{-i phi} v
                    u[k] = c * uk - s * vk;
                    v[k] = phase * (s * uk + c * vk);
                }
            }
        }
        if (!rotated) break;
    }
}

}  // namespace detail

/// Smallest and largest singular value of the rows x cols matrix `m`
/// (row-major). For rows > cols the smallest is 0 (rank < rows), matching
/// the lower frame bound of the columns in C^rows.
inline SingularExtrema singular_extrema(std::span<const Complex> m, std::size_t rows, std::size_t cols) {
    if (rows == 0) return {};
    std::vector<Complex> a(m.begin(), m.end());
    detail::one_sided_jacobi(a, rows, cols);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        double n2 = 0.0;
        for (std::size_t k = 0; k < cols; ++k) n2 += std::norm(a[i * cols + k]);
        const double s = std::sqrt(n2);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    if (rows > cols) lo = 0.0;
    return {lo, hi};
}

}  // namespace gabspline
