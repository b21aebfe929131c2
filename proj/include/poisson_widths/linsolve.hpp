#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "errors.hpp"

namespace poisson_widths {
namespace detail {

// Dense Gaussian elimination with scaled partial pivoting. Row-major square
// matrix, solved in place. Good enough for the small collocation systems we
// build (a few dozen unknowns); no blocking, no refinement.
template <typename Real>
std::vector<Real> solve_dense(std::vector<Real> a, std::vector<Real> b)
{
    using std::fabs;
    const std::size_t n = b.size();
    if (a.size() != n * n)
        throw std::invalid_argument("solve_dense: matrix/rhs size mismatch");

    std::vector<Real> scale(n);
    for (std::size_t i = 0; i < n; ++i) {
        Real s = 0;
        for (std::size_t j = 0; j < n; ++j)
            s = (std::max)(s, fabs(a[i * n + j]));
        if (s == 0)
            throw ill_conditioned("solve_dense: zero row", std::numeric_limits<double>::infinity());
        scale[i] = s;
    }

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i)
        perm[i] = i;

    Real pivot_max = 0;
    Real pivot_min = std::numeric_limits<Real>::infinity();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        Real best_ratio = fabs(a[perm[col] * n + col]) / scale[perm[col]];
        for (std::size_t r = col + 1; r < n; ++r) {
            const Real ratio = fabs(a[perm[r] * n + col]) / scale[perm[r]];
            if (ratio > best_ratio) {
                best_ratio = ratio;
                best = r;
            }
        }
        std::swap(perm[col], perm[best]);
        const Real piv = a[perm[col] * n + col];
        const Real piv_mag = fabs(piv) / scale[perm[col]];
        if (!(piv_mag > 100 * std::numeric_limits<Real>::epsilon()))
            throw ill_conditioned("solve_dense: vanishing pivot",
                                  piv_mag > 0 ? double(1 / piv_mag)
                                              : std::numeric_limits<double>::infinity());
        pivot_max = (std::max)(pivot_max, piv_mag);
        pivot_min = (std::min)(pivot_min, piv_mag);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Real m = a[perm[r] * n + col] / piv;
            if (m == 0)
                continue;
            a[perm[r] * n + col] = 0;
            for (std::size_t j = col + 1; j < n; ++j)
                a[perm[r] * n + j] -= m * a[perm[col] * n + j];
            b[perm[r]] -= m * b[perm[col]];
        }
    }
    // Crude conditioning signal; catches the degenerate geometries we care
    // about without estimating a true norm.
    if (pivot_min > 0 && pivot_max / pivot_min > Real(1) / (1000 * std::numeric_limits<Real>::epsilon()))
        throw ill_conditioned("solve_dense: pivot spread", double(pivot_max / pivot_min));

    std::vector<Real> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Real s = b[perm[ii]];
        for (std::size_t j = ii + 1; j < n; ++j)
            s -= a[perm[ii] * n + j] * x[j];
        x[ii] = s / a[perm[ii] * n + ii];
    }
    return x;
}

} // namespace detail
} // namespace poisson_widths
