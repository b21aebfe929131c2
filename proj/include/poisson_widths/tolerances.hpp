#pragma once

#include <limits>

// Every fixed tolerance and cap the library commits to, in one place.
// These are part of the observable contract (tests pin against them), so
// changing one is an interface change, not a tuning knob.

namespace poisson_widths {
namespace tol {

// Acceptable absolute residual of the phase equation at the closed-form
// root before the bisection fallback kicks in.
inline constexpr double phase_residual = 1e-12;

// Bisection fallback: interval width target and iteration cap.
inline constexpr double bisection_width = 1e-14;
inline constexpr int bisection_cap = 200;

// |sin(n y0 - beta pi/2)| below this is treated as a degenerate phase.
inline constexpr double degenerate_phase_floor = 1e-14;

// A midpoint derivative value counts as zero (e_k = 0) when its magnitude
// is below zero_scale * max_k |v_k|.
inline constexpr double zero_scale = 1e-12;

// Default cap for the threshold-order scan.
inline constexpr long long default_threshold_cap = 10'000'000;

// Location tolerance for the grid argmax refinement.
inline constexpr double argmax_location = 1e-12;

// Smallest |lambda_l| the direct derivative representation accepts, per
// precision family. Extended types keep hundreds of digits of exponent
// headroom, so their floor sits far lower.
template <typename Real>
double singular_floor()
{
    return std::numeric_limits<Real>::digits10 <= 18 ? 1e-120 : 1e-250;
}

} // namespace tol
} // namespace poisson_widths
