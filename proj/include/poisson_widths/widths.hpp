#pragma once

#include <cmath>
#include <utility>

#include "errors.hpp"
#include "kernels.hpp"
#include "series.hpp"
#include "tolerances.hpp"

namespace poisson_widths {

enum class root_method { closed_form, bisection };
enum class closed_form_tag { beta_even, beta_odd, general };

// The phase root theta_n in [0,1): unique solution of
//
//   sum_{v>=0} q^{(2v+1)n} cos((2v+1) theta pi - beta pi/2) = 0.
template <typename Real>
struct phase_root_result {
    Real q;
    Real beta;
    int n;
    Real theta;
    Real residual; // value of the defining sum at theta
    root_method method;
};

// Left side of the phase equation at the given theta.
template <typename Real>
Real phase_equation(const kernel_params<Real>& p, int n, const Real& theta,
                    const series_budget<Real>& budget = default_budget<Real>())
{
    using std::cos; using std::pow;
    const Real qn = pow(p.q, n);
    const Real q2n = qn * qn;
    const Real phase = detail::half_pi_v<Real>() * p.beta_mod4;
    const Real pith = detail::pi_v<Real>() * theta;
    const Real stop = budget.eps / 2 * qn * (1 - q2n);
    Real qq = qn, acc(0);
    for (int v = 0;; ++v) {
        if (v >= budget.max_terms)
            throw budget_exceeded("phase_equation", v);
        acc += qq * cos(Real(2 * v + 1) * pith - phase);
        qq *= q2n;
        if (qq <= stop)
            break;
    }
    return acc;
}

namespace detail {

// Sign-change bisection on [0,1]. The equation flips sign between the
// endpoints whenever cos(beta pi/2) != 0; the beta = odd case has its root
// at 0 exactly and is handled by the caller.
template <typename Real>
Real phase_root_bisect(const kernel_params<Real>& p, int n, const series_budget<Real>& budget)
{
    using std::fabs;
    Real a(0), b(1);
    Real fa = phase_equation(p, n, a, budget);
    if (fabs(fa) < Real(tol::phase_residual))
        return a;
    const Real fb = phase_equation(p, n, b, budget);
    if (!(fa * fb < 0))
        throw root_bracket_failure("phase_root: no sign change over [0,1]");
    for (int it = 0; it < tol::bisection_cap; ++it) {
        const Real m = (a + b) / 2;
        const Real fm = phase_equation(p, n, m, budget);
        if (fa * fm <= 0) {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
        if (b - a < Real(tol::bisection_width))
            break;
    }
    return (a + b) / 2;
}

} // namespace detail

// Computes theta_n. The closed form
//
//   theta = 1 - [beta] - (1/pi) asin( (1-q^{2n}) cos(beta pi/2)
//                                     / sqrt(1 - 2 q^{2n} cos(beta pi) + q^{4n}) )
//
// (beta reduced mod 2, [beta] its integer part) is used first and accepted
// when the equation residual is below tol::phase_residual, otherwise the
// bisection fallback decides.
template <typename Real>
phase_root_result<Real> phase_root(const kernel_params<Real>& p, int n,
                                   const series_budget<Real>& budget = default_budget<Real>())
{
    using std::asin; using std::cos; using std::fabs; using std::floor;
    using std::pow; using std::sqrt;
    if (n < 1)
        throw std::domain_error("phase_root: n must be >= 1");
    const Real qn = pow(p.q, n);
    if (!(qn > detail::precision_floor<Real>()))
        throw precision_underflow("phase_root: q^n underflows this precision");
    const Real q2n = qn * qn;
    const Real br = p.beta_reduced;
    const Real fl = floor(br); // 0 or 1
    const Real num = (1 - q2n) * cos(detail::half_pi_v<Real>() * br);
    const Real den = sqrt(1 - 2 * q2n * cos(detail::pi_v<Real>() * br) + q2n * q2n);
    Real theta = 1 - fl - asin(num / den) / detail::pi_v<Real>();
    if (theta <= 0)
        theta = 0; // rounding slop (or a stray -0) at beta = odd, where the root is exactly 0

    Real residual = phase_equation(p, n, theta, budget);
    if (fabs(residual) < Real(tol::phase_residual) * qn || fabs(residual) < Real(tol::phase_residual))
        return { p.q, p.beta, n, theta, residual, root_method::closed_form };

    theta = detail::phase_root_bisect(p, n, budget);
    residual = phase_equation(p, n, theta, budget);
    return { p.q, p.beta, n, theta, residual, root_method::bisection };
}

// Peak location y0 = theta_n pi / n of |square_wave_convolution|.
template <typename Real>
Real peak_point(const kernel_params<Real>& p, int n,
                const series_budget<Real>& budget = default_budget<Real>())
{
    return phase_root(p, n, budget).theta * detail::pi_v<Real>() / n;
}

// Distance of the class from the trigonometric polynomials of order n-1:
//
//   E_n = (4/pi) | sum_{v>=0} q^{(2v+1)n}/(2v+1) sin((2v+1) theta pi - beta pi/2) |.
template <typename Real>
struct width_value {
    Real q;
    Real beta;
    int n;
    Real value;
    Real theta;
    closed_form_tag tag;
};

template <typename Real>
width_value<Real> best_approximation(const kernel_params<Real>& p, int n,
                                     const series_budget<Real>& budget = default_budget<Real>())
{
    using std::fabs; using std::pow; using std::sin;
    const phase_root_result<Real> root = phase_root(p, n, budget);
    const Real qn = pow(p.q, n);
    const Real q2n = qn * qn;
    const Real phase = detail::half_pi_v<Real>() * p.beta_mod4;
    const Real pith = detail::pi_v<Real>() * root.theta;
    const Real stop = budget.eps / 2 * qn * (1 - q2n);
    Real qq = qn, acc(0);
    for (int v = 0;; ++v) {
        if (v >= budget.max_terms)
            throw budget_exceeded("best_approximation", v);
        acc += qq / (2 * v + 1) * sin(Real(2 * v + 1) * pith - phase);
        qq *= q2n;
        if (qq <= stop)
            break;
    }
    closed_form_tag tag = closed_form_tag::general;
    if (p.beta_reduced == 0)
        tag = closed_form_tag::beta_even; // theta = 1/2, E_n = (4/pi) atan q^n
    else if (p.beta_reduced == 1)
        tag = closed_form_tag::beta_odd;  // theta = 0,   E_n = (2/pi) log((1+q^n)/(1-q^n))
    return { p.q, p.beta, n, 4 / detail::pi_v<Real>() * fabs(acc), root.theta, tag };
}

} // namespace poisson_widths
