#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "errors.hpp"
#include "kernels.hpp"
#include "series.hpp"
#include "tolerances.hpp"

// Slow reference implementations. Everything here recomputes a quantity the
// library produces in closed or accelerated form, by a route that shares no
// algebra with it: brute-force grids, term-by-term convolution sums and
// trapezoid Fourier integrals. Test code compares both answers.
namespace poisson_widths {
namespace oracles {

struct grid_spec {
    long long points_per_period; // sample count over one 2*pi period
    long long quadrature_points; // trapezoid nodes for Fourier integrals
};

inline grid_spec default_grid(long long n)
{
    return { 4096 * std::max<long long>(1, n), 8192 };
}

template <typename Real>
struct located_max {
    Real position;
    Real value;
};

// Golden-section refinement for a locally unimodal maximum in [a, b].
// Plain function values, no derivatives; accuracy in position is limited
// by the flatness of f near the peak, not by xtol.
template <typename Real, typename F>
located_max<Real> golden_section_max(F&& f, Real a, Real b, const Real& xtol)
{
    using std::sqrt;
    const Real invphi = (sqrt(Real(5)) - 1) / 2;
    Real c = b - invphi * (b - a);
    Real d = a + invphi * (b - a);
    Real fc = f(c);
    Real fd = f(d);
    while (b - a > xtol) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    located_max<Real> best{ c, fc };
    if (fd > best.value)
        best = { d, fd };
    const Real xm = (a + b) / 2;
    const Real fm = f(xm);
    if (fm > best.value)
        best = { xm, fm };
    return best;
}

// Coarse scan of [a, b) on a uniform grid, then golden-section refinement
// inside the bracketing cell pair. f must extend continuously a step past
// both ends (our integrands are periodic, so it does).
template <typename Real, typename F>
located_max<Real> grid_argmax(F&& f, Real a, Real b, long long points,
                              const Real& xtol = Real(tol::argmax_location))
{
    if (points < 3)
        throw std::domain_error("grid_argmax: need at least 3 points");
    const Real h = (b - a) / Real(points);
    long long best = 0;
    Real best_val = f(a);
    for (long long j = 1; j < points; ++j) {
        const Real v = f(a + Real(j) * h);
        if (v > best_val) {
            best_val = v;
            best = j;
        }
    }
    const Real lo = a + Real(best - 1) * h;
    const Real hi = a + Real(best + 1) * h;
    return golden_section_max(f, lo, hi, xtol);
}

// Distance between a and b as points on a circle of the given circumference.
template <typename Real>
Real circular_distance(const Real& a, const Real& b, const Real& period)
{
    using std::fabs; using std::fmod;
    Real d = fmod(fabs(a - b), period);
    if (d < 0)
        d += period;
    return (std::min)(d, period - d);
}

// Convolution of the decaying-cosine kernel with the square wave of sign
// changes at multiples of pi/n, evaluated by splitting the integral at those
// sign changes and integrating each kernel harmonic exactly:
//
//   (2/pi) sum_k (q^k/k) sum_{m=0}^{2n-1} (-1)^m sin(k(x - m pi/n) - phase)
//
// The inner sum is left as written, 2n sine evaluations per harmonic; folding
// it up analytically would just re-derive the fast series form.
template <typename Real>
Real convolution_value(const kernel_params<Real>& p, long long n, const Real& x,
                       const series_budget<Real>& budget = default_budget<Real>())
{
    if (n < 1)
        throw std::domain_error("convolution_value: n must be >= 1");
    const Real pi = detail::pi_v<Real>();
    const Real phase = p.beta_mod4 * detail::half_pi_v<Real>();
    const Real step = -pi / Real(n);
    // |inner sum| <= 2n, so the tail past harmonic K is below
    // (4n/pi) q^{K+1} / ((K+1)(1-q)).
    const Real tail_scale = 4 * Real(n) / (pi * (1 - p.q));
    Real qk = 1;
    Real acc = 0;
    for (long long k = 1; k <= budget.max_terms; ++k) {
        qk *= p.q;
        detail::rotator<Real> rot(Real(k) * x - phase, Real(k) * step);
        Real inner = 0;
        Real sgn = 1;
        for (long long m = 0; m < 2 * n; ++m) {
            inner += sgn * rot.sinv();
            sgn = -sgn;
            rot.advance();
        }
        acc += qk / Real(k) * inner;
        if (tail_scale * qk * p.q / Real(k + 1) <= budget.eps / 2)
            return 2 / pi * acc;
    }
    throw budget_exceeded("convolution_value", budget.max_terms);
}

// Peak height and location of |convolution| over one half period [0, pi/n).
// The function alternates sign across half periods, so scanning a full
// period and folding the winner back loses nothing.
template <typename Real>
located_max<Real> convolution_max(const kernel_params<Real>& p, long long n,
                                  const grid_spec& grid,
                                  const series_budget<Real>& budget = default_budget<Real>())
{
    using std::fabs; using std::fmod;
    const Real pi = detail::pi_v<Real>();
    const Real period = 2 * pi / Real(n);
    const long long points = (std::max)(64LL, grid.points_per_period / (std::max)(1LL, n));
    const auto f = [&](const Real& x) { return fabs(convolution_value(p, n, x, budget)); };
    located_max<Real> peak = grid_argmax(f, Real(0), period, points);
    Real pos = fmod(peak.position, period / 2);
    if (pos < 0)
        pos += period / 2;
    return { pos, peak.value };
}

// Trapezoid-rule value of (1/pi) \int_0^{2pi} f(t) e^{-ikt} dt. For a series
// sum_j a_j cos(jt) + b_j sin(jt) this converges to a_k - i b_k, exactly up
// to aliasing of harmonics at distance >= points - k.
template <typename Real, typename F>
detail::cplx<Real> fourier_coefficient(F&& f, long long k, long long points)
{
    if (points < 2 * (k < 0 ? -k : k) + 2)
        throw std::domain_error("fourier_coefficient: grid too coarse for this harmonic");
    const Real step = 2 * detail::pi_v<Real>() / Real(points);
    detail::rotator<Real> rot(Real(0), Real(-k) * step);
    detail::cplx<Real> acc{ 0, 0 };
    for (long long j = 0; j < points; ++j) {
        const Real w = f(Real(j) * step);
        acc += detail::cplx<Real>{ w * rot.cosv(), w * rot.sinv() };
        rot.advance();
    }
    return { 2 * acc.re / Real(points), 2 * acc.im / Real(points) };
}

} // namespace oracles
} // namespace poisson_widths
