#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "errors.hpp"
#include "series.hpp"

namespace poisson_widths {

// Parameters of the kernel family
//
//   P_{q,beta}(t)   = sum_{k>=1} q^k cos(kt - beta pi/2),        0 < q < 1,
//   P_{q,beta,1}(t) = sum_{k>=1} (q^k/k) cos(kt - (beta+1) pi/2)
//
// beta may be any real. Magnitudes only depend on beta mod 2; signs flip
// with period 2, so beta mod 4 is kept for all phase-sensitive work (it
// reduces every beta pi/2 phase exactly modulo 2 pi).
template <typename Real>
struct kernel_params {
    Real q;
    Real beta;
    Real beta_reduced; // beta mod 2, in [0,2)
    Real beta_mod4;    // beta mod 4, in [0,4)

    kernel_params(Real q_, Real beta_) : q(std::move(q_)), beta(std::move(beta_))
    {
        using std::floor; using std::fabs;
        if (!(q > 0 && q < 1))
            throw std::domain_error("kernel_params: q must lie strictly inside (0,1)");
        if (!(fabs(beta) < Real(1e9)))
            throw std::domain_error("kernel_params: beta must be a (reasonable) finite real");
        beta_reduced = beta - 2 * floor(beta / 2);
        beta_mod4 = beta - 4 * floor(beta / 4);
    }
};

// sum_{k>=1} q^k cos(kt - beta pi/2).
// Tail after K terms is below q^{K+1}/(1-q).
template <typename Real>
Real poisson_kernel(const kernel_params<Real>& p, const Real& t,
                    const series_budget<Real>& budget = default_budget<Real>())
{
    using std::cos;
    const Real phase = detail::half_pi_v<Real>() * p.beta_mod4;
    const Real geom = p.q / (1 - p.q);
    Real qk(1), acc(0);
    for (int k = 1;; ++k) {
        if (k > budget.max_terms)
            throw budget_exceeded("poisson_kernel", k);
        qk *= p.q;
        acc += qk * cos(Real(k) * t - phase);
        if (qk * geom < budget.eps / 2)
            break;
    }
    return acc;
}

// Closed form of the same sum: Re[ e^{-i beta pi/2} q e^{it} / (1 - q e^{it}) ].
template <typename Real>
Real poisson_kernel_closed(const kernel_params<Real>& p, const Real& t)
{
    using std::cos; using std::sin;
    const Real c = cos(t), s = sin(t);
    const Real den = 1 - 2 * p.q * c + p.q * p.q; // |1 - q e^{it}|^2
    const Real re = (p.q * c - p.q * p.q) / den;
    const Real im = p.q * s / den;
    const Real phase = detail::half_pi_v<Real>() * p.beta_mod4;
    return cos(phase) * re + sin(phase) * im;
}

// sum_{k>=1} (q^k/k) cos(kt - (beta+1) pi/2).
template <typename Real>
Real poisson_kernel_1(const kernel_params<Real>& p, const Real& t,
                      const series_budget<Real>& budget = default_budget<Real>())
{
    using std::cos;
    const Real phase = detail::half_pi_v<Real>() * (p.beta_mod4 + 1);
    const Real geom = p.q / (1 - p.q);
    Real qk(1), acc(0);
    for (int k = 1;; ++k) {
        if (k > budget.max_terms)
            throw budget_exceeded("poisson_kernel_1", k);
        qk *= p.q;
        acc += qk / k * cos(Real(k) * t - phase);
        if (qk * geom < budget.eps / 2)
            break;
    }
    return acc;
}

// Closed form: Re[ e^{-i (beta+1) pi/2} (-log(1 - q e^{it})) ].
template <typename Real>
Real poisson_kernel_1_closed(const kernel_params<Real>& p, const Real& t)
{
    using std::cos; using std::sin; using std::log; using std::atan2;
    const Real c = cos(t), s = sin(t);
    const Real den = 1 - 2 * p.q * c + p.q * p.q;
    const Real log_re = -log(den) / 2;          // -log|1 - q e^{it}|
    const Real log_im = atan2(p.q * s, 1 - p.q * c);
    const Real phase = detail::half_pi_v<Real>() * (p.beta_mod4 + 1);
    return cos(phase) * log_re + sin(phase) * log_im;
}

// Convolution of P_{q,beta} with the unit square wave sgn sin(n t):
//
//   (4/pi) sum_{v>=0} q^{(2v+1)n}/(2v+1) sin((2v+1) n t - beta pi/2)
//
// Antiperiodic with period pi/n. Throws precision_underflow once q^n is at
// or below the smallest normal value of Real; the extended tiers never hit
// that in practice.
template <typename Real>
Real square_wave_convolution(const kernel_params<Real>& p, int n, const Real& t,
                             const series_budget<Real>& budget = default_budget<Real>())
{
    using std::sin; using std::pow;
    if (n < 1)
        throw std::domain_error("square_wave_convolution: n must be >= 1");
    const Real qn = pow(p.q, n);
    if (!(qn > detail::precision_floor<Real>()))
        throw precision_underflow("square_wave_convolution: q^n underflows this precision");
    const Real q2n = qn * qn;
    const Real phase = detail::half_pi_v<Real>() * p.beta_mod4;
    const Real nt = Real(n) * t;
    // tail after the v-th term is below q^{(2v+3)n}/(1-q^{2n}); the series
    // envelope is the leading coefficient q^n
    const Real stop = budget.eps / 2 * qn * (1 - q2n);
    Real qq = qn, acc(0);
    for (int v = 0;; ++v) {
        if (v >= budget.max_terms)
            throw budget_exceeded("square_wave_convolution", v);
        acc += qq / (2 * v + 1) * sin(Real(2 * v + 1) * nt - phase);
        qq *= q2n;
        if (qq <= stop)
            break;
    }
    return 4 / detail::pi_v<Real>() * acc;
}

// Heat-conduction kernel, cosine series form:
//
//   H_q(x) = 1/2 + 2 sum_{j>=1} cos(jx)/(q^j + q^{-j})
//
// computed as 2 q^j/(1+q^{2j}) per term to avoid negative powers.
template <typename Real>
Real heat_kernel_series(const Real& q, const Real& x,
                        const series_budget<Real>& budget = default_budget<Real>())
{
    using std::cos;
    if (!(q > 0 && q < 1))
        throw std::domain_error("heat_kernel_series: q must lie in (0,1)");
    const Real geom = q / (1 - q);
    Real qj(1), q2j(1), acc = Real(1) / 2;
    for (int j = 1;; ++j) {
        if (j > budget.max_terms)
            throw budget_exceeded("heat_kernel_series", j);
        qj *= q; q2j *= q * q;
        acc += 2 * qj / (1 + q2j) * cos(Real(j) * x);
        if (2 * qj * geom < budget.eps / 2)
            break;
    }
    return acc;
}

// The same kernel through the elliptic function dn:
//
//   H_q(x) = (K/pi) dn(K x / pi),
//   K      = pi (1/2 + 2 sum_{j>=1} q^j/(1+q^{2j})),
//   dn(Kx/pi) = exp(-8 sum_{j>=1} q^{2j-1} sin^2((2j-1)x/2) /
//                        ((2j-1)(1-q^{2(2j-1)}))).
template <typename Real>
Real heat_kernel_elliptic(const Real& q, const Real& x,
                          const series_budget<Real>& budget = default_budget<Real>())
{
    using std::sin; using std::exp;
    if (!(q > 0 && q < 1))
        throw std::domain_error("heat_kernel_elliptic: q must lie in (0,1)");
    const Real geom = q / (1 - q);
    Real qj(1), q2j(1), k_over_pi = Real(1) / 2;
    for (int j = 1;; ++j) {
        if (j > budget.max_terms)
            throw budget_exceeded("heat_kernel_elliptic", j);
        qj *= q; q2j *= q * q;
        k_over_pi += 2 * qj / (1 + q2j);
        if (2 * qj * geom < budget.eps / 2)
            break;
    }
    // tail of the exponent series after j terms is below q^{2j+1}/(1-q^2)^2
    const Real q2 = q * q;
    const Real stop = budget.eps / 16 * (1 - q2) * (1 - q2);
    Real qw = q;     // q^{2j-1}
    Real q2w = q2;   // q^{2(2j-1)}
    Real expo(0);
    for (int j = 1;; ++j) {
        if (j > budget.max_terms)
            throw budget_exceeded("heat_kernel_elliptic", j);
        const int w = 2 * j - 1;
        const Real sh = sin(Real(w) * x / 2);
        expo += qw / (Real(w) * (1 - q2w)) * sh * sh;
        qw *= q2; q2w *= q2 * q2;
        if (qw <= stop)
            break;
    }
    return k_over_pi * exp(-8 * expo);
}

// Strict lower bound for min_x H_q(x):
//
//   (1/2 + 2q/((1+q^2)(1-q))) ((1-q)/(1+q))^{4/(1-q^2)}
//
// May underflow to zero in binary64 for q close to 1; the threshold module
// carries the log form where that matters.
template <typename Real>
Real heat_kernel_lower_bound(const Real& q)
{
    using std::pow;
    if (!(q > 0 && q < 1))
        throw std::domain_error("heat_kernel_lower_bound: q must lie in (0,1)");
    const Real front = Real(1) / 2 + 2 * q / ((1 + q * q) * (1 - q));
    return front * pow((1 - q) / (1 + q), 4 / (1 - q * q));
}

} // namespace poisson_widths
