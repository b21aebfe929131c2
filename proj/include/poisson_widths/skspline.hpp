#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "kernels.hpp"
#include "linsolve.hpp"
#include "series.hpp"
#include "tolerances.hpp"
#include "widths.hpp"

namespace poisson_widths {

// Uniform partition of [0, 2pi] into 2n cells together with cell midpoints.
// nodes[k] = k pi/n for k = 0..2n; midpoints[i] = (2i+1) pi/(2n) for
// i = 0..2n-1, the midpoint of (nodes[i], nodes[i+1]).
template <typename Real>
struct partition_points {
    int n;
    std::vector<Real> nodes;
    std::vector<Real> midpoints;
};

template <typename Real>
partition_points<Real> make_partition(int n)
{
    if (n < 1)
        throw std::domain_error("make_partition: n must be >= 1");
    partition_points<Real> part{ n, {}, {} };
    const Real h = detail::pi_v<Real>() / n;
    part.nodes.reserve(2 * n + 1);
    for (int k = 0; k <= 2 * n; ++k)
        part.nodes.push_back(Real(k) * h);
    part.midpoints.reserve(2 * n);
    for (int i = 0; i < 2 * n; ++i)
        part.midpoints.push_back(Real(2 * i + 1) * h / 2);
    return part;
}

namespace detail {

inline int isqrt_int(int n)
{
    int r = int(std::sqrt(double(n)));
    while (r > 0 && r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

} // namespace detail

// Spectral multiplier of the interpolation problem, straight from its
// definition as a root-of-unity average of kernel translates:
//
//   lambda_l(y) = (1/n) sum_{v=1}^{2n} e^{i l v pi/n} P_{q,beta,1}(y - v pi/n).
//
// The 2n summands are O(q) each while the average is O(q^l): l-1 digits of
// cancellation, so this form is the oracle, not the workhorse.
template <typename Real>
detail::cplx<Real> lambda_direct(const kernel_params<Real>& p, int n, int l, const Real& y,
                                 const series_budget<Real>& budget = default_budget<Real>())
{
    if (n < 1)
        throw std::domain_error("lambda_direct: n must be >= 1");
    if (l < 1 || l > n)
        throw std::domain_error("lambda_direct: l must lie in [1, n]");
    const Real h = detail::pi_v<Real>() / n;
    detail::rotator<Real> rot(Real(l) * h, Real(l) * h); // angle l v pi/n at v = 1
    detail::cplx<Real> acc{ Real(0), Real(0) };
    for (int v = 1; v <= 2 * n; ++v) {
        const Real w = poisson_kernel_1(p, y - Real(v) * h, budget);
        acc += detail::cplx<Real>{ w * rot.cosv(), w * rot.sinv() };
        rot.advance();
    }
    return (Real(1) / n) * acc;
}

// The same multiplier through its aliased Fourier expansion: the average
// keeps exactly the harmonics congruent to l mod 2n,
//
//   lambda_l(y) = sum_{m in Z} c_{2mn+l} e^{i(2mn+l)y},
//   c_k = (q^k/k) e^{-i(beta+1)pi/2} for k > 0, c_{-k} = conj(c_k).
//
// Leading term has magnitude q^l/l; every further pair decays by q^{2n}.
template <typename Real>
detail::cplx<Real> lambda_fourier(const kernel_params<Real>& p, int n, int l, const Real& y,
                                  const series_budget<Real>& budget = default_budget<Real>())
{
    using std::pow;
    if (n < 1)
        throw std::domain_error("lambda_fourier: n must be >= 1");
    if (l < 1 || l > n)
        throw std::domain_error("lambda_fourier: l must lie in [1, n]");
    const Real ph1 = detail::half_pi_v<Real>() * (p.beta_mod4 + 1);
    const Real q2n = pow(p.q, 2 * n);
    Real ap = pow(p.q, l);         // numerator q^{2mn+l}, m = 0
    Real am = pow(p.q, 2 * n - l); // numerator q^{2mn-l}, m = 1
    detail::cplx<Real> acc = (ap / l) * detail::unit(Real(l) * y - ph1);
    const Real stop = budget.eps / 2 * ap / l;
    for (int m = 1; m <= budget.max_terms; ++m) {
        // numerators of this pair and everything after sum to (ap q^{2n} + am)/(1-q^{2n});
        // the am side matters: at l = n its first term is q^n, half the whole multiplier
        if ((ap * q2n + am) / (1 - q2n) <= stop)
            return acc;
        ap *= q2n;
        const Real kp = Real(2 * m) * n + l;
        const Real km = Real(2 * m) * n - l;
        acc += (ap / kp) * detail::unit(kp * y - ph1);
        acc += (am / km) * detail::unit(-(km * y) + ph1);
        am *= q2n;
    }
    throw budget_exceeded("lambda_fourier", budget.max_terms);
}

// lambda_{n-j}(y0) split around its two leading harmonics:
//
//   lambda_{n-j}(y0) = e^{-ijy0} ((-1)^s main + r1 + r2 + r3),
//   main = q^{n-j}/(n-j) + q^{n+j}/(n+j),
//   (-1)^s = sgn sin(n y0 - beta pi/2).
//
// r1 collects every harmonic beyond the leading pair, r2 the out-of-phase
// part of the pair, r3 the deviation of |sin| from 1. big_r = |lambda|-main.
// delta is the relative gap of n|lambda| cos(j pi/(2n)) from q^{n-j}+q^{n+j},
// kept for 1 <= j <= min([sqrt n], n-1) where the remainder theory needs it.
template <typename Real>
struct lambda_decomposition {
    int j;
    detail::cplx<Real> lambda;
    Real main_term;
    detail::cplx<Real> r1;
    detail::cplx<Real> r2;
    detail::cplx<Real> r3;
    Real big_r;
    int sign_index;
    std::optional<Real> delta;
};

namespace detail {

// Shared worker: y0 is the peak point, ny0 = theta pi computed without the
// divide-and-remultiply round trip.
template <typename Real>
lambda_decomposition<Real> decompose_lambda_at(const kernel_params<Real>& p, int n, int j,
                                               const Real& y0, const Real& ny0,
                                               const series_budget<Real>& budget)
{
    using std::cos; using std::fabs; using std::pow; using std::sin;
    if (j < 0 || j >= n)
        throw std::domain_error("decompose_lambda: j must lie in [0, n-1]");
    const Real qn = pow(p.q, n);
    if (!(qn > precision_floor<Real>()))
        throw precision_underflow("decompose_lambda: q^n underflows this precision");

    const Real ph = half_pi_v<Real>() * p.beta_mod4;
    const Real ph1 = ph + half_pi_v<Real>();
    const Real sv = sin(ny0 - ph);
    if (fabs(sv) < Real(tol::degenerate_phase_floor))
        throw degenerate_phase("decompose_lambda: sin(n y0 - beta pi/2) vanished");
    const int s = sv > 0 ? 0 : 1;
    const Real sgn_s = s == 0 ? Real(1) : Real(-1);

    const Real anj = pow(p.q, n - j);
    const Real apj = pow(p.q, n + j);
    const Real a = anj / (n - j);
    const Real b = apj / (n + j);
    const Real main = a + b;

    // r1: aliases from the third harmonic band outward, pairs decaying by
    // q^{2n} per band
    const Real q2n = qn * qn;
    Real ap = pow(p.q, 3 * n - j);
    Real am = pow(p.q, 3 * n + j);
    cplx<Real> r1 = (ap / (3 * n - j)) * unit(3 * ny0 - ph1);
    const Real stop = budget.eps * main / 4;
    for (int m = 2; m <= budget.max_terms; ++m) {
        if ((ap * q2n + am) / (1 - q2n) <= stop)
            break;
        if (m == budget.max_terms)
            throw budget_exceeded("decompose_lambda", m);
        ap *= q2n;
        r1 += (ap / (Real(2 * m + 1) * n - j)) * unit(Real(2 * m + 1) * ny0 - ph1);
        r1 += (am / (Real(2 * m - 1) * n + j)) * unit(-(Real(2 * m - 1) * ny0 - ph1));
        am *= q2n;
    }

    const cplx<Real> r2{ Real(0), (b - a) * cos(ny0 - ph) }; // zero exactly at j = 0
    const cplx<Real> r3{ sgn_s * main * (fabs(sv) - 1), Real(0) };

    const cplx<Real> lam = lambda_fourier(p, n, n - j, y0, budget);
    const Real abs_lam = abs_value(lam);

    std::optional<Real> delta;
    const int jr = (std::min)(isqrt_int(n), n - 1);
    if (j >= 1 && j <= jr)
        delta = Real(n) * abs_lam * cos(Real(j) * half_pi_v<Real>() / n) / (anj + apj) - 1;

    return { j, lam, main, r1, r2, r3, abs_lam - main, s, delta };
}

} // namespace detail

template <typename Real>
lambda_decomposition<Real> decompose_lambda(const kernel_params<Real>& p, int n, int j,
                                            const series_budget<Real>& budget = default_budget<Real>())
{
    const phase_root_result<Real> root = phase_root(p, n, budget);
    const Real ny0 = root.theta * detail::pi_v<Real>();
    const Real y0 = ny0 / n;
    return detail::decompose_lambda_at(p, n, j, y0, ny0, budget);
}

// Derivative of the fundamental spline with shift y, one constant value per
// cell, from the spectral representation. Index i covers (x_i, x_{i+1}):
//
//   v_i = (pi/(4n^2)) ( 2 sum_{j=1}^{n-1} (sin(j t) Re l_j - cos(j t) Im l_j)
//                            / (|l_j|^2 sin(j pi/(2n)))
//                       + (-1)^i Re l_n / |l_n|^2 ),   t = midpoint i,
//
// with l_j = lambda_j(y). Refuses to divide by |l_j| below the singularity
// floor of the active type.
template <typename Real>
std::vector<Real> derivative_at_midpoints_direct(const kernel_params<Real>& p, int n, const Real& y,
                                                 const series_budget<Real>& budget = default_budget<Real>())
{
    using std::sin;
    if (n < 1)
        throw std::domain_error("derivative_at_midpoints_direct: n must be >= 1");
    std::vector<detail::cplx<Real>> lam(n + 1);
    for (int l = 1; l <= n; ++l) {
        lam[l] = lambda_fourier(p, n, l, y, budget);
        if (!(detail::abs_value(lam[l]) > Real(tol::singular_floor<Real>())))
            throw near_singular("derivative_at_midpoints_direct: |lambda_" + std::to_string(l) +
                                "| at or below the singularity floor");
    }
    const Real pi = detail::pi_v<Real>();
    std::vector<Real> wr(n), wi(n); // per-j multipliers of sin(jt), -cos(jt)
    for (int j = 1; j < n; ++j) {
        const Real a2 = lam[j].re * lam[j].re + lam[j].im * lam[j].im;
        const Real den = a2 * sin(Real(j) * pi / (2 * n));
        wr[j] = lam[j].re / den;
        wi[j] = lam[j].im / den;
    }
    const Real wn = lam[n].re / (lam[n].re * lam[n].re + lam[n].im * lam[n].im);
    const Real scale = pi / (4 * Real(n) * n);

    std::vector<Real> vals(2 * n);
    for (int i = 0; i < 2 * n; ++i) {
        const Real t = Real(2 * i + 1) * pi / (2 * n);
        detail::rotator<Real> rot(t, t); // angle j t at j = 1
        Real acc(0);
        for (int j = 1; j < n; ++j) {
            acc += rot.sinv() * wr[j] - rot.cosv() * wi[j];
            rot.advance();
        }
        const Real alt = i % 2 == 0 ? wn : -wn;
        vals[i] = scale * (2 * acc + alt);
    }
    return vals;
}

// Per-correction bookkeeping of the heat-form evaluation below. per_k[m]
// holds gamma_{m+1} for every cell; max_abs[m] = max_k |gamma_{m+1}|;
// total = sum_m max_abs[m], the quantity the remainder budget must beat.
template <typename Real>
struct gamma_breakdown {
    std::array<std::vector<Real>, 5> per_k;
    std::array<Real, 5> max_abs{};
    Real total{};
};

template <typename Real>
struct heat_form_derivatives {
    std::vector<Real> values; // one per cell, same indexing as the direct form
    gamma_breakdown<Real> gamma;
    Real y0{};
    int sign_index = 0;
    Real heat_min{};        // min over cells of the heat kernel at t - y0
    Real min_abs_lambda{};  // min_l |lambda_l(y0)|
};

// Same derivative values at the shift y = y0, rearranged around the heat
// kernel: with u = t - y0,
//
//   v_i = (-1)^{i+s} (pi/(4 n q^n)) ( H_q(u) + g1 + g2 + g3 + g4 + g5 ).
//
// Every division by a lambda happens through n|lambda_{n-j}|/q^n, which
// stays of order q^{-j}, so this form never needs |lambda| itself to clear
// an absolute floor; it is exact for every n >= 1 (the three [sqrt n]
// ranges are clamped to n-1, which changes nothing for n >= 2).
template <typename Real>
heat_form_derivatives<Real> derivative_at_midpoints_heat_form(const kernel_params<Real>& p, int n,
                                                              const series_budget<Real>& budget = default_budget<Real>())
{
    using std::cos; using std::fabs; using std::pow;
    if (n < 1)
        throw std::domain_error("derivative_at_midpoints_heat_form: n must be >= 1");
    const Real qn = pow(p.q, n);
    if (!(qn > detail::precision_floor<Real>()))
        throw precision_underflow("derivative_at_midpoints_heat_form: q^n underflows this precision");

    const phase_root_result<Real> root = phase_root(p, n, budget);
    const Real pi = detail::pi_v<Real>();
    const Real ny0 = root.theta * pi;
    const Real y0 = ny0 / n;

    std::vector<lambda_decomposition<Real>> dec;
    dec.reserve(n);
    for (int j = 0; j < n; ++j)
        dec.push_back(detail::decompose_lambda_at(p, n, j, y0, ny0, budget));
    const int s = dec[0].sign_index;
    const Real sgn_s = s == 0 ? Real(1) : Real(-1);

    Real min_abs_lambda = detail::abs_value(dec[0].lambda);
    for (int j = 1; j < n; ++j)
        min_abs_lambda = (std::min)(min_abs_lambda, detail::abs_value(dec[j].lambda));

    const int jr = (std::min)(detail::isqrt_int(n), n - 1);

    // gamma_5 range: heat harmonics past jr until the geometric tail is spent
    int j5max = jr;
    {
        Real qj = pow(p.q, jr + 1);
        const Real geom = 2 / (1 - p.q);
        while (qj * geom > budget.eps / 4) {
            ++j5max;
            qj *= p.q;
            if (j5max - jr > budget.max_terms)
                throw budget_exceeded("derivative_at_midpoints_heat_form", j5max);
        }
    }
    const int jmax = (std::max)(n - 1, j5max);

    // per-j multipliers, zero-padded so the per-cell loop stays branch-free:
    //   g1 = sum c1[j] cos(ju)                 (jr < j < n)
    //   g2 = sgn_qn (z0/|l_n|^2 + sum (zc[j] cos(ju) + zs[j] sin(ju)))
    //   g4 = sum c4[j] cos(ju)                 (1 <= j <= jr)
    //   g5 = sum w5[j] cos(ju)                 (jr < j <= j5max)
    std::vector<Real> c1(jmax + 1, Real(0)), c4(jmax + 1, Real(0));
    std::vector<Real> zc(jmax + 1, Real(0)), zs(jmax + 1, Real(0));
    std::vector<Real> w5(jmax + 1, Real(0));
    for (int j = 1; j < n; ++j) {
        const lambda_decomposition<Real>& d = dec[j];
        const Real abs_lam = d.big_r + d.main_term; // |lambda_{n-j}|
        if (!(abs_lam > d.main_term * Real(1e-6)))
            throw near_singular("derivative_at_midpoints_heat_form: |lambda_{n-" +
                                std::to_string(j) + "}| collapsed against its leading part");
        const Real cosj = cos(Real(j) * pi / (2 * n));
        const Real lam_scaled = Real(n) * abs_lam / qn; // of order q^{-j}
        if (j > jr)
            c1[j] = 2 / (lam_scaled * cosj);
        else
            c4[j] = -2 * *d.delta / (lam_scaled * cosj);
        const detail::cplx<Real> r = d.r1 + d.r2 + d.r3;
        const Real c2 = 2 / (abs_lam * abs_lam * cosj);
        zc[j] = (r.re - sgn_s * d.big_r) * c2; // (-1)^{s+1} R_j folded in
        zs[j] = -r.im * c2;
    }
    {
        Real qj = pow(p.q, jr + 1), q2j = pow(p.q, 2 * (jr + 1));
        const Real qsq = p.q * p.q;
        for (int j = jr + 1; j <= j5max; ++j) {
            w5[j] = -2 * qj / (1 + q2j);
            qj *= p.q;
            q2j *= qsq;
        }
    }
    const Real abs_lam0 = dec[0].big_r + dec[0].main_term;
    const detail::cplx<Real> r0 = dec[0].r1 + dec[0].r2 + dec[0].r3;
    const Real z0_term = (r0.re - sgn_s * dec[0].big_r) / (abs_lam0 * abs_lam0);
    const Real sgn_qn = sgn_s * qn / n;
    const Real r0n = dec[0].big_r * Real(n) / qn;
    const Real g3 = -r0n / (2 * (2 + r0n)); // cell-independent

    heat_form_derivatives<Real> out;
    out.values.resize(2 * n);
    for (auto& v : out.gamma.per_k)
        v.resize(2 * n);
    out.y0 = y0;
    out.sign_index = s;
    out.min_abs_lambda = min_abs_lambda;

    const Real scale = pi / (4 * Real(n) * qn);
    Real heat_min(0);
    for (int i = 0; i < 2 * n; ++i) {
        const Real u = Real(2 * i + 1) * pi / (2 * n) - y0;
        const Real heat = heat_kernel_series(p.q, u, budget);
        detail::rotator<Real> rot(u, u); // angle j u at j = 1
        Real g1(0), g2acc(0), g4(0), g5(0);
        for (int j = 1; j <= jmax; ++j) {
            const Real cu = rot.cosv();
            const Real su = rot.sinv();
            g1 += c1[j] * cu;
            g2acc += zc[j] * cu + zs[j] * su;
            g4 += c4[j] * cu;
            g5 += w5[j] * cu;
            rot.advance();
        }
        const Real g2 = sgn_qn * (z0_term + g2acc);
        out.gamma.per_k[0][i] = g1;
        out.gamma.per_k[1][i] = g2;
        out.gamma.per_k[2][i] = g3;
        out.gamma.per_k[3][i] = g4;
        out.gamma.per_k[4][i] = g5;
        const Real sign = (i + s) % 2 == 0 ? Real(1) : Real(-1);
        out.values[i] = sign * scale * (heat + g1 + g2 + g3 + g4 + g5);
        heat_min = i == 0 ? heat : (std::min)(heat_min, heat);
    }
    out.heat_min = heat_min;
    for (int m = 0; m < 5; ++m) {
        Real mx(0);
        for (const Real& g : out.gamma.per_k[m])
            mx = (std::max)(mx, fabs(g));
        out.gamma.max_abs[m] = mx;
        out.gamma.total += mx;
    }
    return out;
}

enum class condition_verdict { verified, failed, degenerate };

inline const char* verdict_name(condition_verdict v)
{
    switch (v) {
    case condition_verdict::verified: return "verified";
    case condition_verdict::failed: return "failed";
    default: return "degenerate";
    }
}

// Outcome of the alternating-sign check at the peak shift. e_flags[i] is
// false when |v_i| <= zero_scale * max|v| (the value counts as zero and
// constrains nothing); verdict is verified iff every remaining value
// satisfies sgn v_i = (-1)^i epsilon_sign.
template <typename Real>
struct condition_report {
    kernel_params<Real> params;
    int n;
    Real y0;
    Real min_abs_lambda;
    std::vector<Real> midpoint_values;
    gamma_breakdown<Real> gamma;
    Real heat_min;
    Real margin; // heat_min - gamma.total; > 0 certifies the pattern
    int epsilon_sign;
    std::vector<bool> e_flags;
    condition_verdict verdict;
    std::string note;
};

template <typename Real>
condition_report<Real> verify_condition(const kernel_params<Real>& p, int n,
                                        const series_budget<Real>& budget = default_budget<Real>())
{
    using std::fabs;
    condition_report<Real> rep{ p,       n,       Real(0), Real(0), {}, {}, Real(0),
                                Real(0), 0,       {},      condition_verdict::degenerate, "" };
    heat_form_derivatives<Real> hf;
    try {
        hf = derivative_at_midpoints_heat_form(p, n, budget);
    } catch (const degenerate_phase& e) {
        rep.note = e.what();
        return rep;
    } catch (const near_singular& e) {
        rep.note = e.what();
        return rep;
    }
    rep.y0 = hf.y0;
    rep.min_abs_lambda = hf.min_abs_lambda;
    rep.midpoint_values = std::move(hf.values);
    rep.gamma = std::move(hf.gamma);
    rep.heat_min = hf.heat_min;
    rep.margin = rep.heat_min - rep.gamma.total;

    Real vmax(0);
    for (const Real& v : rep.midpoint_values)
        vmax = (std::max)(vmax, fabs(v));
    const Real ztol = Real(tol::zero_scale) * vmax;
    rep.e_flags.resize(rep.midpoint_values.size());
    bool consistent = true;
    for (std::size_t i = 0; i < rep.midpoint_values.size(); ++i) {
        const Real& v = rep.midpoint_values[i];
        if (fabs(v) <= ztol) {
            rep.e_flags[i] = false;
            continue;
        }
        rep.e_flags[i] = true;
        const int cand = (v > 0 ? 1 : -1) * (i % 2 == 0 ? 1 : -1);
        if (rep.epsilon_sign == 0)
            rep.epsilon_sign = cand;
        else if (cand != rep.epsilon_sign)
            consistent = false;
    }
    rep.verdict = consistent && rep.epsilon_sign != 0 ? condition_verdict::verified
                                                      : condition_verdict::failed;
    return rep;
}

// 2pi-periodic sawtooth (pi - u)/2 on (0, 2pi): the cell-wise derivative
// contributed by one kernel translate.
template <typename Real>
Real sawtooth_mean_zero(Real u)
{
    using std::floor;
    const Real two_pi = 2 * detail::pi_v<Real>();
    u -= two_pi * floor(u / two_pi);
    return (detail::pi_v<Real>() - u) / 2;
}

// The fundamental interpolant: value 1 at y, 0 at the other shifted nodes
// y + k pi/n. alpha[k-1] multiplies the translate at nodes[k], k = 1..2n.
template <typename Real>
struct sk_spline {
    kernel_params<Real> params;
    partition_points<Real> part;
    Real shift;
    Real alpha0;
    std::vector<Real> alpha;

    Real value(const Real& t, const series_budget<Real>& budget = default_budget<Real>()) const
    {
        Real acc = alpha0;
        for (std::size_t k = 0; k < alpha.size(); ++k)
            acc += alpha[k] * poisson_kernel_1(params, t - part.nodes[k + 1], budget);
        return acc;
    }

    // piecewise constant; never meant to be sampled at the nodes themselves
    Real derivative_value(const Real& t) const
    {
        Real acc(0);
        for (std::size_t k = 0; k < alpha.size(); ++k)
            acc += alpha[k] * sawtooth_mean_zero(t - part.nodes[k + 1]);
        return acc;
    }
};

// Solves the (2n+1)-unknown collocation system {S(y + i pi/n) = [i = 0],
// sum alpha = 0} directly. Shares no algebra with the lambda representation,
// which makes it the cross-check for everything above.
template <typename Real>
sk_spline<Real> build_fundamental_spline(const kernel_params<Real>& p, int n, const Real& y,
                                         const series_budget<Real>& budget = default_budget<Real>())
{
    using std::fabs;
    if (n < 1)
        throw std::domain_error("build_fundamental_spline: n must be >= 1");
    for (int l = 1; l <= n; ++l)
        if (!(detail::abs_value(lambda_fourier(p, n, l, y, budget)) > Real(tol::singular_floor<Real>())))
            throw near_singular("build_fundamental_spline: |lambda_" + std::to_string(l) +
                                "| at or below the singularity floor");

    partition_points<Real> part = make_partition<Real>(n);
    const int dim = 2 * n + 1;
    const Real h = detail::pi_v<Real>() / n;
    std::vector<Real> a(std::size_t(dim) * dim), rhs(dim, Real(0));
    for (int i = 0; i < 2 * n; ++i) {
        const Real yi = y + Real(i) * h;
        a[std::size_t(i) * dim] = 1;
        for (int k = 1; k <= 2 * n; ++k)
            a[std::size_t(i) * dim + k] = poisson_kernel_1(p, yi - part.nodes[k], budget);
    }
    rhs[0] = 1;
    for (int k = 1; k <= 2 * n; ++k)
        a[std::size_t(2 * n) * dim + k] = 1; // zero-sum constraint row

    std::vector<Real> sol = detail::solve_dense<Real>(std::move(a), std::move(rhs));
    sk_spline<Real> spline{ p, std::move(part), y, sol[0],
                            std::vector<Real>(sol.begin() + 1, sol.end()) };

    Real alpha_sum(0), alpha_abs(0);
    for (const Real& ak : spline.alpha) {
        alpha_sum += ak;
        alpha_abs += fabs(ak);
    }
    if (!(fabs(alpha_sum) <= Real(1e-12) * (std::max)(alpha_abs, Real(1))))
        throw ill_conditioned("build_fundamental_spline: zero-sum constraint residual",
                              double(fabs(alpha_sum) / (std::max)(alpha_abs, Real(1))));

    Real resid(0);
    for (int i = 0; i < 2 * n; ++i) {
        const Real target = i == 0 ? Real(1) : Real(0);
        resid = (std::max)(resid, fabs(spline.value(y + Real(i) * h, budget) - target));
    }
    if (!(resid < Real(1e-8)))
        throw ill_conditioned("build_fundamental_spline: interpolation residual above 1e-8",
                              double(resid));
    return spline;
}

} // namespace poisson_widths
