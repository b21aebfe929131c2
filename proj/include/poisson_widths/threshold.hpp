#pragma once

#include <cmath>
#include <utility>

#include "errors.hpp"
#include "kernels.hpp"
#include "series.hpp"
#include "tolerances.hpp"

namespace poisson_widths {

// The master inequality deciding from which order n on the sign pattern of
// the fundamental-spline derivative is certified:
//
//   lhs(n) = 43/(10(1-q)) q^{sqrt n} + 160 q/(57 (n - sqrt n)(1-q)^2)
//   rhs    = (1/2 + 2q/((1+q^2)(1-q))) ((1-q)/(1+q))^{4/(1-q^2)}
//
// rhs is the strict lower bound of the heat kernel; lhs dominates the sum
// of all remainder terms. Both sides are also carried in log form so the
// comparison stays exact when the raw values underflow the active type.
template <typename Real>
struct inequality_sides {
    Real lhs;
    Real rhs;
    Real log_lhs;
    Real log_rhs;
    bool holds; // lhs <= rhs, decided in log space
};

namespace detail {

template <typename Real>
Real log_add(Real a, Real b)
{
    using std::exp; using std::log;
    if (a < b)
        std::swap(a, b);
    return a + log(1 + exp(b - a));
}

} // namespace detail

template <typename Real>
inequality_sides<Real> master_inequality(const Real& q, long long n)
{
    using std::exp; using std::log; using std::sqrt;
    if (!(q > 0 && q < 1))
        throw std::domain_error("master_inequality: q must lie in (0,1)");
    if (n < 2)
        throw std::domain_error("master_inequality: n must be >= 2");
    const Real rn = sqrt(Real(n));
    const Real lq = log(q);
    const Real la = log(Real(43) / (10 * (1 - q))) + rn * lq;
    const Real lb = log(Real(160) / (57 * (Real(n) - rn))) + lq - 2 * log(1 - q);
    const Real log_lhs = detail::log_add(la, lb);
    const Real log_rhs = log(Real(1) / 2 + 2 * q / ((1 + q * q) * (1 - q)))
                       + 4 / (1 - q * q) * log((1 - q) / (1 + q));
    return { exp(la) + exp(lb), exp(log_rhs), log_lhs, log_rhs, log_lhs <= log_rhs };
}

// Closed-form lower bounds on n implied by the inequality chain:
// (n1)  n > 160 q ((1+q)/(1-q))^3 / (57 (1-q)^2)
// (n2)  n > (9 (1+q) / (4 (1-q)))^2
template <typename Real>
Real order_bound_n1(const Real& q)
{
    const Real r = (1 + q) / (1 - q);
    return Real(160) * q / (57 * (1 - q) * (1 - q)) * r * r * r;
}

template <typename Real>
Real order_bound_n2(const Real& q)
{
    const Real r = 9 * (1 + q) / (4 * (1 - q));
    return r * r;
}

// Remainder-domination condition ("condition z"):
//
//   q^n / (1 - q^{2n}) <= 7 q^{sqrt n} / (37 n^2)
//
// evaluated in log space, so n in the millions is fine in binary64.
template <typename Real>
struct condition_z_result {
    bool holds;
    Real log_lhs;
    Real log_rhs;
};

template <typename Real>
condition_z_result<Real> condition_z(const Real& q, long long n)
{
    using std::exp; using std::log; using std::sqrt;
    if (!(q > 0 && q < 1))
        throw std::domain_error("condition_z: q must lie in (0,1)");
    if (n < 1)
        throw std::domain_error("condition_z: n must be >= 1");
    const Real lq = log(q);
    const Real q2n = exp(2 * Real(n) * lq); // may flush to 0; log(1-0) = 0 is exact
    const Real log_lhs = Real(n) * lq - log(1 - q2n);
    const Real log_rhs = log(Real(7) / 37) + sqrt(Real(n)) * lq - 2 * log(Real(n));
    return { log_lhs <= log_rhs, log_lhs, log_rhs };
}

// Smallest n >= 9 with lhs(n) <= rhs. lhs is strictly decreasing in n, so a
// doubling jump followed by binary search is exact. Throws
// iteration_cap_exceeded carrying the (n1) analytic bound when the answer
// lies beyond the cap.
template <typename Real>
struct nq_result {
    Real q;
    long long n_q;
    inequality_sides<Real> at_nq;
    long long evaluations;
};

template <typename Real>
nq_result<Real> threshold_order(const Real& q, long long cap = tol::default_threshold_cap)
{
    if (cap < 9)
        throw std::domain_error("threshold_order: cap must be >= 9");
    long long evals = 0;
    const auto holds = [&](long long n) {
        ++evals;
        return master_inequality(q, n).holds;
    };
    if (holds(9))
        return { q, 9, master_inequality(q, 9), evals };
    long long lo = 9; // known not to hold
    long long hi = 18;
    for (;;) {
        if (hi >= cap) {
            if (!holds(cap))
                throw iteration_cap_exceeded(cap, double(order_bound_n1(q)));
            hi = cap;
            break;
        }
        if (holds(hi))
            break;
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        if (holds(mid))
            hi = mid;
        else
            lo = mid;
    }
    return { q, hi, master_inequality(q, hi), evals };
}

// Numerical audit of the implication chain between the master inequality,
// the order bounds, and condition z. Every *_ok flag false is a genuine
// contradiction of the theory, not a tolerance issue.
template <typename Real>
struct implication_report {
    Real q;
    long long n;
    bool master_holds;
    bool n1_holds;
    bool n2_holds;
    bool condition_z_holds;
    bool master_implies_n1_ok;   // master  => n > (n1), all q
    bool n2_implies_z_ok;        // n > (n2) => condition z, n >= 9
    bool n1_implies_n2_ok;       // n > (n1) => n > (n2), q in (9/25, 1)
    bool master_implies_z_ok;    // master  => condition z, q in (9/25, 1)
    bool small_q_unconditional_ok; // q <= 9/25, n >= 9 => condition z
    bool consistent;
};

template <typename Real>
implication_report<Real> check_implications(const Real& q, long long n)
{
    const bool big_q = q > Real(9) / 25;
    implication_report<Real> rep{};
    rep.q = q;
    rep.n = n;
    rep.master_holds = master_inequality(q, n).holds;
    rep.n1_holds = Real(n) > order_bound_n1(q);
    rep.n2_holds = Real(n) > order_bound_n2(q);
    rep.condition_z_holds = condition_z(q, n).holds;
    rep.master_implies_n1_ok = !rep.master_holds || rep.n1_holds;
    rep.n2_implies_z_ok = !(rep.n2_holds && n >= 9) || rep.condition_z_holds;
    rep.n1_implies_n2_ok = !(big_q && rep.n1_holds) || rep.n2_holds;
    rep.master_implies_z_ok = !(big_q && rep.master_holds && n >= 9) || rep.condition_z_holds;
    rep.small_q_unconditional_ok = !(!big_q && n >= 9) || rep.condition_z_holds;
    rep.consistent = rep.master_implies_n1_ok && rep.n2_implies_z_ok &&
                     rep.n1_implies_n2_ok && rep.master_implies_z_ok &&
                     rep.small_q_unconditional_ok;
    return rep;
}

} // namespace poisson_widths
