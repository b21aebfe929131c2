// Acceptance gate: every release-blocking property of the library, one
// printed line per criterion. Exit status is the number of failures.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <poisson_widths/poisson_widths.hpp>

using namespace poisson_widths;

namespace {

constexpr double pi = 3.141592653589793238462643;

struct outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(const char* what, double time_budget_s, const std::function<outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    outcome oc;
    try {
        oc = body();
    } catch (const std::exception& e) {
        oc.pass = false;
        oc.detail = std::string("exception: ") + e.what();
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_budget_s > 0 && dt > time_budget_s) {
        oc.pass = false;
        oc.detail += oc.detail.empty() ? "" : "; ";
        oc.detail += "exceeded " + std::to_string(time_budget_s) + " s budget";
    }
    std::printf("%s  [%8.3f s]  %s%s%s\n", oc.pass ? "PASS" : "FAIL", dt, what,
                oc.detail.empty() ? "" : " -- ", oc.detail.c_str());
    std::fflush(stdout);
    if (!oc.pass)
        ++failures;
}

struct triple {
    double q, beta;
    int n;
};

std::vector<triple> random_triples(int count, int n_max, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uq(0.1, 0.9), ub(0.0, 2.0);
    std::uniform_int_distribution<int> un(1, n_max);
    std::vector<triple> out(count);
    for (triple& t : out)
        t = { uq(rng), ub(rng), un(rng) };
    return out;
}

std::string count_note(int checks) { return std::to_string(checks) + " comparisons"; }

} // namespace

int main()
{
    criterion("closed-form approximation values at integer phases", 1.0, [] {
        int checks = 0;
        for (double q : { 0.1, 0.3, 0.5, 0.7, 0.9 })
            for (int n = 1; n <= 8; ++n) {
                const double qn = std::pow(q, n);
                const double even = best_approximation(kernel_params<double>(q, 0.0), n).value;
                if (!(std::fabs(even - 4 / pi * std::atan(qn)) <= 1e-12))
                    return outcome{ false, "even phase mismatch" };
                const double odd = best_approximation(kernel_params<double>(q, 1.0), n).value;
                if (!(std::fabs(odd - 2 / pi * std::log((1 + qn) / (1 - qn))) <= 1e-12))
                    return outcome{ false, "odd phase mismatch" };
                checks += 2;
            }
        return outcome{ true, count_note(checks) };
    });

    const std::vector<triple> triples = random_triples(60, 8, 20260822u);

    criterion("series values and peak locations match the quadrature oracle", 60.0, [&] {
        double worst_v = 0, worst_x = 0;
        for (const triple& t : triples) {
            const kernel_params<double> p(t.q, t.beta);
            const width_value<double> w = best_approximation(p, t.n);
            const oracles::located_max<double> m =
                oracles::convolution_max(p, t.n, oracles::default_grid(t.n));
            worst_v = std::max(worst_v, std::fabs(m.value - w.value));
            const double y0 = w.theta * pi / t.n;
            const double dx = oracles::circular_distance(m.position, y0, pi / t.n);
            worst_x = std::max(worst_x, dx * t.n); // compare against pi/1000 after scaling
            if (!(std::fabs(m.value - w.value) <= 1e-8))
                return outcome{ false, "value gap " + std::to_string(worst_v) };
            if (!(dx <= pi / (1000.0 * t.n)))
                return outcome{ false, "peak location gap" };
        }
        return outcome{ true, "worst value gap " + std::to_string(worst_v) };
    });

    criterion("phase roots solve the phase equation", 10.0, [&] {
        for (const triple& t : triples) {
            const kernel_params<double> p(t.q, t.beta);
            const phase_root_result<double> r = phase_root(p, t.n);
            if (!(std::fabs(r.residual) < 1e-12))
                return outcome{ false, "residual " + std::to_string(r.residual) };
            if (!(r.theta >= 0 && r.theta < 1))
                return outcome{ false, "root outside [0,1)" };
        }
        return outcome{ true, count_note(int(triples.size())) };
    });

    criterion("heat kernel series, elliptic product, and positivity floor", 10.0, [] {
        for (int iq = 1; iq <= 9; ++iq) {
            const double q = 0.1 * iq;
            const double bound = heat_kernel_lower_bound(q);
            double lo = 1e300;
            for (int i = 0; i < 720; ++i) {
                const double x = 2 * pi * i / 720;
                const double s = heat_kernel_series(q, x);
                const double e = heat_kernel_elliptic(q, x);
                if (!(std::fabs(s - e) <= 1e-10))
                    return outcome{ false, "series vs elliptic at q=" + std::to_string(q) };
                // the product form stays positive and relatively accurate even
                // where the alternating series cancels below the binary64
                // noise floor (minimum ~1e-19 at q = 0.9), so it carries the
                // floor comparison
                lo = std::min(lo, e);
            }
            if (!(lo > bound))
                return outcome{ false, "positivity floor at q=" + std::to_string(q) };
        }
        return outcome{ true, "9 ratios x 720 points" };
    });

    criterion("multiplier average equals its aliased series", 30.0, [] {
        std::mt19937 rng(977u);
        std::uniform_real_distribution<double> uq(0.1, 0.9), ub(0.0, 2.0), uy(0.0, 2 * pi);
        using Real = real50;
        double worst = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const double q = uq(rng);
            const int n = 1 + int(rng() % 16);
            const int l = 1 + int(rng() % n);
            const kernel_params<Real> p(Real(q), Real(ub(rng)));
            const Real y(uy(rng));
            const detail::cplx<Real> a = lambda_direct(p, n, l, y);
            const detail::cplx<Real> b = lambda_fourier(p, n, l, y);
            const Real scale = pow(p.q, l) / l;
            const Real gap = detail::abs_value(a - b) / scale;
            const double rel = gap.convert_to<double>();
            worst = std::max(worst, rel);
            if (!(rel <= 1e-10))
                return outcome{ false, "relative gap " + std::to_string(rel) };
        }
        return outcome{ true, "worst relative gap " + std::to_string(worst) };
    });

    criterion("midpoint derivative representations agree", 60.0, [] {
        for (double q : { 0.1, 0.2, 0.3 })
            for (double beta : { 0.0, 0.5, 1.0, 1.5 })
                for (int n : { 9, 10, 12 }) {
                    const kernel_params<double> p(q, beta);
                    const double y0 = peak_point(p, n);
                    const std::vector<double> direct = derivative_at_midpoints_direct(p, n, y0);
                    const heat_form_derivatives<double> heat =
                        derivative_at_midpoints_heat_form(p, n);
                    double vmax = 0;
                    for (const double& v : direct)
                        vmax = std::max(vmax, std::fabs(v));
                    for (std::size_t i = 0; i < direct.size(); ++i)
                        if (!(std::fabs(heat.values[i] - direct[i]) <= 1e-9 * vmax))
                            return outcome{ false, "gap at q=" + std::to_string(q) +
                                                       " beta=" + std::to_string(beta) +
                                                       " n=" + std::to_string(n) };
                }
        return outcome{ true, "36 configurations" };
    });

    criterion("correction stack stays under the domination budget", 60.0, [] {
        for (double q : { 0.1, 0.2, 0.3 })
            for (double beta : { 0.0, 0.5, 1.0, 1.5 })
                for (int n : { 9, 10, 12 }) {
                    if (!condition_z(q, n).holds)
                        return outcome{ false, "remainder domination failed first" };
                    const kernel_params<double> p(q, beta);
                    const heat_form_derivatives<double> heat =
                        derivative_at_midpoints_heat_form(p, n);
                    const double budget = master_inequality(q, n).lhs;
                    if (!(heat.gamma.total <= budget))
                        return outcome{ false, "stack " + std::to_string(heat.gamma.total) +
                                                   " over budget " + std::to_string(budget) };
                }
        return outcome{ true, "36 configurations" };
    });

    criterion("sign condition verifies just past the threshold", 120.0, [] {
        int runs = 0;
        for (double q : { 0.1, 0.2, 0.3 }) {
            const long long nq = threshold_order(q).n_q;
            for (long long dn : { 0, 1, 5 })
                for (double beta : { 0.0, 0.25, 0.5, 1.0, 1.5 }) {
                    const kernel_params<double> p(q, beta);
                    const condition_report<double> rep = verify_condition(p, int(nq + dn));
                    if (rep.verdict != condition_verdict::verified)
                        return outcome{ false, "not verified at q=" + std::to_string(q) +
                                                   " n=" + std::to_string(nq + dn) +
                                                   " beta=" + std::to_string(beta) };
                    if (!(rep.margin > 0))
                        return outcome{ false, "margin not positive at q=" + std::to_string(q) };
                    ++runs;
                }
        }
        return outcome{ true, std::to_string(runs) + " verifications" };
    });

    criterion("threshold orders for the benchmark ratios pin down exactly", 10.0, [] {
        if (threshold_order(0.1).n_q != 9)
            return outcome{ false, "expected 9 at q=0.1" };
        if (threshold_order(0.2).n_q != 10)
            return outcome{ false, "expected 10 at q=0.2" };
        // hand confirmation on both sides of each threshold
        if (!master_inequality(0.1, 9).holds)
            return outcome{ false, "q=0.1 should pass at its threshold" };
        if (master_inequality(0.2, 9).holds)
            return outcome{ false, "q=0.2 must still fail just below" };
        if (!master_inequality(0.2, 10).holds)
            return outcome{ false, "q=0.2 should pass at its threshold" };
        return outcome{ true, "" };
    });

    criterion("fundamental spline interpolates and differentiates consistently", 120.0, [] {
        using Real = real50;
        for (double q : { 0.1, 0.2 })
            for (int n : { 4, 8, 12 }) {
                const kernel_params<Real> p(Real(q), Real(0));
                const Real y = peak_point(p, n);
                const sk_spline<Real> s = build_fundamental_spline(p, n, y);
                const Real h = detail::pi_v<Real>() / n;
                for (int i = 0; i < 2 * n; ++i) {
                    const Real target = i == 0 ? Real(1) : Real(0);
                    const Real resid = fabs(s.value(y + Real(i) * h) - target);
                    if (!(resid < Real(1e-8)))
                        return outcome{ false, "interpolation residual at n=" + std::to_string(n) };
                }
                const std::vector<Real> formula = derivative_at_midpoints_direct(p, n, y);
                Real vmax(0);
                for (const Real& v : formula) {
                    const Real a = fabs(v);
                    if (a > vmax)
                        vmax = a;
                }
                for (int i = 0; i < 2 * n; ++i) {
                    const Real got = s.derivative_value(s.part.midpoints[i]);
                    const Real gap = fabs(got - formula[i]);
                    if (!(gap <= Real(1e-6) * vmax))
                        return outcome{ false, "derivative gap at n=" + std::to_string(n) };
                }
            }
        return outcome{ true, "6 configurations" };
    });

    criterion("remainder magnitudes obey their analytic envelopes", 60.0, [] {
        // the envelopes sit at q^{2n} and q^{3n}, far below the binary64
        // noise floor of the decomposition at these orders, so the whole
        // check runs in the 50-digit tier where every term is resolved
        using Real = real50;
        for (double q : { 0.1, 0.2, 0.3 })
            for (double beta : { 0.0, 0.5, 1.0, 1.5 })
                for (int n : { 9, 10, 12 }) {
                    const kernel_params<Real> p{ Real(q), Real(beta) };
                    const Real q2n = pow(p.q, 2 * n);
                    const Real r_budget = Real(37) / 18 * q2n / (1 - q2n);
                    const Real r0_budget = Real(8) / (3 * n) * pow(p.q, 3 * n) / (1 - q2n);
                    for (int j = 0; j < n; ++j) {
                        const lambda_decomposition<Real> d = decompose_lambda(p, n, j);
                        const Real r = detail::abs_value(d.r1 + d.r2 + d.r3);
                        if (j == 0 && !(r <= r0_budget))
                            return outcome{ false, "centre remainder over budget" };
                        if (j >= 1 && !(r <= r_budget))
                            return outcome{ false, "remainder over budget at j=" +
                                                       std::to_string(j) };
                        const Real big_r_slack = r + Real(1e-40); // rounding headroom only
                        if (!(fabs(d.big_r) <= big_r_slack))
                            return outcome{ false, "magnitude gap exceeds remainder" };
                        if (d.delta) {
                            const Real dj = fabs(*d.delta);
                            if (!(dj <= Real(4 * j) / (3 * (n - j))))
                                return outcome{ false, "relative gap envelope at j=" +
                                                           std::to_string(j) };
                        }
                    }
                }
        return outcome{ true, "36 configurations, all offsets" };
    });

    criterion("domination sweeps: small ratios everywhere, larger at threshold", 120.0, [] {
        for (int i = 1; i <= 64; ++i) {
            const double q = 0.36 * i / 64;
            for (long long n = 9; n <= 200; ++n)
                if (!condition_z(q, n).holds)
                    return outcome{ false, "small-ratio sweep failed at q=" + std::to_string(q) +
                                               " n=" + std::to_string(n) };
        }
        for (int i = 1; i <= 64; ++i) {
            const double q = 0.36 + (0.70 - 0.36) * i / 64;
            const nq_result<double> r = threshold_order(q);
            if (!r.at_nq.holds)
                return outcome{ false, "threshold order lost its own inequality" };
            if (!condition_z(q, r.n_q).holds)
                return outcome{ false, "domination fails at the threshold for q=" +
                                           std::to_string(q) };
        }
        return outcome{ true, "128 ratios" };
    });

    std::printf("%d of 12 criteria failed\n", failures);
    return failures;
}
