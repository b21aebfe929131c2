#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <poisson_widths/poisson_widths.hpp>

using namespace poisson_widths;

namespace {
constexpr double pi = 3.141592653589793238462643;
}

TEST_CASE("partition nodes and midpoints interleave", "[skspline]")
{
    const partition_points<double> part = make_partition<double>(3);
    REQUIRE(part.nodes.size() == 7);
    REQUIRE(part.midpoints.size() == 6);
    for (int i = 0; i < 6; ++i) {
        CHECK(part.nodes[i] < part.midpoints[i]);
        CHECK(part.midpoints[i] < part.nodes[i + 1]);
    }
    CHECK(part.nodes[6] == Catch::Approx(2 * pi).margin(1e-15));
}

TEST_CASE("multiplier average and aliased series agree", "[skspline]")
{
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> uq(0.15, 0.8), ub(0.0, 2.0), uy(0.0, 2 * pi);
    for (int trial = 0; trial < 40; ++trial) {
        const double q = uq(rng);
        const kernel_params<double> p(q, ub(rng));
        const int n = 1 + int(rng() % 8);
        const int l = 1 + int(rng() % n);
        const double y = uy(rng);
        const detail::cplx<double> a = lambda_direct(p, n, l, y);
        const detail::cplx<double> b = lambda_fourier(p, n, l, y);
        // the average form carries an absolute error floor of roughly
        // eps * (summand size), independent of how small q^l/l gets
        const double scale = std::pow(q, l) / l;
        CHECK(std::fabs(a.re - b.re) < 1e-13 + 1e-9 * scale);
        CHECK(std::fabs(a.im - b.im) < 1e-13 + 1e-9 * scale);
    }
}

TEST_CASE("multiplier at the top harmonic keeps both aliases", "[skspline]")
{
    // lambda_n pairs k = n with k = -n: at the peak of an even-beta kernel the
    // two add to exactly twice the main term
    const kernel_params<double> p(0.1, 0.0);
    const int n = 9;
    const double y0 = peak_point(p, n);
    const detail::cplx<double> lam = lambda_fourier(p, n, n, y0);
    const double main = 2 * std::pow(0.1, 9) / 9;
    CHECK(detail::abs_value(lam) == Catch::Approx(main).epsilon(1e-10));
}

TEST_CASE("multiplier decomposition reassembles the multiplier", "[skspline]")
{
    for (double q : { 0.2, 0.4 })
        for (double beta : { 0.0, 0.7, 1.5 })
            for (int n : { 5, 9 }) {
                const kernel_params<double> p(q, beta);
                const double y0 = peak_point(p, n);
                for (int j = 0; j < n; ++j) {
                    const lambda_decomposition<double> d = decompose_lambda(p, n, j);
                    const double sgn = d.sign_index == 0 ? 1.0 : -1.0;
                    detail::cplx<double> sum{ sgn * d.main_term + d.r1.re + d.r2.re + d.r3.re,
                                              d.r1.im + d.r2.im + d.r3.im };
                    const detail::cplx<double> rot = detail::unit(-double(j) * y0);
                    const detail::cplx<double> rebuilt = rot * sum;
                    CHECK(rebuilt.re == Catch::Approx(d.lambda.re).margin(1e-15 + 1e-10 * d.main_term));
                    CHECK(rebuilt.im == Catch::Approx(d.lambda.im).margin(1e-15 + 1e-10 * d.main_term));
                    CHECK(std::fabs(d.big_r) <=
                          detail::abs_value(d.r1 + d.r2 + d.r3) + 1e-15);
                    if (j == 0) {
                        CHECK(d.r2.re == 0.0);
                        CHECK(d.r2.im == 0.0);
                    }
                }
            }
}

TEST_CASE("derivative representations agree at certified scale", "[skspline]")
{
    const kernel_params<double> p(0.2, 0.5);
    const int n = 10;
    const double y0 = peak_point(p, n);
    const std::vector<double> direct = derivative_at_midpoints_direct(p, n, y0);
    const heat_form_derivatives<double> heat = derivative_at_midpoints_heat_form(p, n);
    REQUIRE(direct.size() == heat.values.size());
    for (std::size_t i = 0; i < direct.size(); ++i)
        CHECK(heat.values[i] == Catch::Approx(direct[i]).epsilon(1e-9));
}

TEST_CASE("derivative representations agree at tiny orders", "[skspline]")
{
    // n < 4 exercises the clamped split of the correction ladder
    for (int n : { 1, 2, 3 })
        for (double beta : { 0.0, 0.7, 1.0 }) {
            const kernel_params<double> p(0.5, beta);
            const double y0 = peak_point(p, n);
            const std::vector<double> direct = derivative_at_midpoints_direct(p, n, y0);
            const heat_form_derivatives<double> heat = derivative_at_midpoints_heat_form(p, n);
            for (std::size_t i = 0; i < direct.size(); ++i)
                CHECK(heat.values[i] == Catch::Approx(direct[i]).epsilon(1e-9));
        }
}

TEST_CASE("sign condition verifies past the threshold", "[skspline]")
{
    const kernel_params<double> p(0.1, 0.25);
    const condition_report<double> rep = verify_condition(p, 9);
    CHECK(rep.verdict == condition_verdict::verified);
    CHECK(rep.margin > 0);
    CHECK((rep.epsilon_sign == 1 || rep.epsilon_sign == -1));
    REQUIRE(rep.midpoint_values.size() == 18);
    for (std::size_t i = 0; i < 18; ++i) {
        CHECK(rep.e_flags[i]);
        const double expect = rep.epsilon_sign * (i % 2 == 0 ? 1.0 : -1.0);
        CHECK(rep.midpoint_values[i] * expect > 0);
    }
}

TEST_CASE("sign condition reports correction magnitudes", "[skspline]")
{
    const kernel_params<double> p(0.1, 0.0);
    const condition_report<double> rep = verify_condition(p, 9);
    double total = 0;
    for (const double& g : rep.gamma.max_abs)
        total += g;
    CHECK(rep.gamma.total == Catch::Approx(total).margin(1e-15));
    CHECK(rep.margin == Catch::Approx(rep.heat_min - rep.gamma.total).margin(1e-15));
    CHECK(rep.gamma.total < master_inequality(0.1, 9).lhs);
}

TEST_CASE("sawtooth derivative kernel is mean zero and 2 pi periodic", "[skspline]")
{
    CHECK(sawtooth_mean_zero(0.5) == Catch::Approx((pi - 0.5) / 2).margin(1e-15));
    CHECK(sawtooth_mean_zero(0.5 + 2 * pi) == Catch::Approx((pi - 0.5) / 2).margin(1e-13));
    // integral over a period vanishes: trapezoid on the open interval
    double acc = 0;
    for (int i = 1; i < 4096; ++i)
        acc += sawtooth_mean_zero(2 * pi * i / 4096);
    CHECK(std::fabs(acc / 4096) < 1e-3);
}

TEST_CASE("fundamental spline interpolates the delta", "[skspline]")
{
    const kernel_params<double> p(0.2, 0.0);
    const int n = 4;
    const double y = peak_point(p, n);
    const sk_spline<double> s = build_fundamental_spline(p, n, y);
    REQUIRE(s.alpha.size() == 8);
    double alpha_sum = 0;
    for (const double& a : s.alpha)
        alpha_sum += a;
    CHECK(std::fabs(alpha_sum) < 1e-9);
    for (int i = 0; i < 2 * n; ++i) {
        const double target = i == 0 ? 1.0 : 0.0;
        CHECK(s.value(y + i * pi / n) == Catch::Approx(target).margin(1e-9));
    }
}

TEST_CASE("spline derivative matches the spectral formula", "[skspline]")
{
    const kernel_params<double> p(0.3, 0.6);
    const int n = 5;
    const double y = peak_point(p, n);
    const sk_spline<double> s = build_fundamental_spline(p, n, y);
    const std::vector<double> formula = derivative_at_midpoints_direct(p, n, y);
    for (int i = 0; i < 2 * n; ++i)
        CHECK(s.derivative_value(s.part.midpoints[i]) ==
              Catch::Approx(formula[i]).epsilon(1e-8));
}

TEST_CASE("spline build refuses a singular multiplier stack", "[skspline]")
{
    // q^n sits far below the binary64 singularity floor here
    const kernel_params<double> p(0.5, 0.0);
    CHECK_THROWS_AS(build_fundamental_spline(p, 400, 0.001), numeric_error);
}

TEST_CASE("ill conditioning is reported, not silently absorbed", "[skspline]")
{
    // binary64 backward error cannot meet the interpolation gate here; the
    // same build goes through cleanly with 50 digits
    const kernel_params<double> p(0.1, 0.0);
    const double y = peak_point(p, 12);
    CHECK_THROWS_AS(build_fundamental_spline(p, 12, y), numeric_error);

    const kernel_params<real50> pw(real50("0.1"), real50(0));
    const real50 yw = peak_point(pw, 12);
    const sk_spline<real50> sw = build_fundamental_spline(pw, 12, yw);
    CHECK(sw.alpha.size() == 24);
}
