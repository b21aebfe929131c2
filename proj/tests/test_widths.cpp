#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <poisson_widths/poisson_widths.hpp>

using namespace poisson_widths;

namespace {
constexpr double pi = 3.141592653589793238462643;
}

TEST_CASE("phase root at even beta is one half", "[widths]")
{
    for (double q : { 0.1, 0.5, 0.9 })
        for (double beta : { 0.0, 2.0, -4.0 }) {
            const kernel_params<double> p(q, beta);
            for (int n : { 1, 3, 7 }) {
                const phase_root_result<double> r = phase_root(p, n);
                CHECK(r.theta == Catch::Approx(0.5).margin(1e-14));
                CHECK(std::fabs(r.residual) < 1e-12);
            }
        }
}

TEST_CASE("phase root at odd beta is zero", "[widths]")
{
    for (double q : { 0.2, 0.7 })
        for (double beta : { 1.0, 3.0, -1.0 }) {
            const kernel_params<double> p(q, beta);
            const phase_root_result<double> r = phase_root(p, 4);
            CHECK(r.theta == 0.0);
        }
}

TEST_CASE("phase root solves its equation across beta", "[widths]")
{
    const double qn = std::pow(0.3, 4);
    for (double beta = 0.0; beta < 2.0; beta += 0.13) {
        const kernel_params<double> p(0.3, beta);
        const phase_root_result<double> r = phase_root(p, 4);
        CHECK(r.theta >= 0.0);
        CHECK(r.theta < 1.0);
        // residual scale is q^n, so hold it against that
        CHECK(std::fabs(r.residual) < 1e-12 * qn + 1e-15);
    }
}

TEST_CASE("phase root reference value", "[widths]")
{
    const kernel_params<double> p(0.3, 0.7);
    const phase_root_result<double> r = phase_root(p, 4);
    CHECK(r.theta == Catch::Approx(0.8500168951114575880903309).epsilon(1e-14));
    CHECK(r.method == root_method::closed_form);
}

TEST_CASE("closed form and bisection find the same root", "[widths]")
{
    const kernel_params<double> p(0.45, 0.33);
    const phase_root_result<double> r = phase_root(p, 3);
    const double bis = detail::phase_root_bisect(p, 3, default_budget<double>());
    CHECK(r.theta == Catch::Approx(bis).margin(1e-12));
}

TEST_CASE("best approximation closed forms at integer beta", "[widths]")
{
    for (double q : { 0.1, 0.5, 0.9 })
        for (int n = 1; n <= 6; ++n) {
            const double qn = std::pow(q, n);
            const kernel_params<double> even(q, 0.0), odd(q, 1.0);
            const width_value<double> we = best_approximation(even, n);
            CHECK(we.value == Catch::Approx(4 / pi * std::atan(qn)).margin(1e-13));
            CHECK(we.tag == closed_form_tag::beta_even);
            const width_value<double> wo = best_approximation(odd, n);
            CHECK(wo.value == Catch::Approx(2 / pi * std::log((1 + qn) / (1 - qn))).margin(1e-13));
            CHECK(wo.tag == closed_form_tag::beta_odd);
        }
}

TEST_CASE("best approximation reference values", "[widths]")
{
    CHECK(best_approximation(kernel_params<double>(0.5, 0.0), 1).value ==
          Catch::Approx(0.5903344706017330967016043).epsilon(1e-14));
    CHECK(best_approximation(kernel_params<double>(0.5, 1.0), 1).value ==
          Catch::Approx(0.6993983051321195559949426).epsilon(1e-14));
    const width_value<double> w = best_approximation(kernel_params<double>(0.3, 0.7), 4);
    CHECK(w.value == Catch::Approx(0.01031337289943582679956864).epsilon(1e-13));
    CHECK(w.tag == closed_form_tag::general);
}

TEST_CASE("best approximation is even in beta around integers", "[widths]")
{
    // E_n depends on beta mod 2 and matches at reflected phases
    for (int n : { 1, 5 }) {
        const double a = best_approximation(kernel_params<double>(0.6, 0.4), n).value;
        const double b = best_approximation(kernel_params<double>(0.6, 2.4), n).value;
        const double c = best_approximation(kernel_params<double>(0.6, -1.6), n).value;
        CHECK(a == Catch::Approx(b).epsilon(1e-14));
        CHECK(a == Catch::Approx(c).epsilon(1e-14));
    }
}

TEST_CASE("best approximation decreases in the order", "[widths]")
{
    const kernel_params<double> p(0.7, 0.9);
    double prev = 1e300;
    for (int n = 1; n <= 10; ++n) {
        const double v = best_approximation(p, n).value;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("peak point lies in the first cell", "[widths]")
{
    for (double beta : { 0.0, 0.6, 1.3 }) {
        const kernel_params<double> p(0.25, beta);
        for (int n : { 1, 2, 9 }) {
            const double y0 = peak_point(p, n);
            CHECK(y0 >= 0.0);
            CHECK(y0 < pi / n);
        }
    }
}

TEST_CASE("width evaluation underflows loudly in binary64", "[widths]")
{
    const kernel_params<double> p(0.5, 0.25);
    CHECK_THROWS_AS(best_approximation(p, 2000), precision_underflow);
    const kernel_params<real50> pw(real50("0.5"), real50("0.25"));
    const width_value<real50> w = best_approximation(pw, 2000);
    CHECK(w.value > 0);
    CHECK(w.value < real50("1e-600"));
}
