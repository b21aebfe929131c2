// Runs the interpolation sign-condition check just past the certified
// threshold and prints the margin bookkeeping.

#include <iostream>

#include <poisson_widths/poisson_widths.hpp>

int main()
{
    using namespace poisson_widths;

    const double q = 0.1;
    const kernel_params<double> p(q, 0.5);
    const nq_result<double> nq = threshold_order(q);
    std::cout << "q = " << q << ", beta = 0.5: threshold order n_q = " << nq.n_q << "\n\n";

    for (int n : { nq.n_q, nq.n_q + 3 }) {
        const condition_report<double> rep = verify_condition(p, n);
        std::cout << "n = " << n << ": " << verdict_name(rep.verdict)
                  << ", epsilon = " << rep.epsilon_sign << ", margin = " << rep.margin << "\n";
        std::cout << "  heat term floor " << rep.heat_min << ", correction stack";
        for (const double& g : rep.gamma.max_abs)
            std::cout << " " << g;
        std::cout << "\n  midpoint derivative signs:";
        for (const double& v : rep.midpoint_values)
            std::cout << (v > 0 ? " +" : " -");
        std::cout << "\n\n";
    }
    return 0;
}
