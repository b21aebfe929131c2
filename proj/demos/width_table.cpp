// Prints the exact approximation numbers for a small grid of kernel ratios
// and orders, the kind of table the library exists to produce.

#include <iomanip>
#include <iostream>

#include <poisson_widths/poisson_widths.hpp>

int main()
{
    using namespace poisson_widths;

    std::cout << "E_n(q, beta): distance of the kernel class from order n-1 polynomials\n\n";
    std::cout << std::setw(6) << "q" << std::setw(6) << "beta" << std::setw(4) << "n"
              << std::setw(22) << "theta_n" << std::setw(22) << "E_n" << "\n";
    std::cout << std::setprecision(15);
    for (double q : { 0.1, 0.5, 0.9 })
        for (double beta : { 0.0, 0.5, 1.0 }) {
            const kernel_params<double> p(q, beta);
            for (int n = 1; n <= 4; ++n) {
                const width_value<double> w = best_approximation(p, n);
                std::cout << std::setw(6) << q << std::setw(6) << beta << std::setw(4) << n
                          << std::setw(22) << w.theta << std::setw(22) << w.value << "\n";
            }
        }

    std::cout << "\nsmallest certified order n_q for a few ratios\n\n";
    for (double q : { 0.1, 0.3, 0.5 }) {
        const nq_result<double> r = threshold_order(q);
        std::cout << "  q = " << q << "  n_q = " << r.n_q << "  (lhs " << r.at_nq.lhs << " vs rhs "
                  << r.at_nq.rhs << ")\n";
    }
    return 0;
}
