#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace poisson_widths {

// Floating families the library is instantiated for. cpp_bin_float keeps a
// 32-bit binary exponent, so even q^n at n ~ 10^6 stays a normal number in
// the extended tiers.
using real64 = double;
using real50 = boost::multiprecision::cpp_bin_float_50;
using real100 = boost::multiprecision::cpp_bin_float_100;
using real200 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;

enum class precision_tier { standard64, extended50, extended100, extended200 };

inline const char* tier_name(precision_tier t)
{
    switch (t) {
    case precision_tier::standard64:  return "standard64";
    case precision_tier::extended50:  return "extended:50";
    case precision_tier::extended100: return "extended:100";
    case precision_tier::extended200: return "extended:200";
    }
    return "standard64";
}

// Requests are rounded up to the next available tier so the active type
// always carries at least the requested number of decimal digits.
inline precision_tier tier_for_digits(int digits)
{
    if (digits <= 0)
        throw std::invalid_argument("extended precision requires a positive digit count");
    if (digits <= 50) return precision_tier::extended50;
    if (digits <= 100) return precision_tier::extended100;
    if (digits <= 200) return precision_tier::extended200;
    throw std::invalid_argument("extended precision above 200 digits is not built in");
}

// Kernel-side escalation rule: once q^{3n} drops below 1e-280, binary64 has
// no room left under the terms the width series needs.
inline bool wants_extended_for_order(double q, long long n)
{
    return 3.0 * double(n) * std::log10(q) < -280.0;
}

// Threshold-side escalation rule: the lower-bound side of the master
// inequality collapses like ((1-q)/(1+q))^{4/(1-q^2)} as q -> 1.
inline bool wants_extended_for_ratio(double q)
{
    const double log10_rhs = 4.0 / (1.0 - q * q) * std::log10((1.0 - q) / (1.0 + q));
    return log10_rhs < -280.0;
}

// Collocation-side escalation rule: the interpolation matrix has condition
// of order n/q^n, so the binary64 backward error eps * n^2 / q^n crosses the
// 1e-8 residual gate well before anything underflows.
inline bool wants_extended_for_collocation(double q, long long n)
{
    return double(n) * std::log10(q) < 8.0 + std::log10(2.2e-16) + 2.0 * std::log10(double(n));
}

// Invokes f with a std::type_identity tag for the tier's floating type.
template <typename F>
decltype(auto) with_tier(precision_tier t, F&& f)
{
    switch (t) {
    case precision_tier::extended50:  return f(std::type_identity<real50>{});
    case precision_tier::extended100: return f(std::type_identity<real100>{});
    case precision_tier::extended200: return f(std::type_identity<real200>{});
    case precision_tier::standard64:  break;
    }
    return f(std::type_identity<real64>{});
}

} // namespace poisson_widths
