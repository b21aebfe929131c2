#pragma once

#include <stdexcept>
#include <string>

namespace poisson_widths {

// Base class for every failure the numerical layer can raise. Catching this
// is enough to map any computation error onto a CLI status.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// A series truncation could not reach the requested tail bound within the
// configured maximum number of terms.
class budget_exceeded : public numeric_error {
public:
    budget_exceeded(const std::string& where, long terms)
        : numeric_error(where + ": series tail not below budget after " +
                        std::to_string(terms) + " terms"),
          terms_used(terms) {}
    long terms_used;
};

// q^n (or a quantity of that scale) fell below the smallest normal value of
// the active floating type; results would be zero or meaningless.
class precision_underflow : public numeric_error {
public:
    explicit precision_underflow(const std::string& what) : numeric_error(what) {}
};

// The threshold scan passed its configured cap without satisfying the master
// inequality. `analytic_lower_bound` is the closed-form bound on n that the
// inequality implies, reported so callers can still say something useful.
class iteration_cap_exceeded : public numeric_error {
public:
    iteration_cap_exceeded(long long cap_, double analytic_lower_bound_)
        : numeric_error("threshold scan exceeded cap n=" + std::to_string(cap_)),
          cap(cap_), analytic_lower_bound(analytic_lower_bound_) {}
    long long cap;
    double analytic_lower_bound;
};

// Bisection could not bracket a sign change; indicates a malformed phase
// equation rather than a tolerance problem.
class root_bracket_failure : public numeric_error {
public:
    explicit root_bracket_failure(const std::string& what) : numeric_error(what) {}
};

// sin(n y0 - beta pi/2) vanished numerically. Theory keeps it away from
// zero, so this means the inputs put us outside the supported regime.
class degenerate_phase : public numeric_error {
public:
    explicit degenerate_phase(const std::string& what) : numeric_error(what) {}
};

// A lambda multiplier fell below the singularity floor; the interpolation
// problem is numerically rank deficient at this precision.
class near_singular : public numeric_error {
public:
    explicit near_singular(const std::string& what) : numeric_error(what) {}
};

// The collocation solve lost too much pivot magnitude to be trusted.
class ill_conditioned : public numeric_error {
public:
    ill_conditioned(const std::string& what, double condition_estimate_)
        : numeric_error(what), condition_estimate(condition_estimate_) {}
    double condition_estimate;
};

} // namespace poisson_widths
