#pragma once

#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>

#include "errors.hpp"

namespace poisson_widths {

// Truncation policy shared by all series in the library. A sum may stop
// after K terms only when the analytic geometric tail bound, scaled by the
// series' coefficient envelope, is below eps/2.
template <typename Real>
struct series_budget {
    Real eps;
    int max_terms;
};

template <typename Real>
series_budget<Real> default_budget()
{
    // two digits of headroom over the type's epsilon
    return { Real(100) * std::numeric_limits<Real>::epsilon(), 400000 };
}

namespace detail {

template <typename Real>
Real pi_v() { return boost::math::constants::pi<Real>(); }

template <typename Real>
Real half_pi_v() { return boost::math::constants::half_pi<Real>(); }

// Smallest normal value of the active type; q^n at or below this is treated
// as an underflow of the precision floor.
template <typename Real>
Real precision_floor() { return (std::numeric_limits<Real>::min)(); }

// Minimal complex pair. std::complex is only specified for builtin floats,
// and the multiprecision backends need the same handful of operations, so
// we carry re/im explicitly.
template <typename Real>
struct cplx {
    Real re{}, im{};

    cplx() = default;
    cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    cplx& operator+=(const cplx& o) { re += o.re; im += o.im; return *this; }
    cplx& operator-=(const cplx& o) { re -= o.re; im -= o.im; return *this; }
    friend cplx operator+(cplx a, const cplx& b) { a += b; return a; }
    friend cplx operator-(cplx a, const cplx& b) { a -= b; return a; }
    friend cplx operator*(const cplx& a, const cplx& b)
    {
        return { a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re };
    }
    friend cplx operator*(const Real& s, cplx a) { a.re *= s; a.im *= s; return a; }
};

template <typename Real>
cplx<Real> unit(const Real& angle)
{
    using std::cos; using std::sin;
    return { cos(angle), sin(angle) };
}

template <typename Real>
cplx<Real> conj(cplx<Real> z) { z.im = -z.im; return z; }

template <typename Real>
Real abs_value(const cplx<Real>& z)
{
    using std::sqrt;
    return sqrt(z.re * z.re + z.im * z.im);
}

template <typename Real>
Real arg_value(const cplx<Real>& z)
{
    using std::atan2;
    return atan2(z.im, z.re);
}

// Tracks (cos, sin)(base + j * step) across j = 0, 1, 2, ... with the
// two-multiply rotation recurrence, reseeding from the libm functions every
// 256 steps so rotation drift never accumulates past a few ulp.
template <typename Real>
class rotator {
public:
    rotator(const Real& base, const Real& step)
        : base_(base), step_(step)
    {
        using std::cos; using std::sin;
        cs_ = cos(step); ss_ = sin(step);
        c_ = cos(base); s_ = sin(base);
    }

    const Real& cosv() const { return c_; }
    const Real& sinv() const { return s_; }

    void advance()
    {
        ++j_;
        if (++since_seed_ == 256) {
            using std::cos; using std::sin;
            const Real a = base_ + Real(j_) * step_;
            c_ = cos(a); s_ = sin(a);
            since_seed_ = 0;
            return;
        }
        const Real c = c_ * cs_ - s_ * ss_;
        s_ = s_ * cs_ + c_ * ss_;
        c_ = c;
    }

private:
    Real base_, step_, c_, s_, cs_, ss_;
    long j_ = 0;
    int since_seed_ = 0;
};

} // namespace detail
} // namespace poisson_widths
