// Arithmetic, geometric, logarithmic and arithmetic-geometric means, their
// power modifications M_t(x,y) = M(x^t, y^t)^(1/t), and the complete elliptic
// integral K(r) = pi / (2 AG(1, r')).

#ifndef QCF_MEANS_HPP
#define QCF_MEANS_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>

#include "errors.hpp"
#include "unit_radius.hpp"

namespace qcf
{

enum class MeanKind { Arithmetic, Geometric, Logarithmic, ArithmeticGeometric };

template <std::floating_point Real>
struct PowerModification
{
    Real t;
};

inline constexpr int agm_iteration_cap = 60;

namespace detail
{

template <std::floating_point Real>
void check_mean_args(const char *where, Real x, Real y)
{
    if (!(x > 0) || !(y > 0) || !std::isfinite(x) || !std::isfinite(y)) {
        domain_fail(where, "arguments must be positive and finite");
    }
}

} // namespace detail

template <std::floating_point Real>
Real agm(Real x, Real y)
{
    detail::check_mean_args("agm", x, y);
    Real a = std::max(x, y);
    Real b = std::min(x, y);
    const Real tol = std::max(Real(1e-16), 2 * std::numeric_limits<Real>::epsilon());
    for (int n = 0; n < agm_iteration_cap; ++n) {
        if (a - b <= tol * a) {
            return (a + b) / 2;
        }
        const Real next_a = (a + b) / 2;
        b = std::sqrt(a * b);
        a = next_a;
    }
    throw ConvergenceError("agm: iteration cap reached");
}

template <std::floating_point Real>
Real mean(MeanKind kind, Real x, Real y)
{
    detail::check_mean_args("mean", x, y);
    switch (kind) {
    case MeanKind::Arithmetic:
        return (x + y) / 2;
    case MeanKind::Geometric:
        return std::sqrt(x) * std::sqrt(y);
    case MeanKind::Logarithmic:
        if (x == y) {
            return x;
        } else {
            const Real lo = std::min(x, y);
            const Real gap = std::max(x, y) - lo;
            return gap / std::log1p(gap / lo);
        }
    case MeanKind::ArithmeticGeometric:
        return agm(x, y);
    }
    return std::numeric_limits<Real>::quiet_NaN();
}

template <std::floating_point Real>
Real mean_mod(MeanKind kind, PowerModification<Real> t, Real x, Real y)
{
    detail::check_mean_args("mean_mod", x, y);
    if (!(t.t > 0) || !std::isfinite(t.t)) {
        detail::domain_fail("mean_mod", "exponent t must be positive");
    }
    if (kind == MeanKind::Geometric) {
        return mean(kind, x, y);
    }
    return std::pow(mean(kind, std::pow(x, t.t), std::pow(y, t.t)), 1 / t.t);
}

/// K evaluated from a UnitRadius, using its complement directly.
template <std::floating_point Real>
Real ellint_K(const UnitRadius<Real> &u)
{
    return std::numbers::pi_v<Real> / (2 * agm(Real(1), u.complement()));
}

template <std::floating_point Real>
Real ellint_K(Real r)
{
    if (r == 1) {
        throw OverflowError("ellint_K: diverges at r = 1");
    }
    if (!(r >= 0 && r < 1)) {
        detail::domain_fail("ellint_K", "r must lie in [0,1)");
    }
    if (r == 0) {
        return std::numbers::pi_v<Real> / 2;
    }
    return ellint_K(UnitRadius<Real>::from_r(r));
}

/// K(r') for r in (0,1].
template <std::floating_point Real>
Real ellint_Kprime(Real r)
{
    if (r == 0) {
        throw OverflowError("ellint_Kprime: diverges at r = 0");
    }
    if (!(r > 0 && r <= 1)) {
        detail::domain_fail("ellint_Kprime", "r must lie in (0,1]");
    }
    if (r == 1) {
        return std::numbers::pi_v<Real> / 2;
    }
    return std::numbers::pi_v<Real> / (2 * agm(Real(1), r));
}

} // namespace qcf

#endif
