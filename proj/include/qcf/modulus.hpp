// The Grötzsch ring modulus mu(r) = (pi/2) K(r')/K(r), its signature-a
// generalization mu_a, their inverses, and the plane Grötzsch / Teichmüller
// capacities built on them.

#ifndef QCF_MODULUS_HPP
#define QCF_MODULUS_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "means.hpp"
#include "specfun.hpp"
#include "unit_radius.hpp"

namespace qcf
{

/// Signature parameter a of mu_a. Stored in (0, 1/2]; a and 1-a give the
/// same modulus, so a value in (1/2, 1) is folded.
template <std::floating_point Real>
class Signature
{
public:
    static Signature make(Real a)
    {
        if (!(a > 0 && a < 1)) {
            detail::domain_fail("Signature", "a must lie in (0,1)");
        }
        return Signature(std::min(a, 1 - a));
    }

    static Signature half() { return Signature(Real(1) / 2); }

    Real a() const { return a_; }

    /// pi / (2 sin(pi a)), the value of mu_a at r = 1/sqrt(2).
    Real symmetric_value() const
    {
        return std::numbers::pi_v<Real> / (2 * std::sin(std::numbers::pi_v<Real> * a_));
    }

    HypergeomParams<Real> params() const { return {a_, 1 - a_, Real(1)}; }

private:
    explicit Signature(Real a) : a_(a) {}
    Real a_;
};

inline constexpr int modulus_newton_cap = 100;

template <std::floating_point Real>
Real mu(const UnitRadius<Real> &u)
{
    return std::numbers::pi_v<Real> / 2 * agm(Real(1), u.complement()) / agm(Real(1), u.r());
}

template <std::floating_point Real>
Real mu(Real r)
{
    return mu(UnitRadius<Real>::from_r(r));
}

namespace detail
{

// Solve f(x) = y for strictly decreasing f on (lo, hi] subset (0, 1/sqrt2].
// eval(x) returns {f(x), g(x)} with g = -1/f'(x) > 0, so the Newton step is
// x + (f(x) - y) g(x). Steps leaving the bracket are replaced by the
// geometric midpoint.
template <std::floating_point Real, class Eval>
Real solve_decreasing(Real y, Real lo, Real hi, Real x, Eval &&eval, const char *where)
{
    constexpr Real eps = std::numeric_limits<Real>::epsilon();
    for (int guard = 0; guard < 200 && eval(lo).first < y; ++guard) {
        lo /= 2;
    }
    x = std::clamp(x, lo, hi);
    for (int it = 0; it < modulus_newton_cap; ++it) {
        const auto [fx, g] = eval(x);
        const Real residual = fx - y;
        if (residual == 0) {
            return x;
        }
        if (residual > 0) {
            lo = x;
        } else {
            hi = x;
        }
        Real next = x + residual * g;
        if (!(next > lo && next < hi)) {
            next = std::sqrt(lo) * std::sqrt(hi);
        }
        if (std::abs(next - x) <= 4 * eps * x || hi - lo <= 4 * eps * hi) {
            return next;
        }
        x = next;
    }
    throw ConvergenceError(std::string(where) + ": safeguarded Newton did not converge");
}

template <std::floating_point Real>
struct ModulusParts
{
    Real value;
    Real f_r2; // F(a,1-a;1;r^2)
};

template <std::floating_point Real>
ModulusParts<Real> mu_a_parts(const Signature<Real> &s, const UnitRadius<Real> &u)
{
    const auto p = s.params();
    const Real r2 = u.r() * u.r();
    const Real rc2 = u.complement() * u.complement();
    const Real near = gauss_F(p, r2, rc2);
    const Real far = gauss_F(p, rc2, r2);
    return {s.symmetric_value() * far / near, near};
}

// Above this value mu^{-1}(y) = 4 e^{-y} to full precision and only
// underflow remains to be handled.
template <std::floating_point Real>
inline constexpr Real asymptotic_modulus = Real(700);

template <std::floating_point Real>
Real tiny_radius(Real y)
{
    return std::max(4 * std::exp(-y), std::numeric_limits<Real>::denorm_min());
}

} // namespace detail

/// r with mu(r) = y. Safeguarded Newton from x0 = 1/cosh(y); values y below
/// pi/2 are reflected through mu(r) mu(r') = pi^2/4.
template <std::floating_point Real>
UnitRadius<Real> mu_inv(Real y)
{
    if (!(y > 0) || std::isnan(y)) {
        detail::domain_fail("mu_inv", "y must be positive");
    }
    constexpr Real half_pi = std::numbers::pi_v<Real> / 2;
    if (y < half_pi) {
        const Real reflected = half_pi * half_pi / y;
        if (!(reflected < detail::asymptotic_modulus<Real>)) {
            return UnitRadius<Real>::from_complement(detail::tiny_radius(reflected));
        }
        return UnitRadius<Real>::from_complement(mu_inv(reflected).r());
    }
    if (y >= detail::asymptotic_modulus<Real>) {
        return UnitRadius<Real>::from_r(detail::tiny_radius(y));
    }
    const Real lo = std::exp(-y);
    const Real hi = std::min(4 * std::exp(-y), std::numbers::sqrt2_v<Real> / 2);
    auto eval = [](Real x) {
        const auto u = UnitRadius<Real>::from_r(x);
        const Real ag = agm(Real(1), u.complement());
        return std::pair<Real, Real>{mu(u), x * u.complement() * u.complement() / (ag * ag)};
    };
    const Real x = detail::solve_decreasing(y, lo, hi, 1 / std::cosh(y), eval, "mu_inv");
    return UnitRadius<Real>::from_r(x);
}

/// Raw Newton iterates x_0 = 1/cosh(y), x_{n+1} = x_n + (mu(x_n) - y)(x_n - x_n^3)/AG(1,x_n')^2,
/// without safeguards. Stops when an iterate leaves (0,1) or the step stalls.
template <std::floating_point Real>
std::vector<Real> mu_inv_newton_trace(Real y, int max_iterations = 50)
{
    if (!(y > 0)) {
        detail::domain_fail("mu_inv_newton_trace", "y must be positive");
    }
    std::vector<Real> iterates{1 / std::cosh(y)};
    for (int n = 0; n < max_iterations; ++n) {
        const Real x = iterates.back();
        if (!(x > 0 && x < 1)) {
            break;
        }
        const auto u = UnitRadius<Real>::from_r(x);
        const Real ag = agm(Real(1), u.complement());
        const Real next = x + (mu(u) - y) * (x - x * x * x) / (ag * ag);
        iterates.push_back(next);
        if (!std::isfinite(next) || std::abs(next - x) <= 4 * std::numeric_limits<Real>::epsilon() * x) {
            break;
        }
    }
    return iterates;
}

/// mu_a(r) = pi/(2 sin(pi a)) F(a,1-a;1;r'^2) / F(a,1-a;1;r^2).
template <std::floating_point Real>
Real mu_a(const Signature<Real> &s, const UnitRadius<Real> &u)
{
    return detail::mu_a_parts(s, u).value;
}

/// d mu_a / dr = -1 / (r (1-r^2) F(a,1-a;1;r^2)^2).
template <std::floating_point Real>
Real mu_a_derivative(const Signature<Real> &s, const UnitRadius<Real> &u)
{
    const Real f = gauss_F(s.params(), u.r() * u.r(), u.complement() * u.complement());
    return -1 / (u.r() * u.complement() * u.complement() * f * f);
}

template <std::floating_point Real>
UnitRadius<Real> mu_a_inv(const Signature<Real> &s, Real y)
{
    if (!(y > 0) || std::isnan(y)) {
        detail::domain_fail("mu_a_inv", "y must be positive");
    }
    const Real center = s.symmetric_value();
    if (y < center) {
        const Real reflected = center * center / y;
        if (!(reflected < detail::asymptotic_modulus<Real>)) {
            return UnitRadius<Real>::from_complement(detail::tiny_radius(reflected));
        }
        return UnitRadius<Real>::from_complement(mu_a_inv(s, reflected).r());
    }
    const Real hi = std::numbers::sqrt2_v<Real> / 2;
    const Real lo = std::min(std::exp(-y), hi / 2);
    auto eval = [&s](Real x) {
        const auto u = UnitRadius<Real>::from_r(x);
        const auto parts = detail::mu_a_parts(s, u);
        return std::pair<Real, Real>{parts.value, x * u.complement() * u.complement() * parts.f_r2 * parts.f_r2};
    };
    const Real start = 1 / std::cosh(2 * y * std::sin(std::numbers::pi_v<Real> * s.a()) / std::numbers::pi_v<Real>);
    const Real x = detail::solve_decreasing(y, lo, hi, start, eval, "mu_a_inv");
    return UnitRadius<Real>::from_r(x);
}

/// gamma_2(s) = 2 pi / mu(1/s), s > 1.
template <std::floating_point Real>
Real grotzsch_gamma2(Real s)
{
    if (!(s > 1) || !std::isfinite(s)) {
        detail::domain_fail("grotzsch_gamma2", "s must exceed 1");
    }
    const auto u = UnitRadius<Real>::from_pair(1 / s, std::sqrt((s - 1) * (s + 1)) / s);
    return 2 * std::numbers::pi_v<Real> / mu(u);
}

/// tau_2(t) = gamma_2(sqrt(t+1)) / 2.
template <std::floating_point Real>
Real teichmuller_tau2(Real t)
{
    if (!(t > 0) || !std::isfinite(t)) {
        detail::domain_fail("teichmuller_tau2", "t must be positive");
    }
    const Real root = std::sqrt(1 + t);
    const auto u = UnitRadius<Real>::from_pair(1 / root, std::sqrt(t) / root);
    return std::numbers::pi_v<Real> / mu(u);
}

/// tau_2^{-1}(y) = 1/mu^{-1}(pi/y)^2 - 1.
template <std::floating_point Real>
Real teichmuller_tau2_inv(Real y)
{
    if (!(y > 0) || !std::isfinite(y)) {
        detail::domain_fail("teichmuller_tau2_inv", "y must be positive");
    }
    const auto u = mu_inv(std::numbers::pi_v<Real> / y);
    const Real q = u.complement() / u.r();
    return q * q;
}

/// p = prod_{n>=0} (1 + r_n)^(2^-n), r_0 = r', r_n = 2 sqrt(r_{n-1}) / (1 + r_{n-1}).
template <std::floating_point Real>
Real agm_product_p(const UnitRadius<Real> &u)
{
    Real rn = u.complement();
    Real weight = 1;
    Real log_p = 0;
    for (int n = 0; n <= agm_iteration_cap; ++n) {
        if (1 - rn < Real(1e-16) || n == agm_iteration_cap) {
            // Remaining factors are 2^(2^-k), k >= n.
            log_p += 2 * weight * std::numbers::ln2_v<Real>;
            break;
        }
        log_p += weight * std::log1p(rn);
        rn = 2 * std::sqrt(rn) / (1 + rn);
        weight /= 2;
    }
    return std::exp(log_p);
}

} // namespace qcf

#endif
