// Hersch–Pfluger distortion phi_K(r) = mu^{-1}(mu(r)/K), its signature-a
// analog, Agard's quasisymmetry function eta_{K,2}, the linear dilatation
// bound lambda(K), the Schottky function, and the logit linearization of phi_K.

#ifndef QCF_DISTORTION_HPP
#define QCF_DISTORTION_HPP

#include <cmath>
#include <concepts>
#include <limits>

#include "errors.hpp"
#include "modulus.hpp"
#include "unit_radius.hpp"

namespace qcf
{

/// Maximal dilatation K >= 1.
template <std::floating_point Real>
class Dilatation
{
public:
    static Dilatation make(Real k)
    {
        if (!(k >= 1) || !std::isfinite(k)) {
            detail::domain_fail("Dilatation", "K must be finite and at least 1");
        }
        return Dilatation(k);
    }

    Real value() const { return k_; }

private:
    explicit Dilatation(Real k) : k_(k) {}
    Real k_;
};

/// phi_K(r) for any K > 0; K < 1 gives the inverse map phi_{1/K}^{-1}.
template <std::floating_point Real>
UnitRadius<Real> phi_K(Real k, const UnitRadius<Real> &u)
{
    if (!(k > 0) || !std::isfinite(k)) {
        detail::domain_fail("phi_K", "K must be positive and finite");
    }
    if (k == 1) {
        return u;
    }
    return mu_inv(mu(u) / k);
}

template <std::floating_point Real>
UnitRadius<Real> phi_K(const Dilatation<Real> &k, const UnitRadius<Real> &u)
{
    return phi_K(k.value(), u);
}

/// phi^a_K(r) = mu_a^{-1}(mu_a(r)/K).
template <std::floating_point Real>
UnitRadius<Real> phi_aK(const Signature<Real> &s, Real k, const UnitRadius<Real> &u)
{
    if (!(k > 0) || !std::isfinite(k)) {
        detail::domain_fail("phi_aK", "K must be positive and finite");
    }
    if (k == 1) {
        return u;
    }
    return mu_a_inv(s, mu_a(s, u) / k);
}

namespace detail
{

// u^2 / (1 - u^2) for u = phi_K(sqrt(t/(1+t))); the complement of phi carries 1 - u^2.
template <std::floating_point Real>
Real quasisymmetry_ratio(Real k, Real t, const char *where)
{
    if (!(t >= 0) || !std::isfinite(t)) {
        domain_fail(where, "t must be non-negative and finite");
    }
    if (t == 0) {
        return 0;
    }
    const Real root = std::sqrt(1 + t);
    const auto arg = UnitRadius<Real>::from_pair(std::sqrt(t) / root, 1 / root);
    const auto u = phi_K(k, arg);
    const Real q = u.r() / u.complement();
    const Real value = q * q;
    if (!std::isfinite(value) || u.complement() < std::numeric_limits<Real>::min()) {
        throw OverflowError(std::string(where) + ": value overflows");
    }
    return value;
}

} // namespace detail

/// eta_{K,2}(t) = u^2/(1-u^2), u = phi_K(sqrt(t/(1+t))).
template <std::floating_point Real>
Real eta_K2(const Dilatation<Real> &k, Real t)
{
    return detail::quasisymmetry_ratio(k.value(), t, "eta_K2");
}

/// lambda(K) = eta_{K,2}(1).
template <std::floating_point Real>
Real lambda_of_K(const Dilatation<Real> &k)
{
    return detail::quasisymmetry_ratio(k.value(), Real(1), "lambda_of_K");
}

/// psi(r,t) = eta_{M,2}(t), M = (1+r)/(1-r).
template <std::floating_point Real>
Real schottky_psi(Real r, Real t)
{
    if (!(r >= 0 && r < 1)) {
        detail::domain_fail("schottky_psi", "r must lie in [0,1)");
    }
    if (!(t > 0)) {
        detail::domain_fail("schottky_psi", "t must be positive");
    }
    return detail::quasisymmetry_ratio((1 + r) / (1 - r), t, "schottky_psi");
}

namespace detail
{

// q(x) = e^x/(1+e^x) as a UnitRadius, complement from 1-q without cancellation.
template <std::floating_point Real>
UnitRadius<Real> logistic_radius(Real x)
{
    const Real e = std::exp(-std::abs(x));
    const Real q = x >= 0 ? 1 / (1 + e) : e / (1 + e);
    const Real one_minus_q = x >= 0 ? e / (1 + e) : 1 / (1 + e);
    return UnitRadius<Real>::from_pair(q, std::sqrt(one_minus_q * (1 + q)));
}

// p(v) = log(v/(1-v)) with 1 - v = v'^2/(1+v).
template <std::floating_point Real>
Real logit(const UnitRadius<Real> &v)
{
    const Real rc = v.complement();
    return std::log(v.r()) - (2 * std::log(rc) - std::log1p(v.r()));
}

} // namespace detail

/// g(x) = p(phi_K(q(x))), p(v) = log(v/(1-v)), q = p^{-1}.
template <std::floating_point Real>
Real linearized_g(const Dilatation<Real> &k, Real x)
{
    if (!std::isfinite(x)) {
        detail::domain_fail("linearized_g", "x must be finite");
    }
    return detail::logit(phi_K(k, detail::logistic_radius(x)));
}

/// The same construction for phi^a_K.
template <std::floating_point Real>
Real linearized_g_a(const Signature<Real> &s, const Dilatation<Real> &k, Real x)
{
    if (!std::isfinite(x)) {
        detail::domain_fail("linearized_g_a", "x must be finite");
    }
    return detail::logit(phi_aK(s, k.value(), detail::logistic_radius(x)));
}

} // namespace qcf

#endif
