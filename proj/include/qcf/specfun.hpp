// Gamma-family functions and the Gaussian hypergeometric function F(a,b;c;x)
// on [0,1), including the zero-balanced (c = a+b) logarithmic boundary.

#ifndef QCF_SPECFUN_HPP
#define QCF_SPECFUN_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace qcf
{

/// Euler–Mascheroni constant, 30 significant digits.
template <std::floating_point Real>
inline constexpr Real euler_gamma_v = static_cast<Real>(0.577215664901532860606512090082L);

/// Direct summation is abandoned after this many terms.
inline constexpr std::size_t hypergeometric_term_cap = 2'000'000;

/// Above this argument F is evaluated through a connection formula in 1-x.
template <std::floating_point Real>
inline constexpr Real hypergeometric_connection_switch = Real(0.95);

template <std::floating_point Real>
struct HypergeomParams
{
    Real a;
    Real b;
    Real c;

    /// Checked construction: a, b > 0 and c not in {0, -1, -2, ...}.
    static HypergeomParams make(Real a, Real b, Real c)
    {
        if (!(a > 0) || !(b > 0)) {
            detail::domain_fail("HypergeomParams", "a and b must be positive");
        }
        if (!std::isfinite(c) || (c <= 0 && c == std::floor(c))) {
            detail::domain_fail("HypergeomParams", "c must not be a non-positive integer");
        }
        return {a, b, c};
    }
};

enum class BoundaryCase { A, B, C };

/// Behavior of F(a,b;c;r) as r -> 1.
///  A (c > a+b): constant = F(a,b;c;1).
///  B (c = a+b): constant = R(a,b), with B(a,b)F + log(1-r) -> R(a,b).
///  C (c < a+b): constant = D, with F ~ D (1-r)^{c-a-b}.
template <std::floating_point Real>
struct AsymptoticClass
{
    BoundaryCase kind;
    Real constant;
};

template <std::floating_point Real>
Real gamma_fn(Real x)
{
    if (!(x > 0)) {
        detail::domain_fail("gamma_fn", "argument must be positive");
    }
    const Real value = std::tgamma(x);
    if (!std::isfinite(value)) {
        throw OverflowError("gamma_fn: result overflows");
    }
    return value;
}

template <std::floating_point Real>
Real digamma_fn(Real x)
{
    if (!(x > 0) || !std::isfinite(x)) {
        detail::domain_fail("digamma_fn", "argument must be positive and finite");
    }
    Real shift = 0;
    while (x < Real(10)) {
        shift -= 1 / x;
        x += 1;
    }
    // Asymptotic series with Bernoulli coefficients B_{2k}/(2k).
    const Real inv = 1 / x;
    const Real inv2 = inv * inv;
    const Real tail = inv2 * (Real(1) / 12
                      - inv2 * (Real(1) / 120
                      - inv2 * (Real(1) / 252
                      - inv2 * (Real(1) / 240
                      - inv2 * (Real(1) / 132
                      - inv2 * (Real(691) / 32760
                      - inv2 / 12))))));
    return shift + std::log(x) - inv / 2 - tail;
}

template <std::floating_point Real>
Real beta_fn(Real a, Real b)
{
    if (!(a > 0) || !(b > 0)) {
        detail::domain_fail("beta_fn", "arguments must be positive");
    }
    if (a + b < Real(150)) {
        return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
    }
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

/// R(a,b) = -psi(a) - psi(b) - 2 gamma.
template <std::floating_point Real>
Real ramanujan_R(Real a, Real b)
{
    if (!(a > 0 && a < 1) || !(b > 0 && b < 1)) {
        detail::domain_fail("ramanujan_R", "a and b must lie in (0,1)");
    }
    return -digamma_fn(a) - digamma_fn(b) - 2 * euler_gamma_v<Real>;
}

namespace detail
{

template <std::floating_point Real>
bool nearly_integer(Real v, Real scale)
{
    return std::abs(v - std::round(v)) <= 64 * std::numeric_limits<Real>::epsilon() * std::max(Real(1), scale);
}

// 1/Gamma(x), zero at the poles.
template <std::floating_point Real>
Real rgamma(Real x)
{
    if (x <= 0 && x == std::floor(x)) {
        return 0;
    }
    return 1 / std::tgamma(x);
}

// Neumaier compensated accumulator.
template <std::floating_point Real>
struct CompensatedSum
{
    Real sum = 0;
    Real carry = 0;

    void add(Real v)
    {
        const Real t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }

    Real value() const { return sum + carry; }
};

// Term-ratio summation of the defining series; parameters unchecked.
template <std::floating_point Real>
Real series_2f1(Real a, Real b, Real c, Real x)
{
    constexpr Real eps = std::numeric_limits<Real>::epsilon();
    CompensatedSum<Real> acc;
    acc.add(1);
    Real term = 1;
    const Real settle = std::max({Real(0), -a, -b, -c});
    for (std::size_t n = 0; n < hypergeometric_term_cap; ++n) {
        const Real k = static_cast<Real>(n);
        const Real ratio = (a + k) * (b + k) / ((c + k) * (k + 1)) * x;
        term *= ratio;
        if (term == 0) {
            return acc.value();
        }
        acc.add(term);
        const Real q = std::max(std::abs(ratio), x);
        if (k + 1 > settle && q < 1 && std::abs(term) * q / (1 - q) <= eps / 2 * std::abs(acc.value())) {
            return acc.value();
        }
    }
    throw ConvergenceError("gauss_F: series did not converge within the term cap");
}

// c = a + b, a, b > 0:
// B(a,b) F = sum_k (a)_k (b)_k / k!^2 y^k [2psi(k+1) - psi(a+k) - psi(b+k) - log y],  y = 1-x.
template <std::floating_point Real>
Real zero_balanced_2f1(Real a, Real b, Real y)
{
    constexpr Real eps = std::numeric_limits<Real>::epsilon();
    const Real log_y = std::log(y);
    Real h = -2 * euler_gamma_v<Real> - digamma_fn(a) - digamma_fn(b);
    Real coeff = 1;
    CompensatedSum<Real> acc;
    acc.add(h - log_y);
    for (std::size_t k = 0; k < hypergeometric_term_cap; ++k) {
        const Real kk = static_cast<Real>(k);
        coeff *= (a + kk) * (b + kk) / ((kk + 1) * (kk + 1)) * y;
        h += 2 / (kk + 1) - 1 / (a + kk) - 1 / (b + kk);
        const Real term = coeff * (h - log_y);
        acc.add(term);
        if (std::abs(term) <= eps / 4 * std::abs(acc.value())) {
            return acc.value() / beta_fn(a, b);
        }
    }
    throw ConvergenceError("gauss_F: zero-balanced connection series did not converge");
}

// c = a + b + m, integer m >= 1, a + m > 0, b + m > 0.
template <std::floating_point Real>
Real integer_excess_2f1(Real a, Real b, int m, Real y)
{
    constexpr Real eps = std::numeric_limits<Real>::epsilon();
    const Real c = a + b + m;
    const Real mm = static_cast<Real>(m);

    CompensatedSum<Real> finite;
    Real coeff = 1;
    for (int k = 0; k < m; ++k) {
        finite.add(coeff);
        if (k + 1 < m) {
            const Real kk = static_cast<Real>(k);
            coeff *= (a + kk) * (b + kk) / ((kk + 1) * (1 - mm + kk)) * y;
        }
    }
    const Real lead = std::tgamma(mm) * std::tgamma(c) * rgamma(a + mm) * rgamma(b + mm);

    const Real log_y = std::log(y);
    // psi(k+1) + psi(k+m+1) - psi(a+k+m) - psi(b+k+m), updated by recurrence.
    Real psis = -euler_gamma_v<Real> + digamma_fn(mm + 1) - digamma_fn(a + mm) - digamma_fn(b + mm);
    Real t = 1 / std::tgamma(mm + 1);
    CompensatedSum<Real> log_part;
    log_part.add(t * (log_y - psis));
    for (std::size_t k = 0; k < hypergeometric_term_cap; ++k) {
        const Real kk = static_cast<Real>(k);
        t *= (a + mm + kk) * (b + mm + kk) / ((kk + 1) * (kk + mm + 1)) * y;
        psis += 1 / (kk + 1) + 1 / (kk + mm + 1) - 1 / (a + kk + mm) - 1 / (b + kk + mm);
        const Real term = t * (log_y - psis);
        log_part.add(term);
        if (std::abs(term) <= eps / 4 * std::abs(log_part.value())) {
            break;
        }
    }
    const Real sign = (m % 2 == 0) ? Real(1) : Real(-1);
    const Real tail = sign * std::pow(y, mm) * std::tgamma(c) * rgamma(a) * rgamma(b);
    return lead * finite.value() - tail * log_part.value();
}

// Evaluate F(a,b;c;x) for x in (0.95, 1), with y = 1 - x supplied exactly.
template <std::floating_point Real>
Real connection_2f1(Real a, Real b, Real c, Real x, Real y)
{
    const Real m = c - a - b;
    const Real scale = std::abs(a) + std::abs(b) + std::abs(c);
    if (std::abs(m) <= 64 * std::numeric_limits<Real>::epsilon() * std::max(Real(1), scale)) {
        if (a > 0 && b > 0) {
            return zero_balanced_2f1(a, b, y);
        }
        return series_2f1(a, b, c, x);
    }
    if (nearly_integer(m, scale)) {
        const int mi = static_cast<int>(std::lround(m));
        if (mi > 0 && a + mi > 0 && b + mi > 0) {
            return integer_excess_2f1(a, b, mi, y);
        }
        // Euler transformation moves c - a - b to -m.
        const Real a2 = c - a;
        const Real b2 = c - b;
        if (mi < 0 && a2 - mi > 0 && b2 - mi > 0) {
            return std::pow(y, m) * integer_excess_2f1(a2, b2, -mi, y);
        }
        return series_2f1(a, b, c, x);
    }
    const Real first = std::tgamma(c) * std::tgamma(m) * rgamma(c - a) * rgamma(c - b);
    const Real second = std::tgamma(c) * std::tgamma(-m) * rgamma(a) * rgamma(b);
    Real value = 0;
    if (first != 0) {
        value += first * series_2f1(a, b, 1 - m, y);
    }
    if (second != 0) {
        value += std::pow(y, m) * second * series_2f1(c - a, c - b, 1 + m, y);
    }
    return value;
}

} // namespace detail

/// F(a,b;c;x) for x in [0,1), with the complement 1-x passed separately so
/// callers holding an exact 1-x (e.g. r'^2) do not lose it to cancellation.
template <std::floating_point Real>
Real gauss_F(const HypergeomParams<Real> &p, Real x, Real one_minus_x)
{
    if (!(x >= 0 && x < 1) || !(one_minus_x > 0)) {
        detail::domain_fail("gauss_F", "argument must lie in [0,1)");
    }
    if (x == 0) {
        return 1;
    }
    if (x <= hypergeometric_connection_switch<Real>) {
        return detail::series_2f1(p.a, p.b, p.c, x);
    }
    return detail::connection_2f1(p.a, p.b, p.c, x, one_minus_x);
}

template <std::floating_point Real>
Real gauss_F(const HypergeomParams<Real> &p, Real x)
{
    if (!(x >= 0 && x < 1)) {
        detail::domain_fail("gauss_F", "argument must lie in [0,1)");
    }
    return gauss_F(p, x, 1 - x);
}

template <std::floating_point Real>
AsymptoticClass<Real> hypergeom_boundary(const HypergeomParams<Real> &p)
{
    if (!(p.a > 0) || !(p.b > 0) || !(p.c > 0)) {
        detail::domain_fail("hypergeom_boundary", "parameters must be positive");
    }
    const Real excess = p.c - p.a - p.b;
    const Real tol = 64 * std::numeric_limits<Real>::epsilon() * std::max(Real(1), p.c);
    if (std::abs(excess) <= tol) {
        const Real r = -digamma_fn(p.a) - digamma_fn(p.b) - 2 * euler_gamma_v<Real>;
        return {BoundaryCase::B, r};
    }
    if (excess > 0) {
        // Gauss summation.
        const Real value = std::exp(std::lgamma(p.c) + std::lgamma(excess) - std::lgamma(p.c - p.a)
                                    - std::lgamma(p.c - p.b));
        return {BoundaryCase::A, value};
    }
    return {BoundaryCase::C, beta_fn(p.c, -excess) / beta_fn(p.a, p.b)};
}

} // namespace qcf

#endif
