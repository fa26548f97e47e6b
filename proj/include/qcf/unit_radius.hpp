// A radius r in (0,1) carried together with its complement r' = sqrt(1 - r^2).

#ifndef QCF_UNIT_RADIUS_HPP
#define QCF_UNIT_RADIUS_HPP

#include <cmath>
#include <concepts>
#include <limits>

#include "errors.hpp"

namespace qcf
{

/// Both components are kept because either one may be the accurate one:
/// near r = 1 the complement cannot be recovered from r in floating point.
template <std::floating_point Real>
class UnitRadius
{
public:
    static UnitRadius from_r(Real r)
    {
        if (!(r > 0 && r < 1)) {
            detail::domain_fail("UnitRadius", "r must lie in (0,1)");
        }
        return UnitRadius(r, clamp_below_one(std::sqrt((1 - r) * (1 + r))));
    }

    static UnitRadius from_complement(Real rc)
    {
        if (!(rc > 0 && rc < 1)) {
            detail::domain_fail("UnitRadius", "complement must lie in (0,1)");
        }
        return UnitRadius(clamp_below_one(std::sqrt((1 - rc) * (1 + rc))), rc);
    }

    /// Both parts given; they must satisfy r^2 + r'^2 = 1 to a few ulps.
    static UnitRadius from_pair(Real r, Real rc)
    {
        if (!(r > 0 && r <= 1) || !(rc > 0 && rc <= 1)) {
            detail::domain_fail("UnitRadius", "components must lie in (0,1)");
        }
        if (std::abs(r * r + rc * rc - 1) > 16 * std::numeric_limits<Real>::epsilon()) {
            detail::domain_fail("UnitRadius", "components violate r^2 + r'^2 = 1");
        }
        return UnitRadius(clamp_below_one(r), clamp_below_one(rc));
    }

    Real r() const { return r_; }
    Real complement() const { return rc_; }

    /// (r', r): the radius whose complement is this radius.
    UnitRadius swapped() const { return UnitRadius(rc_, r_); }

private:
    UnitRadius(Real r, Real rc) : r_(r), rc_(rc) {}

    static Real clamp_below_one(Real v)
    {
        constexpr Real below_one = Real(1) - std::numeric_limits<Real>::epsilon() / 2;
        return v < below_one ? v : below_one;
    }

    Real r_;
    Real rc_;
};

} // namespace qcf

#endif
