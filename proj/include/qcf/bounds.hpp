// Closed-form distortion constants and bounds for planar quasiconformal maps.

#ifndef QCF_BOUNDS_HPP
#define QCF_BOUNDS_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qcf
{

enum class BoundId {
    GehringD2,
    VuorinenC2,
    SeittenrantaS,
    MoriConstant,
    BeurlingAhlforsK,
    KuhnauTriangleK,
    AgardGehringLower,
    EtaKnUpper,
    HaymanSchottky,
    SurfaceArea,
};

struct BoundInfo
{
    BoundId id;
    std::string_view name;
    /// Parameter names in call order; trailing ones may be optional.
    std::vector<std::string_view> params;
    std::size_t required;
    std::string_view formula;
};

const std::vector<BoundInfo> &bound_catalog();
const BoundInfo &bound_info(BoundId id);
std::optional<BoundId> bound_from_name(std::string_view name);

/// Evaluate a catalog entry. Throws DomainError outside the entry's domain
/// and UnsupportedDimension for dimension-dependent constants with n >= 3.
double bound_value(BoundId id, std::span<const double> params);

/// Upper estimate of the Grötzsch constant lambda_n: exactly 4 for n = 2,
/// 2 e^{n-1} otherwise.
double grotzsch_lambda_upper(int n);

} // namespace qcf

#endif
