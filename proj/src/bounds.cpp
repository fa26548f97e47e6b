#include "qcf/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcf/distortion.hpp"
#include "qcf/errors.hpp"
#include "qcf/modulus.hpp"
#include "qcf/specfun.hpp"

namespace qcf
{

namespace
{

constexpr double pi = std::numbers::pi;

const std::vector<BoundInfo> catalog = {
    {BoundId::GehringD2, "GehringD2", {"K", "n"}, 1, "exp(pi K)"},
    {BoundId::VuorinenC2, "VuorinenC2", {"K", "n"}, 1, "1 + tau2^{-1}(tau2(1)/K)"},
    {BoundId::SeittenrantaS, "SeittenrantaS", {"K"}, 1, "exp(6 (K+1)^2 sqrt(K-1))"},
    {BoundId::MoriConstant, "MoriConstant", {"K"}, 1, "64^(1-1/K)"},
    {BoundId::BeurlingAhlforsK, "BeurlingAhlforsK", {"M"}, 1, "min(M^1.5, 2M-1)"},
    {BoundId::KuhnauTriangleK, "KuhnauTriangleK", {"alpha"}, 1, "sqrt((1+d)/(1-d)), d = |1-alpha|"},
    {BoundId::AgardGehringLower, "AgardGehringLower", {"M"}, 1, "1 + (M-1)/4"},
    {BoundId::EtaKnUpper, "EtaKnUpper", {"K", "t", "n"}, 2, "s(K) phi_K(t) | s(K) / phi_{1/K}(1/t)"},
    {BoundId::HaymanSchottky, "HaymanSchottky", {"r", "t"}, 2, "exp((pi + log+ t)(1+r)/(1-r))"},
    {BoundId::SurfaceArea, "SurfaceArea", {"n"}, 1, "n pi^(n/2) / Gamma(1+n/2)"},
};

[[noreturn]] void fail(const BoundInfo &info, const std::string &what)
{
    detail::domain_fail(std::string(info.name).c_str(), what.c_str());
}

double dilatation(const BoundInfo &info, double k)
{
    if (!(k >= 1) || !std::isfinite(k)) {
        fail(info, "K must be finite and at least 1");
    }
    return k;
}

int dimension(const BoundInfo &info, std::span<const double> p, std::size_t index)
{
    if (p.size() <= index) {
        return 2;
    }
    const double n = p[index];
    if (!(n >= 2) || n != std::floor(n) || n > 1000) {
        fail(info, "n must be an integer >= 2");
    }
    return static_cast<int>(n);
}

double seittenranta(double k) { return std::exp(6 * (k + 1) * (k + 1) * std::sqrt(k - 1)); }

double eta_upper(const BoundInfo &info, double k, double t, int n)
{
    if (!(t > 0) || !std::isfinite(t)) {
        fail(info, "t must be positive and finite");
    }
    const double at_one = seittenranta(k);
    if (t == 1) {
        return at_one;
    }
    if (n == 2) {
        if (t < 1) {
            return at_one * phi_K(k, UnitRadius<double>::from_r(t)).r();
        }
        return at_one / phi_K(1 / k, UnitRadius<double>::from_r(1 / t)).r();
    }
    // Power bracket: phi_{K,n}(t) <= l^{1-alpha} t^alpha and
    // phi_{1/K,n}(u) >= l^{1-beta} u^beta, alpha = K^{1/(1-n)} = 1/beta.
    const double lambda = grotzsch_lambda_upper(n);
    const double alpha = std::pow(k, 1.0 / (1 - n));
    const double beta = 1 / alpha;
    if (t < 1) {
        return at_one * std::pow(lambda, 1 - alpha) * std::pow(t, alpha);
    }
    return at_one * std::pow(lambda, beta - 1) * std::pow(t, beta);
}

} // namespace

const std::vector<BoundInfo> &bound_catalog() { return catalog; }

const BoundInfo &bound_info(BoundId id)
{
    for (const auto &info : catalog) {
        if (info.id == id) {
            return info;
        }
    }
    throw std::invalid_argument("unknown bound id");
}

std::optional<BoundId> bound_from_name(std::string_view name)
{
    for (const auto &info : catalog) {
        if (info.name == name) {
            return info.id;
        }
    }
    return std::nullopt;
}

double grotzsch_lambda_upper(int n)
{
    if (n < 2) {
        detail::domain_fail("grotzsch_lambda_upper", "n must be at least 2");
    }
    return n == 2 ? 4.0 : 2 * std::exp(n - 1.0);
}

double bound_value(BoundId id, std::span<const double> p)
{
    const BoundInfo &info = bound_info(id);
    if (p.size() < info.required || p.size() > info.params.size()) {
        fail(info, "expected " + std::to_string(info.required) + " to " + std::to_string(info.params.size())
                       + " parameters, got " + std::to_string(p.size()));
    }
    for (double v : p) {
        if (std::isnan(v)) {
            fail(info, "parameters must not be NaN");
        }
    }

    switch (id) {
    case BoundId::GehringD2: {
        const double k = dilatation(info, p[0]);
        if (dimension(info, p, 1) != 2) {
            throw UnsupportedDimension("GehringD2: d(n,K) is only known for n = 2");
        }
        return std::exp(pi * k);
    }
    case BoundId::VuorinenC2: {
        const double k = dilatation(info, p[0]);
        if (dimension(info, p, 1) != 2) {
            throw UnsupportedDimension("VuorinenC2: c(n,K) is only known for n = 2");
        }
        if (k == 1) {
            return 2;
        }
        return 1 + teichmuller_tau2_inv(teichmuller_tau2(1.0) / k);
    }
    case BoundId::SeittenrantaS:
        return seittenranta(dilatation(info, p[0]));
    case BoundId::MoriConstant:
        return std::pow(64.0, 1 - 1 / dilatation(info, p[0]));
    case BoundId::BeurlingAhlforsK: {
        const double m = p[0];
        if (!(m >= 1) || !std::isfinite(m)) {
            fail(info, "M must be finite and at least 1");
        }
        return std::min(std::pow(m, 1.5), 2 * m - 1);
    }
    case BoundId::KuhnauTriangleK: {
        const double alpha = p[0];
        if (!(alpha > 0 && alpha <= 1.0 / 3 + 1e-15)) {
            fail(info, "alpha (least angle / pi) must lie in (0, 1/3]");
        }
        const double d = std::abs(1 - alpha);
        return std::sqrt((1 + d) / (1 - d));
    }
    case BoundId::AgardGehringLower: {
        const double m = p[0];
        if (!(m > 1 && m < 2)) {
            fail(info, "M must lie in (1,2)");
        }
        return 1 + 0.25 * (m - 1);
    }
    case BoundId::EtaKnUpper:
        return eta_upper(info, dilatation(info, p[0]), p[1], dimension(info, p, 2));
    case BoundId::HaymanSchottky: {
        const double r = p[0];
        const double t = p[1];
        if (!(r >= 0 && r < 1)) {
            fail(info, "r must lie in [0,1)");
        }
        if (!(t > 0) || !std::isfinite(t)) {
            fail(info, "t must be positive and finite");
        }
        const double value = std::exp((pi + std::max(0.0, std::log(t))) * (1 + r) / (1 - r));
        if (!std::isfinite(value)) {
            throw OverflowError("HaymanSchottky: value overflows");
        }
        return value;
    }
    case BoundId::SurfaceArea: {
        const int n = dimension(info, p, 0);
        const double half = n / 2.0;
        return n * std::pow(pi, half) / gamma_fn(1 + half);
    }
    }
    throw std::invalid_argument("unknown bound id");
}

} // namespace qcf
