#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <qcf/bounds.hpp>
#include <qcf/distortion.hpp>
#include <qcf/errors.hpp>
#include <qcf/modulus.hpp>

using namespace qcf;

namespace
{

constexpr double pi = std::numbers::pi;

double bv(BoundId id, std::vector<double> p) { return bound_value(id, p); }

bool rel_close(double got, double want, double tol)
{
    return std::abs(got - want) <= tol * std::abs(want);
}

const std::vector<double> dilatations = {1.0, 1.01, 1.1, 1.5, 2.0, 3.0, 5.0};

} // namespace

TEST_CASE("catalog lookup")
{
    CHECK(bound_catalog().size() == 10);
    for (const auto &info : bound_catalog()) {
        CHECK(bound_from_name(info.name) == info.id);
        CHECK(info.required <= info.params.size());
    }
    CHECK_FALSE(bound_from_name("NoSuchBound").has_value());
}

TEST_CASE("reference values")
{
    CHECK(rel_close(bv(BoundId::GehringD2, {1.0}), 23.140692632779269, 1e-14));
    CHECK(bv(BoundId::VuorinenC2, {1.0}) == 2.0);
    CHECK(rel_close(bv(BoundId::MoriConstant, {2.0}), 8.0, 1e-15));
    CHECK(bv(BoundId::BeurlingAhlforsK, {4.0}) == 7.0);
    CHECK(rel_close(bv(BoundId::KuhnauTriangleK, {1.0 / 3}), std::sqrt(5.0), 1e-14));
    CHECK(rel_close(bv(BoundId::SurfaceArea, {2.0}), 2 * pi, 1e-14));
    CHECK(rel_close(bv(BoundId::SurfaceArea, {3.0}), 4 * pi, 1e-14));
    CHECK(bv(BoundId::SeittenrantaS, {1.0}) == 1.0);
    CHECK(bv(BoundId::AgardGehringLower, {1.5}) == 1.125);
    CHECK(rel_close(bv(BoundId::HaymanSchottky, {0.0, 1.0}), std::exp(pi), 1e-15));
}

TEST_CASE("Gehring constant matches the capacity composite")
{
    const double omega = bv(BoundId::SurfaceArea, {2.0});
    const double tau = teichmuller_tau2(1.0);
    for (double k : {1.0, 1.5, 2.0, 3.0}) {
        const double composite = std::exp(k * omega / tau);
        CHECK(rel_close(bv(BoundId::GehringD2, {k}), composite, 1e-10));
        CHECK(bv(BoundId::GehringD2, {k, 2.0}) == std::exp(pi * k));
    }
}

TEST_CASE("Vuorinen constant is dominated by a tenth of Gehring's")
{
    for (double k : dilatations) {
        CHECK(bv(BoundId::VuorinenC2, {k}) < bv(BoundId::GehringD2, {k}) / 10);
        CHECK(bv(BoundId::VuorinenC2, {k}) >= 2.0);
    }
}

TEST_CASE("limits as K -> 1")
{
    const double k = 1 + 1e-8;
    // s(K) - 1 ~ 24 sqrt(K-1), so its approach to 1 is much slower.
    CHECK(std::abs(bv(BoundId::SeittenrantaS, {k}) - 1) < 2.5e-3);
    CHECK(std::abs(bv(BoundId::SeittenrantaS, {1 + 1e-14}) - 1) < 2.5e-6);
    CHECK(std::abs(bv(BoundId::VuorinenC2, {k}) - 2) < 1e-6);
    CHECK(std::abs(bv(BoundId::MoriConstant, {k}) - 1) < 1e-6);
    CHECK(std::abs(bv(BoundId::GehringD2, {k}) - std::exp(pi)) < 1e-6);
}

TEST_CASE("lambda lies below the Gehring and Vuorinen style envelope")
{
    for (double k : dilatations) {
        const double l = lambda_of_K(Dilatation<double>::make(k));
        CHECK(l <= std::exp(pi * (k - 1 / k)) * (1 + 1e-12));
        CHECK(l <= bv(BoundId::GehringD2, {k}));
    }
}

TEST_CASE("quasisymmetry upper bound dominates eta_{K,2}")
{
    for (double k : dilatations) {
        const auto kk = Dilatation<double>::make(k);
        CHECK(bv(BoundId::EtaKnUpper, {k, 1.0}) >= eta_K2(kk, 1.0));
        for (double t : {0.01, 0.1, 0.5, 0.9, 2.0, 10.0}) {
            CHECK(bv(BoundId::EtaKnUpper, {k, t}) >= eta_K2(kk, t) * (1 - 1e-12));
        }
    }
    CHECK(rel_close(bv(BoundId::EtaKnUpper, {1.0, 0.3}), 0.3, 1e-14));
}

TEST_CASE("quasisymmetry upper bound in higher dimensions")
{
    for (int n : {3, 4}) {
        for (double k : {1.0, 1.5, 3.0}) {
            const double at_one = bv(BoundId::EtaKnUpper, {k, 1.0, double(n)});
            CHECK(at_one == bv(BoundId::SeittenrantaS, {k}));
            double previous = 0;
            for (double t : {0.01, 0.5, 2.0, 50.0}) {
                const double v = bv(BoundId::EtaKnUpper, {k, t, double(n)});
                CHECK(v > previous);
                previous = v;
            }
        }
    }
    CHECK(grotzsch_lambda_upper(2) == 4.0);
    CHECK(rel_close(grotzsch_lambda_upper(3), 2 * std::exp(2.0), 1e-15));
}

TEST_CASE("Beurling-Ahlfors branch switch")
{
    CHECK(rel_close(bv(BoundId::BeurlingAhlforsK, {2.0}), std::pow(2.0, 1.5), 1e-15));
    CHECK(bv(BoundId::BeurlingAhlforsK, {10.0}) == 19.0);
    CHECK(bv(BoundId::BeurlingAhlforsK, {1.0}) == 1.0);
}

TEST_CASE("Hayman bound dominates the Schottky function")
{
    for (double r : {0.0, 0.2, 0.5, 0.8}) {
        for (double t : {0.1, 1.0, 10.0}) {
            CHECK(schottky_psi(r, t) <= bv(BoundId::HaymanSchottky, {r, t}));
        }
    }
}

TEST_CASE("domain errors")
{
    CHECK_THROWS_AS(bv(BoundId::GehringD2, {0.5}), DomainError);
    CHECK_THROWS_AS(bv(BoundId::GehringD2, {2.0, 3.0}), UnsupportedDimension);
    CHECK_THROWS_AS(bv(BoundId::VuorinenC2, {2.0, 3.0}), UnsupportedDimension);
    CHECK_THROWS_AS(bv(BoundId::GehringD2, {}), DomainError);
    CHECK_THROWS_AS(bv(BoundId::MoriConstant, {2.0, 1.0}), DomainError);
    CHECK_THROWS_AS(bv(BoundId::AgardGehringLower, {2.0}), DomainError);
    CHECK_THROWS_AS(bv(BoundId::AgardGehringLower, {1.0}), DomainError);
    CHECK_THROWS_AS(bv(BoundId::KuhnauTriangleK, {0.5}), DomainError);
    CHECK_THROWS_AS(bv(BoundId::KuhnauTriangleK, {0.0}), DomainError);
    CHECK_THROWS_AS(bv(BoundId::HaymanSchottky, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(bv(BoundId::SurfaceArea, {2.5}), DomainError);
    CHECK_THROWS_AS(bv(BoundId::EtaKnUpper, {2.0, 0.0}), DomainError);
    CHECK_THROWS_AS(bv(BoundId::SeittenrantaS, {std::nan("")}), DomainError);
}
