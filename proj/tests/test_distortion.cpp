#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <qcf/distortion.hpp>

using namespace qcf;

namespace
{

constexpr double pi = std::numbers::pi;

bool rel_close(double got, double want, double tol)
{
    return std::abs(got - want) <= tol * std::abs(want);
}

std::vector<double> radius_grid()
{
    std::vector<double> g;
    for (int i = 1; i <= 19; ++i) {
        g.push_back(0.05 * i);
    }
    return g;
}

const std::vector<double> dilatations = {1.01, 1.1, 1.5, 2.0, 3.0, 5.0};

UnitRadius<double> ur(double r) { return UnitRadius<double>::from_r(r); }

Dilatation<double> dil(double k) { return Dilatation<double>::make(k); }

double phi2_closed(double r) { return 2 * std::sqrt(r) / (1 + r); }

} // namespace

TEST_CASE("Dilatation validation")
{
    CHECK_THROWS_AS(dil(0.5), DomainError);
    CHECK_THROWS_AS(dil(std::nan("")), DomainError);
    CHECK(dil(1.0).value() == 1.0);
}

TEST_CASE("phi_K: reference values")
{
    for (double r : radius_grid()) {
        CHECK(phi_K(dil(1.0), ur(r)).r() == r);
    }
    CHECK(rel_close(phi_K(dil(2.0), ur(0.5)).r(), 0.94280904158206337, 1e-12));
    CHECK(rel_close(phi_K(dil(4.0), ur(0.25)).r(), 0.99380798999990653, 1e-12));
    CHECK_THROWS_AS(phi_K(0.0, ur(0.5)), DomainError);
}

TEST_CASE("phi_K: group laws")
{
    for (double r : radius_grid()) {
        const auto u = ur(r);
        CHECK(std::abs(phi_K(dil(2.0), u).r() - phi2_closed(r)) <= 1e-10);
        for (double k : dilatations) {
            const double forward = phi_K(k, u).r();
            const double back = phi_K(1 / k, u.swapped()).r();
            CHECK(std::abs(forward * forward + back * back - 1) <= 1e-10);
            CHECK(std::abs(phi_K(1 / k, phi_K(k, u)).r() - r) <= 1e-10);
            for (double b : {1.3, 2.0}) {
                CHECK(std::abs(phi_K(k, phi_K(b, u)).r() - phi_K(k * b, u).r()) <= 1e-10);
            }
        }
    }
}

TEST_CASE("phi_K: increasing in r and K")
{
    for (double k : dilatations) {
        double previous = 0;
        for (double r : radius_grid()) {
            const double v = phi_K(dil(k), ur(r)).r();
            CHECK(v > previous);
            CHECK(v < 1);
            previous = v;
        }
    }
    for (double r : {0.1, 0.5, 0.9}) {
        double previous = 0;
        for (double k : dilatations) {
            const double v = phi_K(dil(k), ur(r)).r();
            CHECK(v > previous);
            previous = v;
        }
    }
}

TEST_CASE("phi_K: power bracket")
{
    for (double k : dilatations) {
        for (double r : radius_grid()) {
            const double lower = std::pow(4.0, 1 - k) * std::pow(r, k);
            const double upper = std::pow(4.0, 1 - 1 / k) * std::pow(r, 1 / k);
            const double inverse = phi_K(1 / k, ur(r)).r();
            const double direct = phi_K(k, ur(r)).r();
            CHECK(lower <= inverse * (1 + 1e-12));
            CHECK(inverse <= direct);
            CHECK(direct <= upper * (1 + 1e-12));
        }
    }
}

TEST_CASE("phi_K: capacity route agrees")
{
    for (double k : dilatations) {
        for (double r : radius_grid()) {
            // 1/gamma_2^{-1}(y) = mu^{-1}(2 pi / y).
            const double y = k * grotzsch_gamma2(1 / r);
            const double via_capacity = mu_inv(2 * pi / y).r();
            CHECK(std::abs(via_capacity - phi_K(dil(k), ur(r)).r()) <= 1e-9);
        }
    }
}

TEST_CASE("phi_K: extreme arguments stay inside (0,1)")
{
    const auto near_one = phi_K(dil(50.0), ur(0.99));
    CHECK(near_one.r() <= 1);
    CHECK(near_one.complement() > 0);
    const auto near_zero = phi_K(1 / 50.0, ur(1e-3));
    CHECK(near_zero.r() > 0);
}

TEST_CASE("phi_aK: reductions and a cubic modular equation")
{
    const auto half = Signature<double>::half();
    for (double k : dilatations) {
        for (double r : radius_grid()) {
            CHECK(std::abs(phi_aK(half, k, ur(r)).r() - phi_K(k, ur(r)).r()) <= 1e-10);
            CHECK(phi_aK(Signature<double>::make(0.25), 1.0, ur(r)).r() == r);
        }
    }
    const double v = phi_aK(Signature<double>::make(1.0 / 3), 2.0, ur(0.6)).r();
    CHECK(rel_close(v, 0.97897313219721859, 1e-11));
    const double alpha = 0.36;
    const double beta = v * v;
    CHECK(std::abs(std::cbrt(alpha * beta) + std::cbrt((1 - alpha) * (1 - beta)) - 1) <= 1e-10);
}

TEST_CASE("eta_K2 and lambda")
{
    for (double t : {0.5, 1.0, 2.0}) {
        CHECK(rel_close(eta_K2(dil(1.0), t), t, 1e-13));
    }
    CHECK(eta_K2(dil(3.0), 0.0) == 0.0);
    CHECK(rel_close(lambda_of_K(dil(1.0)), 1.0, 1e-13));
    CHECK(rel_close(lambda_of_K(dil(2.0)), 32.970562748477141, 1e-11));
    CHECK(rel_close(eta_K2(dil(2.0), 1.0), lambda_of_K(dil(2.0)), 1e-14));
    const double l3 = lambda_of_K(dil(3.0));
    CHECK(rel_close(l3, 773.97808886918852, 1e-10));
    CHECK(l3 >= std::exp(2 * pi));
    CHECK(l3 <= std::exp(8 * pi / 3));
    CHECK_THROWS_AS(eta_K2(dil(2.0), -1.0), DomainError);
    CHECK_THROWS_AS(lambda_of_K(dil(300.0)), OverflowError);
}

TEST_CASE("eta_K2: increasing in both arguments")
{
    for (double k : dilatations) {
        double previous = 0;
        for (double t = 0.1; t < 50; t *= 1.5) {
            const double v = eta_K2(dil(k), t);
            CHECK(v > previous);
            previous = v;
        }
    }
    for (double t : {0.1, 1.0, 10.0}) {
        double previous = 0;
        for (double k : dilatations) {
            const double v = eta_K2(dil(k), t);
            CHECK(v > previous);
            previous = v;
        }
    }
}

TEST_CASE("lambda bracket")
{
    for (double k : {1.1, 1.5, 2.0, 3.0, 5.0}) {
        const double l = lambda_of_K(dil(k));
        CHECK(std::exp(pi * (k - 1)) <= l);
        CHECK(l <= std::exp(pi * (k - 1 / k)));
    }
}

TEST_CASE("Qiu bound with equality at K = 1 and t = 0")
{
    for (double k : {1.0, 1.01, 1.5, 2.0, 3.0}) {
        for (double t : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            const double b = t == 0 ? 1.0 : std::exp(2 * mu(UnitRadius<double>::from_pair(1 / std::sqrt(1 + t), std::sqrt(t / (1 + t)))));
            const double lhs = 16 * eta_K2(dil(k), t);
            const double first = 16 * t + std::pow(b, k) - b;
            const double second = std::pow(16 * t + 8, k) - 8;
            const double rhs = std::min(first, second);
            CHECK(lhs <= rhs + 1e-9 * std::max(1.0, rhs));
            if (k == 1.0 || t == 0.0) {
                CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, rhs));
            }
        }
    }
}

TEST_CASE("Schottky function")
{
    for (double t : {0.3, 1.0, 4.0}) {
        CHECK(schottky_psi(0.0, t) == doctest::Approx(t).epsilon(1e-13));
    }
    CHECK(rel_close(schottky_psi(1.0 / 3, 1.0), 32.970562748477141, 1e-11));
    for (double r : {0.0, 0.1, 0.3, 0.5, 0.7}) {
        for (double t : {0.1, 1.0, 10.0}) {
            const double m = (1 + r) / (1 - r);
            const double v = schottky_psi(r, t);
            CHECK(v == detail::quasisymmetry_ratio(m, t, "test"));
            const double hayman = std::exp((pi + std::max(0.0, std::log(t))) * m);
            CHECK(v <= hayman);
        }
    }
    double previous = 0;
    for (double r = 0; r < 0.8; r += 0.05) {
        const double v = schottky_psi(r, 2.0);
        CHECK(v > previous);
        previous = v;
    }
    CHECK_THROWS_AS(schottky_psi(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(schottky_psi(0.5, 0.0), DomainError);
}

TEST_CASE("linearization")
{
    for (double x : {-5.0, -1.0, 0.0, 0.7, 3.0}) {
        CHECK(linearized_g(dil(1.0), x) == doctest::Approx(x).epsilon(1e-13));
    }
    CHECK(rel_close(linearized_g(dil(2.0), 0.0), 2.8024679448790040, 1e-12));
    const double h = 1e-5;
    for (double k : {1.5, 2.0, 5.0}) {
        double previous_slope = 0;
        double previous_value = -1e300;
        for (double x = -10; x <= 10; x += 0.5) {
            const double g = linearized_g(dil(k), x);
            CHECK(g > previous_value);
            previous_value = g;
            const double slope = (linearized_g(dil(k), x + h) - linearized_g(dil(k), x - h)) / (2 * h);
            CHECK(slope > 1 / k);
            CHECK(slope < k);
            CHECK(slope >= previous_slope - 1e-6);
            previous_slope = slope;
        }
    }
    CHECK(linearized_g_a(Signature<double>::half(), dil(2.0), 0.0) == doctest::Approx(linearized_g(dil(2.0), 0.0)));
}
