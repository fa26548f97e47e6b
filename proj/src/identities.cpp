#include "qcf/identities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qcf/distortion.hpp"
#include "qcf/errors.hpp"
#include "qcf/means.hpp"
#include "qcf/modulus.hpp"
#include "qcf/specfun.hpp"

namespace qcf
{

namespace
{

using UR = UnitRadius<double>;

constexpr double pi = std::numbers::pi;
constexpr double loose_tolerance = 1e-8;
constexpr double monotone_step = 1e-3;

const std::vector<IdentityCase> registry = {
    {IdentityId::LJ3, "LJ3", CaseKind::Equality, {"r"}, default_equality_tolerance, true, false,
     "sqrt(rs) + sqrt(r's') = 1, s = phi_{1/3}(r)"},
    {IdentityId::RamanujanE1, "RamanujanE1", CaseKind::Equality, {"r"}, default_equality_tolerance, true, false,
     "degree 5: (ab)^1/2 + ((1-a)(1-b))^1/2 + 2(16ab(1-a)(1-b))^1/6 = 1"},
    {IdentityId::RamanujanE2, "RamanujanE2", CaseKind::Equality, {"r"}, default_equality_tolerance, true, false,
     "degree 7: (ab)^1/8 + ((1-a)(1-b))^1/8 = 1"},
    {IdentityId::RamanujanE3, "RamanujanE3", CaseKind::Equality, {"r"}, loose_tolerance, true, false,
     "degrees 3, 9: (a(1-g))^1/8 + (g(1-a))^1/8 = 2^1/3 (b(1-b))^1/24"},
    {IdentityId::RamanujanE4, "RamanujanE4", CaseKind::Equality, {"r"}, default_equality_tolerance, true, false,
     "degree 23: (ab)^1/8 + ((1-a)(1-b))^1/8 + 2^2/3 (ab(1-a)(1-b))^1/24 = 1"},
    {IdentityId::RamanujanE5a, "RamanujanE5a", CaseKind::Equality, {"r"}, default_equality_tolerance, true, false,
     "degree 7 form of the degree-15 equation, a = r^2, b = phi_{1/7}(r)^2"},
    {IdentityId::RamanujanE5b, "RamanujanE5b", CaseKind::Equality, {"r"}, default_equality_tolerance, true, false,
     "mixed form, a = phi_{1/3}(r)^2, b = phi_{1/5}(r)^2"},
    {IdentityId::PhiId1, "PhiId1", CaseKind::Equality, {"s"}, default_equality_tolerance, true, false,
     "xy + x'y' + 2^5/3 (xyx'y')^1/3 = 1, x = phi_sqrt5(s), y = phi_{1/sqrt5}(s)"},
    {IdentityId::PhiId2, "PhiId2", CaseKind::Equality, {"s"}, default_equality_tolerance, true, false,
     "(xy)^1/4 + (x'y')^1/4 = 1, x = phi_sqrt7(s), y = phi_{1/sqrt7}(s)"},
    {IdentityId::PhiId3, "PhiId3", CaseKind::Equality, {"s"}, default_equality_tolerance, true, false,
     "(xy)^1/4 + (x'y')^1/4 = 2^1/3 (s^2(1-s^2))^1/24, x = phi_3(s), y = phi_3(s')"},
    {IdentityId::PhiId4, "PhiId4", CaseKind::Equality, {"s"}, default_equality_tolerance, true, false,
     "(xy)^1/4 + (x'y')^1/4 + 2^2/3 (xx'yy')^1/12 = 1, x = phi_{1/sqrt23}(s), y = phi_sqrt23(s)"},
    {IdentityId::PhiId5, "PhiId5", CaseKind::Equality, {"s"}, default_equality_tolerance, true, false,
     "(xy)^1/4 + (x'y')^1/4 - (xx'yy')^1/4 = ((1 + xy + x'y')/2)^1/2, x = phi_sqrt(5/3)(s), y = phi_sqrt(3/5)(s)"},
    {IdentityId::Fixed1, "Fixed1", CaseKind::Equality, {}, default_equality_tolerance, true, false,
     "2uu' + 2^5/3 (uu')^2/3 = 1, u = phi_sqrt5(1/sqrt2)"},
    {IdentityId::Fixed2, "Fixed2", CaseKind::Equality, {}, default_equality_tolerance, true, false,
     "2(uu')^1/4 = 1, u = phi_sqrt7(1/sqrt2)"},
    {IdentityId::Fixed3, "Fixed3", CaseKind::Equality, {}, default_equality_tolerance, true, false,
     "sqrt(u) + sqrt(u') = 2^1/4, u = phi_3(1/sqrt2)"},
    {IdentityId::Fixed4, "Fixed4", CaseKind::Equality, {}, default_equality_tolerance, true, false,
     "2(uu')^1/4 + 2^2/3 (uu')^1/6 = 1, u = phi_sqrt23(1/sqrt2)"},
    {IdentityId::Fixed5, "Fixed5", CaseKind::Equality, {}, default_equality_tolerance, true, false,
     "2(uu')^1/4 - (uu')^1/2 = ((1 + 2uu')/2)^1/2, u = phi_sqrt(5/3)(1/sqrt2)"},
    {IdentityId::BBG2, "BBG2", CaseKind::Equality, {"r"}, default_equality_tolerance, true, false,
     "signature 3, degree 2: (ab)^1/3 + ((1-a)(1-b))^1/3 = 1"},
    {IdentityId::BBG5, "BBG5", CaseKind::Equality, {"r"}, default_equality_tolerance, true, false,
     "signature 3, degree 5: (ab)^1/3 + ((1-a)(1-b))^1/3 + 3(ab(1-a)(1-b))^1/6 = 1"},
    {IdentityId::BBG11, "BBG11", CaseKind::Equality, {"r"}, loose_tolerance, true, false,
     "signature 3, degree 11"},
    {IdentityId::PhiGroup1, "PhiGroup1", CaseKind::Equality, {"K", "r"}, default_equality_tolerance, true, false,
     "phi_K(r)^2 + phi_{1/K}(r')^2 = 1"},
    {IdentityId::PhiGroup2, "PhiGroup2", CaseKind::Equality, {"A", "B", "r"}, default_equality_tolerance, true, false,
     "phi_A(phi_B(r)) = phi_AB(r)"},
    {IdentityId::PhiGroup3, "PhiGroup3", CaseKind::Equality, {"K", "r"}, default_equality_tolerance, true, false,
     "phi_{1/K}(phi_K(r)) = r"},
    {IdentityId::PhiGroup4, "PhiGroup4", CaseKind::Equality, {"r"}, default_equality_tolerance, true, false,
     "phi_2(r) = 2 sqrt(r)/(1+r)"},
    {IdentityId::RamIdCase, "RamIdCase", CaseKind::Equality, {"a", "r"}, default_equality_tolerance, true, false,
     "F(1+a,2-a;2;1-r)F(a,1-a;1;r) + F(1+a,2-a;2;r)F(a,1-a;1;1-r) = sin(pi a)/(pi a(1-a) r(1-r)), relative"},
    {IdentityId::Landen, "Landen", CaseKind::Equality, {"r"}, 1e-12, true, false,
     "K(2 sqrt(r)/(1+r)) = (1+r) K(r), relative to K(r)"},
    {IdentityId::LandenIneq, "LandenIneq", CaseKind::Inequality, {"a", "b", "r"}, default_inequality_tolerance, true,
     false, "F(a,b;a+b;(2 sqrt(r)/(1+r))^2) <= (1+r) F(a,b;a+b;r^2), a+b <= 1"},
    {IdentityId::MuSub, "MuSub", CaseKind::Inequality, {"a", "r", "s"}, default_inequality_tolerance, true, false,
     "mu_a(r) + mu_a(s) <= 2 mu_a(sqrt(2rs/(1+rs+r's'))) <= 2 mu_a(sqrt(rs)), equality at r = s"},
    {IdentityId::MuSuper, "MuSuper", CaseKind::Inequality, {"a", "r", "s"}, default_inequality_tolerance, true, false,
     "2 mu_a((r+s)/(1+rs+r's')) <= mu_a(r) + mu_a(s), equality at r = s"},
    {IdentityId::MuDup, "MuDup", CaseKind::Inequality, {"a", "r"}, default_inequality_tolerance, true, false,
     "mu_a(r) <= 2 mu_a(2 sqrt(r)/(1+r)) <= C1 mu_a(r), equality at a = 1/2"},
    {IdentityId::MuProd, "MuProd", CaseKind::Inequality, {"a", "r"}, default_inequality_tolerance, true, false,
     "p <= exp(mu_a(r) + log r) <= (e^R/16) p, equality at a = 1/2"},
    {IdentityId::MeanChain, "MeanChain", CaseKind::Inequality, {"x", "y"}, default_inequality_tolerance, true, false,
     "G <= L <= AG <= L_{3/2} <= A"},
    {IdentityId::KBracketLower, "KBracketLower", CaseKind::Inequality, {"r"}, default_inequality_tolerance, true, true,
     "9/(8+r^2) log(4/r') < K(r)"},
    {IdentityId::KBracketUpper, "KBracketUpper", CaseKind::Inequality, {"r"}, default_inequality_tolerance, true, true,
     "K(r) < 4/(3+r^2) log(4/r')"},
    {IdentityId::LambdaBracketLower, "LambdaBracketLower", CaseKind::Inequality, {"K"}, default_inequality_tolerance,
     true, false, "exp(pi(K-1)) <= lambda(K)"},
    {IdentityId::LambdaBracketUpper, "LambdaBracketUpper", CaseKind::Inequality, {"K"}, default_inequality_tolerance,
     true, false, "lambda(K) <= exp(pi(K-1/K))"},
    {IdentityId::QiuBracket, "QiuBracket", CaseKind::Inequality, {"K", "t"}, default_inequality_tolerance, true, false,
     "16 eta_K(t) <= min(16t + B^K - B, (16t+8)^K - 8), B = exp(2 mu(1/sqrt(1+t)))"},
    {IdentityId::KLogQuotient, "KLogQuotient", CaseKind::MonotoneProperty, {"r"}, 0, true, true,
     "K(r)/log(4/r') is decreasing"},
    {IdentityId::MuPlusLog, "MuPlusLog", CaseKind::MonotoneProperty, {"r"}, 0, true, true,
     "mu(r) + log(r) is decreasing"},
    {IdentityId::PhiId4AsPrinted, "PhiId4AsPrinted", CaseKind::Equality, {"s"}, default_equality_tolerance, false,
     false, "PhiId4 with y = phi_sqrt23(s'); suspected transcription issue, reported only"},
};

UR radius(double r, const char *what = "r")
{
    if (!(r > 0 && r < 1)) {
        detail::domain_fail("identity", (std::string(what) + " must lie in (0,1)").c_str());
    }
    return UR::from_r(r);
}

UR phi(double k, const UR &u) { return phi_K(k, u); }

double sq(double v) { return v * v; }

// Ramanujan notation: alpha = u^2, 1 - alpha = u'^2.
struct Pair
{
    double ab;   // alpha beta
    double cab;  // (1-alpha)(1-beta)
};

Pair ramanujan_pair(const UR &u, const UR &v)
{
    return {sq(u.r() * v.r()), sq(u.complement() * v.complement())};
}

double ramanujan_e5(const Pair &p)
{
    return std::pow(p.ab, 0.125) + std::pow(p.cab, 0.125) - std::pow(p.ab * p.cab, 0.125)
        - std::sqrt((1 + std::sqrt(p.ab) + std::sqrt(p.cab)) / 2);
}

double phi_id4(const UR &x, const UR &y)
{
    const double xy = x.r() * y.r();
    const double cxy = x.complement() * y.complement();
    return std::pow(xy, 0.25) + std::pow(cxy, 0.25) + std::cbrt(4.0) * std::pow(xy * cxy, 1.0 / 12) - 1;
}

Pair bbg_pair(double r, double degree)
{
    const auto s = Signature<double>::make(1.0 / 3);
    const UR u = radius(r);
    const UR v = phi_aK(s, 1 / degree, u);
    return ramanujan_pair(u, v);
}

double normalized_slack(double lhs, double rhs) { return (rhs - lhs) / std::max(1.0, std::abs(rhs)); }

double check_a(double a)
{
    if (!(a > 0 && a <= 0.5)) {
        detail::domain_fail("identity", "a must lie in (0, 1/2]");
    }
    return a;
}

double check_k(double k)
{
    if (!(k >= 1) || !std::isfinite(k)) {
        detail::domain_fail("identity", "K must be at least 1");
    }
    return k;
}

UR fixed_point(double k) { return phi(k, UR::from_pair(std::sqrt(0.5), std::sqrt(0.5))); }

double monotone_drop(const std::function<double(const UR &)> &f, double r)
{
    if (!(r > monotone_step && r < 1 - monotone_step)) {
        detail::domain_fail("identity", "r must lie in (0.001, 0.999)");
    }
    const double before = f(UR::from_r(r - monotone_step));
    const double after = f(UR::from_r(r + monotone_step));
    return (before - after) / std::max(1.0, std::abs(before));
}

double evaluate(IdentityId id, std::span<const double> p)
{
    switch (id) {
    case IdentityId::LJ3: {
        const UR u = radius(p[0]);
        const UR s = phi(1.0 / 3, u);
        return std::sqrt(u.r() * s.r()) + std::sqrt(u.complement() * s.complement()) - 1;
    }
    case IdentityId::RamanujanE1: {
        const UR u = radius(p[0]);
        const Pair q = ramanujan_pair(u, phi(1.0 / 5, u));
        return std::sqrt(q.ab) + std::sqrt(q.cab) + 2 * std::pow(16 * q.ab * q.cab, 1.0 / 6) - 1;
    }
    case IdentityId::RamanujanE2: {
        const UR u = radius(p[0]);
        const Pair q = ramanujan_pair(u, phi(1.0 / 7, u));
        return std::pow(q.ab, 0.125) + std::pow(q.cab, 0.125) - 1;
    }
    case IdentityId::RamanujanE3: {
        const UR u = radius(p[0]);
        const UR b = phi(1.0 / 3, u);
        const UR g = phi(1.0 / 3, b);
        const double alpha = sq(u.r());
        const double alpha_c = sq(u.complement());
        const double gamma = sq(g.r());
        const double gamma_c = sq(g.complement());
        return std::pow(alpha * gamma_c, 0.125) + std::pow(gamma * alpha_c, 0.125)
            - std::cbrt(2.0) * std::pow(sq(b.r() * b.complement()), 1.0 / 24);
    }
    case IdentityId::RamanujanE4: {
        const UR u = radius(p[0]);
        const Pair q = ramanujan_pair(u, phi(1.0 / 23, u));
        return std::pow(q.ab, 0.125) + std::pow(q.cab, 0.125) + std::cbrt(4.0) * std::pow(q.ab * q.cab, 1.0 / 24) - 1;
    }
    case IdentityId::RamanujanE5a: {
        const UR u = radius(p[0]);
        return ramanujan_e5(ramanujan_pair(u, phi(1.0 / 7, u)));
    }
    case IdentityId::RamanujanE5b: {
        const UR u = radius(p[0]);
        return ramanujan_e5(ramanujan_pair(phi(1.0 / 3, u), phi(1.0 / 5, u)));
    }
    case IdentityId::PhiId1: {
        const UR s = radius(p[0], "s");
        const UR x = phi(std::sqrt(5.0), s);
        const UR y = phi(1 / std::sqrt(5.0), s);
        const double xy = x.r() * y.r();
        const double cxy = x.complement() * y.complement();
        return xy + cxy + std::pow(2.0, 5.0 / 3) * std::cbrt(xy * cxy) - 1;
    }
    case IdentityId::PhiId2: {
        const UR s = radius(p[0], "s");
        const UR x = phi(std::sqrt(7.0), s);
        const UR y = phi(1 / std::sqrt(7.0), s);
        return std::pow(x.r() * y.r(), 0.25) + std::pow(x.complement() * y.complement(), 0.25) - 1;
    }
    case IdentityId::PhiId3: {
        const UR s = radius(p[0], "s");
        const UR x = phi(3.0, s);
        const UR y = phi(3.0, s.swapped());
        return std::pow(x.r() * y.r(), 0.25) + std::pow(x.complement() * y.complement(), 0.25)
            - std::cbrt(2.0) * std::pow(sq(s.r() * s.complement()), 1.0 / 24);
    }
    case IdentityId::PhiId4: {
        const UR s = radius(p[0], "s");
        return phi_id4(phi(1 / std::sqrt(23.0), s), phi(std::sqrt(23.0), s));
    }
    case IdentityId::PhiId4AsPrinted: {
        const UR s = radius(p[0], "s");
        return phi_id4(phi(1 / std::sqrt(23.0), s), phi(std::sqrt(23.0), s.swapped()));
    }
    case IdentityId::PhiId5: {
        const UR s = radius(p[0], "s");
        const UR x = phi(std::sqrt(5.0 / 3), s);
        const UR y = phi(std::sqrt(3.0 / 5), s);
        const double xy = x.r() * y.r();
        const double cxy = x.complement() * y.complement();
        return std::pow(xy, 0.25) + std::pow(cxy, 0.25) - std::pow(xy * cxy, 0.25) - std::sqrt((1 + xy + cxy) / 2);
    }
    case IdentityId::Fixed1: {
        const UR u = fixed_point(std::sqrt(5.0));
        const double w = u.r() * u.complement();
        return 2 * w + std::pow(2.0, 5.0 / 3) * std::pow(w, 2.0 / 3) - 1;
    }
    case IdentityId::Fixed2: {
        const UR u = fixed_point(std::sqrt(7.0));
        return 2 * std::pow(u.r() * u.complement(), 0.25) - 1;
    }
    case IdentityId::Fixed3: {
        const UR u = fixed_point(3.0);
        return std::sqrt(u.r()) + std::sqrt(u.complement()) - std::pow(2.0, 0.25);
    }
    case IdentityId::Fixed4: {
        const UR u = fixed_point(std::sqrt(23.0));
        const double w = u.r() * u.complement();
        return 2 * std::pow(w, 0.25) + std::cbrt(4.0) * std::pow(w, 1.0 / 6) - 1;
    }
    case IdentityId::Fixed5: {
        const UR u = fixed_point(std::sqrt(5.0 / 3));
        const double w = u.r() * u.complement();
        return 2 * std::pow(w, 0.25) - std::sqrt(w) - std::sqrt((1 + 2 * w) / 2);
    }
    case IdentityId::BBG2: {
        const Pair q = bbg_pair(p[0], 2);
        return std::cbrt(q.ab) + std::cbrt(q.cab) - 1;
    }
    case IdentityId::BBG5: {
        const Pair q = bbg_pair(p[0], 5);
        return std::cbrt(q.ab) + std::cbrt(q.cab) + 3 * std::pow(q.ab * q.cab, 1.0 / 6) - 1;
    }
    case IdentityId::BBG11: {
        const Pair q = bbg_pair(p[0], 11);
        const double prod = q.ab * q.cab;
        return std::cbrt(q.ab) + std::cbrt(q.cab) + 6 * std::pow(prod, 1.0 / 6)
            + 3 * std::sqrt(3.0) * std::pow(prod, 1.0 / 12) * (std::pow(q.ab, 1.0 / 6) + std::pow(q.cab, 1.0 / 6)) - 1;
    }
    case IdentityId::PhiGroup1: {
        const double k = check_k(p[0]);
        const UR u = radius(p[1]);
        return sq(phi(k, u).r()) + sq(phi(1 / k, u.swapped()).r()) - 1;
    }
    case IdentityId::PhiGroup2: {
        const double a = check_k(p[0]);
        const double b = check_k(p[1]);
        const UR u = radius(p[2]);
        return phi(a, phi(b, u)).r() - phi(a * b, u).r();
    }
    case IdentityId::PhiGroup3: {
        const double k = check_k(p[0]);
        const UR u = radius(p[1]);
        return phi(1 / k, phi(k, u)).r() - u.r();
    }
    case IdentityId::PhiGroup4: {
        const UR u = radius(p[0]);
        return phi(2.0, u).r() - 2 * std::sqrt(u.r()) / (1 + u.r());
    }
    case IdentityId::RamIdCase: {
        const double a = p[0];
        if (!(a > 0 && a < 1)) {
            detail::domain_fail("RamIdCase", "a must lie in (0,1)");
        }
        const double r = radius(p[1]).r();
        const auto big = HypergeomParams<double>::make(1 + a, 2 - a, 2);
        const auto small = HypergeomParams<double>::make(a, 1 - a, 1);
        const double lhs = gauss_F(big, 1 - r, r) * gauss_F(small, r, 1 - r)
            + gauss_F(big, r, 1 - r) * gauss_F(small, 1 - r, r);
        const double rhs = std::sin(pi * a) / (pi * a * (1 - a) * r * (1 - r));
        return lhs / rhs - 1;
    }
    case IdentityId::Landen: {
        const double r = radius(p[0]).r();
        const double k = ellint_K(r);
        const UR landen = UR::from_pair(2 * std::sqrt(r) / (1 + r), (1 - r) / (1 + r));
        return (ellint_K(landen) - (1 + r) * k) / k;
    }
    case IdentityId::LandenIneq: {
        const double a = p[0];
        const double b = p[1];
        if (!(a > 0 && b > 0 && a + b <= 1 + 1e-15)) {
            detail::domain_fail("LandenIneq", "a, b must be positive with a + b <= 1");
        }
        const double r = radius(p[2]).r();
        const auto params = HypergeomParams<double>::make(a, b, a + b);
        const double w = 2 * std::sqrt(r) / (1 + r);
        const double wc = (1 - r) / (1 + r);
        const double lhs = gauss_F(params, w * w, wc * wc);
        const double rhs = (1 + r) * gauss_F(params, r * r, (1 - r) * (1 + r));
        return normalized_slack(lhs, rhs);
    }
    case IdentityId::MuSub: {
        const auto sig = Signature<double>::make(check_a(p[0]));
        const UR r = radius(p[1]);
        const UR s = radius(p[2], "s");
        const double rs = r.r() * s.r();
        const double crs = r.complement() * s.complement();
        const double denom = 1 + rs + crs;
        const UR m = UR::from_pair(std::sqrt(2 * rs / denom), std::sqrt((1 - rs + crs) / denom));
        const UR g = UR::from_r(std::sqrt(rs));
        const double lhs = mu_a(sig, r) + mu_a(sig, s);
        const double mid = 2 * mu_a(sig, m);
        const double rhs = 2 * mu_a(sig, g);
        return std::min(normalized_slack(lhs, mid), normalized_slack(mid, rhs));
    }
    case IdentityId::MuSuper: {
        const auto sig = Signature<double>::make(check_a(p[0]));
        const UR r = radius(p[1]);
        const UR s = radius(p[2], "s");
        const double denom = 1 + r.r() * s.r() + r.complement() * s.complement();
        const double v = (r.r() + s.r()) / denom;
        // 1 - v = ((1-r)(1-s) + r's') / denom, free of cancellation
        const double one_minus_v = ((1 - r.r()) * (1 - s.r()) + r.complement() * s.complement()) / denom;
        const UR m = UR::from_complement(std::sqrt(one_minus_v * (1 + v)));
        const double lhs = 2 * mu_a(sig, m);
        const double rhs = mu_a(sig, r) + mu_a(sig, s);
        return normalized_slack(lhs, rhs);
    }
    case IdentityId::MuDup: {
        const double a = check_a(p[0]);
        const auto sig = Signature<double>::make(a);
        const UR u = radius(p[1]);
        const double r = u.r();
        const UR d = UR::from_pair(2 * std::sqrt(r) / (1 + r), (1 - r) / (1 + r));
        const double big_r = ramanujan_R(a, 1 - a);
        const double c = sq(1 + std::sin(pi * a) / pi * (big_r - std::log(16.0)));
        const double c1 = std::min(2.0, c);
        const double m = mu_a(sig, u);
        const double mid = 2 * mu_a(sig, d);
        return std::min(normalized_slack(m, mid), normalized_slack(mid, c1 * m));
    }
    case IdentityId::MuProd: {
        const double a = check_a(p[0]);
        const auto sig = Signature<double>::make(a);
        const UR u = radius(p[1]);
        const double prod = agm_product_p(u);
        const double mid = u.r() * std::exp(mu_a(sig, u));
        const double upper = std::exp(ramanujan_R(a, 1 - a)) / 16 * prod;
        return std::min(normalized_slack(prod, mid), normalized_slack(mid, upper));
    }
    case IdentityId::MeanChain: {
        const double x = p[0];
        const double y = p[1];
        const double g = mean(MeanKind::Geometric, x, y);
        const double l = mean(MeanKind::Logarithmic, x, y);
        const double ag = mean(MeanKind::ArithmeticGeometric, x, y);
        const double l32 = mean_mod(MeanKind::Logarithmic, PowerModification<double>{1.5}, x, y);
        const double a = mean(MeanKind::Arithmetic, x, y);
        return std::min({normalized_slack(g, l), normalized_slack(l, ag), normalized_slack(ag, l32),
                         normalized_slack(l32, a)});
    }
    case IdentityId::KBracketLower: {
        const UR u = radius(p[0]);
        const double r = u.r();
        return normalized_slack(9 / (8 + r * r) * std::log(4 / u.complement()), ellint_K(u));
    }
    case IdentityId::KBracketUpper: {
        const UR u = radius(p[0]);
        const double r = u.r();
        return normalized_slack(ellint_K(u), 4 / (3 + r * r) * std::log(4 / u.complement()));
    }
    case IdentityId::LambdaBracketLower: {
        const double k = check_k(p[0]);
        return normalized_slack(std::exp(pi * (k - 1)), lambda_of_K(Dilatation<double>::make(k)));
    }
    case IdentityId::LambdaBracketUpper: {
        const double k = check_k(p[0]);
        return normalized_slack(lambda_of_K(Dilatation<double>::make(k)), std::exp(pi * (k - 1 / k)));
    }
    case IdentityId::QiuBracket: {
        const double k = check_k(p[0]);
        const double t = p[1];
        if (!(t >= 0) || !std::isfinite(t)) {
            detail::domain_fail("QiuBracket", "t must be non-negative");
        }
        const double b = t == 0 ? 1.0 : std::exp(2 * mu(UR::from_pair(1 / std::sqrt(1 + t), std::sqrt(t / (1 + t)))));
        const double lhs = 16 * eta_K2(Dilatation<double>::make(k), t);
        const double rhs = std::min(16 * t + std::pow(b, k) - b, std::pow(16 * t + 8, k) - 8);
        return normalized_slack(lhs, rhs);
    }
    case IdentityId::KLogQuotient:
        return monotone_drop([](const UR &u) { return ellint_K(u) / std::log(4 / u.complement()); }, p[0]);
    case IdentityId::MuPlusLog:
        return monotone_drop([](const UR &u) { return mu(u) + std::log(u.r()); }, p[0]);
    }
    throw std::invalid_argument("unknown identity case");
}

std::vector<double> radius_grid()
{
    std::vector<double> g;
    for (int i = 1; i <= 19; ++i) {
        g.push_back(i / 20.0);
    }
    return g;
}

std::string describe(const std::vector<std::string_view> &names, const std::vector<std::vector<double>> &grids)
{
    std::ostringstream out;
    out.precision(6);
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) {
            out << "; ";
        }
        const auto &g = grids[i];
        out << names[i] << " in {";
        if (g.size() > 8) {
            out << g.front() << ", " << g[1] << ", ..., " << g.back();
        } else {
            for (std::size_t j = 0; j < g.size(); ++j) {
                out << (j ? ", " : "") << g[j];
            }
        }
        out << "} (" << g.size() << ")";
    }
    if (names.empty()) {
        out << "fixed point";
    }
    return out.str();
}

} // namespace

const std::vector<IdentityCase> &identity_cases() { return registry; }

const IdentityCase &identity_case(IdentityId id)
{
    for (const auto &c : registry) {
        if (c.id == id) {
            return c;
        }
    }
    throw std::invalid_argument("unknown identity case");
}

std::optional<IdentityId> identity_from_name(std::string_view name)
{
    for (const auto &c : registry) {
        if (c.name == name) {
            return c.id;
        }
    }
    return std::nullopt;
}

std::vector<IdentityId> cases_of_kind(std::optional<CaseKind> kind, bool include_ungated)
{
    std::vector<IdentityId> out;
    for (const auto &c : registry) {
        if ((!kind || c.kind == *kind) && (c.gated || include_ungated)) {
            out.push_back(c.id);
        }
    }
    return out;
}

double residual(IdentityId id, std::span<const double> point)
{
    const auto &c = identity_case(id);
    if (point.size() != c.params.size()) {
        detail::domain_fail(std::string(c.name).c_str(), "wrong number of parameters");
    }
    try {
        return evaluate(id, point);
    } catch (const DomainError &e) {
        throw DomainError(std::string(c.name) + ": " + e.what());
    } catch (const ConvergenceError &e) {
        throw ConvergenceError(std::string(c.name) + ": " + e.what());
    } catch (const OverflowError &e) {
        throw OverflowError(std::string(c.name) + ": " + e.what());
    }
}

bool in_domain(IdentityId id, std::span<const double> p)
{
    const auto &c = identity_case(id);
    if (p.size() != c.params.size()) {
        return false;
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        const std::string_view name = c.params[i];
        const double v = p[i];
        if (std::isnan(v)) {
            return false;
        }
        if ((name == "r" || name == "s") && !(v > 0 && v < 1)) {
            return false;
        }
        if ((name == "K" || name == "A" || name == "B") && !(v >= 1 && std::isfinite(v))) {
            return false;
        }
        if (name == "t" && !(v >= 0 && std::isfinite(v))) {
            return false;
        }
        if ((name == "x" || name == "y") && !(v > 0 && std::isfinite(v))) {
            return false;
        }
        if (name == "a" && !(v > 0 && v < 1)) {
            return false;
        }
        if (name == "b" && !(v > 0 && v < 1)) {
            return false;
        }
    }
    switch (id) {
    case IdentityId::MuSub:
    case IdentityId::MuSuper:
    case IdentityId::MuDup:
    case IdentityId::MuProd:
        return p[0] <= 0.5;
    case IdentityId::LandenIneq:
        return p[0] + p[1] <= 1 + 1e-15;
    case IdentityId::KLogQuotient:
    case IdentityId::MuPlusLog:
        return p[0] > monotone_step && p[0] < 1 - monotone_step;
    default:
        return true;
    }
}

bool is_equality_point(IdentityId id, std::span<const double> p)
{
    switch (id) {
    case IdentityId::MuSub:
    case IdentityId::MuSuper:
        return p[1] == p[2];
    case IdentityId::MuDup:
    case IdentityId::MuProd:
        return p[0] == 0.5;
    case IdentityId::LandenIneq:
        return p[0] == 0.5 && p[1] == 0.5;
    case IdentityId::MeanChain:
        return p[0] == p[1];
    case IdentityId::LambdaBracketLower:
    case IdentityId::LambdaBracketUpper:
        return p[0] == 1;
    case IdentityId::QiuBracket:
        return p[0] == 1 || p[1] == 0;
    default:
        return false;
    }
}

std::vector<double> default_grid(IdentityId id, std::string_view param)
{
    if (param == "r" || param == "s") {
        return radius_grid();
    }
    if (param == "K" || param == "A" || param == "B") {
        if (id == IdentityId::QiuBracket || id == IdentityId::LambdaBracketLower
            || id == IdentityId::LambdaBracketUpper) {
            return {1.0, 1.01, 1.1, 1.5, 2.0, 3.0, 5.0};
        }
        return {1.01, 1.1, 1.5, 2.0, 3.0, 5.0};
    }
    if (param == "a") {
        if (id == IdentityId::LandenIneq) {
            return {0.1, 0.25, 1.0 / 3, 0.5, 0.75};
        }
        return {1.0 / 6, 0.25, 1.0 / 3, 0.5};
    }
    if (param == "b") {
        return {0.1, 0.25, 1.0 / 3, 0.5, 0.75};
    }
    if (param == "x" || param == "y") {
        return {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
    }
    if (param == "t") {
        return {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
    }
    throw std::invalid_argument("unknown parameter name");
}

ResidualReport run_case(IdentityId id, const GridOverrides &overrides)
{
    const auto &c = identity_case(id);
    ResidualReport report;
    report.case_name = std::string(c.name);
    report.kind = c.kind;
    report.tolerance = c.tolerance;
    report.gated = c.gated;
    if (!c.gated) {
        report.note = "diagnostic only; not part of the pass/fail gate";
    }

    std::vector<std::vector<double>> grids;
    for (const auto name : c.params) {
        const auto it = overrides.find(name);
        grids.push_back(it != overrides.end() ? it->second : default_grid(id, name));
        if (grids.back().empty()) {
            report.error = "empty grid for parameter " + std::string(name);
            report.grid = describe(c.params, grids);
            return report;
        }
    }
    report.grid = describe(c.params, grids);

    const bool equality = c.kind == CaseKind::Equality;
    double worst = -1;
    double min_slack = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> index(grids.size(), 0);
    std::vector<double> point(grids.size());
    bool done = false;
    while (!done) {
        for (std::size_t i = 0; i < grids.size(); ++i) {
            point[i] = grids[i][index[i]];
        }
        if (!in_domain(id, point)) {
            ++report.skipped;
        } else {
            double value = 0;
            try {
                value = residual(id, point);
            } catch (const std::exception &e) {
                std::ostringstream msg;
                msg << e.what() << " at (";
                for (std::size_t i = 0; i < point.size(); ++i) {
                    msg << (i ? ", " : "") << point[i];
                }
                msg << ")";
                report.error = msg.str();
                report.pass = false;
                report.worst_point = point;
                return report;
            }
            ++report.points;
            if (equality) {
                if (std::isnan(value) || std::abs(value) > worst) {
                    worst = std::isnan(value) ? std::numeric_limits<double>::infinity() : std::abs(value);
                    report.worst_point = point;
                }
            } else {
                if (std::isnan(value) || value < min_slack) {
                    min_slack = std::isnan(value) ? -std::numeric_limits<double>::infinity() : value;
                    report.worst_point = point;
                }
                if (is_equality_point(id, point)) {
                    report.equality_residual = std::max(report.equality_residual.value_or(0.0), std::abs(value));
                }
            }
        }
        std::size_t k = 0;
        while (k < grids.size()) {
            if (++index[k] < grids[k].size()) {
                break;
            }
            index[k] = 0;
            ++k;
        }
        done = k == grids.size();
    }

    if (report.points == 0) {
        report.error = "no grid point inside the domain";
        return report;
    }
    if (equality) {
        report.max_abs_residual = worst;
        report.min_slack = -worst;
        report.pass = worst <= c.tolerance;
    } else {
        report.min_slack = min_slack;
        report.max_abs_residual = std::max(0.0, -min_slack);
        bool pass = c.strict ? min_slack > 0 : min_slack >= -c.tolerance;
        if (report.equality_residual) {
            pass = pass && *report.equality_residual <= equality_point_tolerance;
        }
        report.pass = pass;
    }
    return report;
}

std::vector<ResidualReport> run_suite(std::span<const IdentityId> cases, const GridOverrides &overrides)
{
    std::vector<ResidualReport> out;
    out.reserve(cases.size());
    for (const auto id : cases) {
        out.push_back(run_case(id, overrides));
    }
    return out;
}

} // namespace qcf
