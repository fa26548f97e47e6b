#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qcf/distortion.hpp"
#include "qcf/errors.hpp"
#include "qcf/identities.hpp"
#include "qcf/modulus.hpp"
#include "qcf/specfun.hpp"

namespace qcf
{

namespace
{

using UR = UnitRadius<double>;

struct NamedExperiment
{
    ExperimentId id;
    std::string_view name;
};

constexpr NamedExperiment experiment_names[] = {
    {ExperimentId::QMaclaurin, "QMaclaurin"},
    {ExperimentId::NewtonMonotone, "NewtonMonotone"},
    {ExperimentId::ArtanhRatio, "ArtanhRatio"},
    {ExperimentId::LinearizePhiA, "LinearizePhiA"},
};

double param(const ExperimentParams &p, std::string_view key, double fallback)
{
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

int count_param(const ExperimentParams &p, std::string_view key, int fallback, int cap)
{
    const double v = param(p, key, fallback);
    if (!(v >= 1 && v <= cap) || v != std::floor(v)) {
        std::ostringstream msg;
        msg << key << " must be an integer in [1, " << cap << "]";
        detail::domain_fail("experiment", msg.str());
    }
    return static_cast<int>(v);
}

std::string flag_text(bool v) { return v ? "yes" : "no"; }

ExperimentTable q_maclaurin(const ExperimentParams &p)
{
    const double a = param(p, "a", 0.25);
    const double b = param(p, "b", 0.25);
    const int terms = count_param(p, "terms", 20, 200);
    const auto g = q_maclaurin_coefficients(a, b, terms);
    ExperimentTable t{"QMaclaurin", {"k", "coefficient", "positive"}, {}, {}};
    bool all_positive = true;
    for (int k = 0; k < terms; ++k) {
        t.rows.push_back({double(k), g[k], g[k] > 0 ? 1.0 : 0.0});
        all_positive = all_positive && g[k] > 0;
    }
    std::ostringstream note;
    note << "a=" << a << " b=" << b << ": all " << terms << " coefficients positive: " << flag_text(all_positive);
    t.notes.push_back(note.str());
    return t;
}

ExperimentTable newton_monotone(const ExperimentParams &p)
{
    const double y = param(p, "y", 4.0);
    const int iterations = count_param(p, "iterations", 50, 10000);
    const auto trace = mu_inv_newton_trace(y, iterations);
    ExperimentTable t{"NewtonMonotone", {"n", "x", "increasing"}, {}, {}};
    bool monotone = true;
    const double jitter = 64 * std::numeric_limits<double>::epsilon();
    for (std::size_t n = 0; n < trace.size(); ++n) {
        // Backward steps of a few dozen ulps near the root are rounding jitter, not a reversal.
        const bool up = n == 0 || trace[n] >= trace[n - 1] * (1 - jitter);
        const bool inside = trace[n] > 0 && trace[n] < 1;
        monotone = monotone && up && inside;
        t.rows.push_back({double(n), trace[n], up && inside ? 1.0 : 0.0});
    }
    std::ostringstream note;
    note << "y=" << y << ": " << trace.size() << " iterates, monotone increasing inside (0,1): "
         << flag_text(monotone) << " (backward steps below 64 ulps ignored)";
    t.notes.push_back(note.str());
    if (y <= std::numbers::pi / 2) {
        t.notes.push_back("y <= pi/2: the starting point 1/cosh(y) is not known to lie below the root");
    }
    return t;
}

// artanh(v) = log((1+v)/v') with the complement carried.
double artanh_radius(const UR &u) { return std::log1p(u.r()) - std::log(u.complement()); }

ExperimentTable artanh_ratio(const ExperimentParams &p)
{
    const double k = param(p, "K", 3.0);
    const int points = count_param(p, "points", 19, 100000);
    const auto dil = Dilatation<double>::make(k);
    const double c = std::min(k, std::pow(4.0, 1 - 1 / k));
    const double d = std::max(k, std::pow(4.0, 1 - 1 / k));
    ExperimentTable t{"ArtanhRatio", {"r", "ratio", "lower", "upper", "inside"}, {}, {}};
    bool inside_all = true;
    bool increasing = true;
    bool decreasing = true;
    double previous = std::nan("");
    for (int i = 1; i <= points; ++i) {
        const double r = double(i) / (points + 1);
        const UR u = UR::from_r(r);
        // r^{1/K} and its complement sqrt(1 - r^{2/K})
        const double root = std::pow(r, 1 / k);
        const UR rooted = UR::from_pair(root, std::sqrt(-std::expm1(2 / k * std::log(r))));
        const double ratio = artanh_radius(phi_K(dil, u)) / artanh_radius(rooted);
        const bool inside = ratio >= c * (1 - 1e-12) && ratio <= d * (1 + 1e-12);
        inside_all = inside_all && inside;
        if (!std::isnan(previous)) {
            increasing = increasing && ratio >= previous;
            decreasing = decreasing && ratio <= previous;
        }
        previous = ratio;
        t.rows.push_back({r, ratio, c, d, inside ? 1.0 : 0.0});
    }
    std::ostringstream note;
    note << "K=" << k << ": samples inside [" << c << ", " << d << "]: " << flag_text(inside_all)
         << "; monotone: " << (increasing ? "increasing" : decreasing ? "decreasing" : "no");
    t.notes.push_back(note.str());
    return t;
}

ExperimentTable linearize_phi_a(const ExperimentParams &p)
{
    const auto sig = Signature<double>::make(param(p, "a", 1.0 / 3));
    const double k = param(p, "K", 2.0);
    const auto dil = Dilatation<double>::make(k);
    const double from = param(p, "from", -10.0);
    const double to = param(p, "to", 10.0);
    const double step = param(p, "step", 0.5);
    if (!(step > 0) || !(to >= from) || (to - from) / step > 1e6) {
        detail::domain_fail("experiment", "need from <= to and a positive step with at most 1e6 samples");
    }
    ExperimentTable t{"LinearizePhiA", {"x", "g", "slope", "slope_in_range"}, {}, {}};
    const double h = 1e-5;
    bool in_range = true;
    const auto n = static_cast<long>(std::floor((to - from) / step + 1e-9));
    for (long i = 0; i <= n; ++i) {
        const double x = from + i * step;
        const double g = linearized_g_a(sig, dil, x);
        const double slope = (linearized_g_a(sig, dil, x + h) - linearized_g_a(sig, dil, x - h)) / (2 * h);
        const bool ok = slope >= 1 / k - 1e-6 && slope <= k + 1e-6;
        in_range = in_range && ok;
        t.rows.push_back({x, g, slope, ok ? 1.0 : 0.0});
    }
    std::ostringstream note;
    note << "a=" << sig.a() << " K=" << k << ": sampled slopes inside [1/K, K]: " << flag_text(in_range);
    t.notes.push_back(note.str());
    return t;
}

} // namespace

std::optional<ExperimentId> experiment_from_name(std::string_view name)
{
    for (const auto &e : experiment_names) {
        if (e.name == name) {
            return e.id;
        }
    }
    return std::nullopt;
}

std::string_view experiment_name(ExperimentId id)
{
    for (const auto &e : experiment_names) {
        if (e.id == id) {
            return e.name;
        }
    }
    throw std::invalid_argument("unknown experiment");
}

std::vector<double> q_maclaurin_coefficients(double a, double b, int terms)
{
    if (!(a > 0 && b > 0 && a + b <= 1)) {
        detail::domain_fail("q_maclaurin_coefficients", "need a, b > 0 and a + b <= 1");
    }
    if (terms < 1) {
        detail::domain_fail("q_maclaurin_coefficients", "terms must be positive");
    }
    const double beta = beta_fn(a, b);
    const double big_r = ramanujan_R(a, b);
    // numerator B F(a,b;a+b;r), denominator R + sum r^k/k
    std::vector<double> num(terms);
    double f = 1;
    for (int k = 0; k < terms; ++k) {
        num[k] = beta * f;
        f *= (a + k) * (b + k) / ((a + b + k) * (k + 1));
    }
    std::vector<double> q(terms);
    for (int k = 0; k < terms; ++k) {
        double acc = num[k];
        for (int j = 1; j <= k; ++j) {
            acc -= q[k - j] / j;
        }
        q[k] = acc / big_r;
    }
    std::vector<double> g(terms);
    double partial = -1;
    for (int k = 0; k < terms; ++k) {
        partial += q[k];
        g[k] = partial;
    }
    return g;
}

ExperimentTable run_experiment(ExperimentId id, const ExperimentParams &params)
{
    switch (id) {
    case ExperimentId::QMaclaurin:
        return q_maclaurin(params);
    case ExperimentId::NewtonMonotone:
        return newton_monotone(params);
    case ExperimentId::ArtanhRatio:
        return artanh_ratio(params);
    case ExperimentId::LinearizePhiA:
        return linearize_phi_a(params);
    }
    throw std::invalid_argument("unknown experiment");
}

} // namespace qcf
