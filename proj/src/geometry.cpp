#include "qcf/geometry.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <string_view>
#include <unordered_set>
#include <utility>

#include "qcf/errors.hpp"

namespace qcf
{

namespace
{

constexpr double pi = std::numbers::pi;

using Vec = Eigen::Vector2d;

double dist(const PointSet &e, Eigen::Index i, Eigen::Index j) { return (e.col(i) - e.col(j)).norm(); }

std::vector<Eigen::Index> local_indices(const PointSet &e, const Vec &x, double r, const char *where)
{
    if (!(r > 0) || !std::isfinite(r)) {
        detail::domain_fail(where, "r must be positive and finite");
    }
    if (!x.allFinite()) {
        detail::domain_fail(where, "x must be finite");
    }
    std::vector<Eigen::Index> out;
    for (Eigen::Index i = 0; i < e.cols(); ++i) {
        if ((e.col(i) - x).norm() <= r) {
            out.push_back(i);
        }
    }
    return out;
}

// Largest |distance to the line through x with direction angle theta|.
double slab_width(const PointSet &e, const std::vector<Eigen::Index> &idx, const Vec &x, double theta)
{
    const Vec normal(-std::sin(theta), std::cos(theta));
    double w = 0;
    for (const auto i : idx) {
        w = std::max(w, std::abs(normal.dot(e.col(i) - x)));
    }
    return w;
}

std::complex<double> as_complex(const Vec &v) { return {v.x(), v.y()}; }

Vec as_vec(std::complex<double> z) { return {z.real(), z.imag()}; }

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

bool parse_double(std::string_view s, double &out)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && end == s.data() + s.size() && std::isfinite(out);
}

} // namespace

Polyline Polyline::make(PointSet points, bool closed)
{
    if (points.cols() < 2) {
        detail::domain_fail("Polyline", "needs at least two points");
    }
    if (!points.allFinite()) {
        detail::domain_fail("Polyline", "coordinates must be finite");
    }
    for (Eigen::Index i = 1; i < points.cols(); ++i) {
        if (points.col(i) == points.col(i - 1)) {
            detail::domain_fail("Polyline", "consecutive points must be distinct");
        }
    }
    if (closed && points.col(0) == points.col(points.cols() - 1)) {
        detail::domain_fail("Polyline", "closing edge has zero length; omit the repeated first point");
    }
    return Polyline(std::move(points), closed);
}

Polyline koch_curve(int level, double angle_deg)
{
    if (level < 0 || level > koch_level_cap) {
        detail::domain_fail("koch_curve", "level must lie in [0, 12]");
    }
    if (!(angle_deg > 0 && angle_deg < 90)) {
        detail::domain_fail("koch_curve", "angle must lie in (0, 90) degrees");
    }
    const double h = std::sqrt(3.0) / 2;
    std::vector<Vec> pts = {Vec(0, 0), Vec(1, 0), Vec(0.5, h)};
    const double rise = std::tan(angle_deg * pi / 180) / 6;
    for (int l = 0; l < level; ++l) {
        std::vector<Vec> next;
        next.reserve(pts.size() * 4);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const Vec p = pts[i];
            const Vec q = pts[(i + 1) % pts.size()];
            const Vec d = q - p;
            // counterclockwise orientation: outward is to the right of d
            const Vec outward(d.y(), -d.x());
            next.push_back(p);
            next.push_back(p + d / 3);
            next.push_back(p + d / 2 + rise * outward);
            next.push_back(p + 2 * d / 3);
        }
        pts = std::move(next);
    }
    PointSet m(2, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        m.col(static_cast<Eigen::Index>(i)) = pts[i];
    }
    return Polyline::make(std::move(m), true);
}

Polyline regular_polygon(int n, double radius)
{
    if (n < 3 || !(radius > 0)) {
        detail::domain_fail("regular_polygon", "need n >= 3 and a positive radius");
    }
    PointSet m(2, n);
    for (int i = 0; i < n; ++i) {
        const double t = 2 * pi * i / n;
        m.col(i) = Vec(radius * std::cos(t), radius * std::sin(t));
    }
    return Polyline::make(std::move(m), true);
}

double perimeter(const Polyline &c)
{
    const auto &p = c.points();
    double total = 0;
    for (Eigen::Index i = 0; i < c.edge_count(); ++i) {
        total += dist(p, i, (i + 1) % c.size());
    }
    return total;
}

double diameter(const PointSet &e)
{
    double d = 0;
    for (Eigen::Index i = 0; i < e.cols(); ++i) {
        for (Eigen::Index j = i + 1; j < e.cols(); ++j) {
            d = std::max(d, dist(e, i, j));
        }
    }
    return d;
}

double set_distance(const PointSet &e, const PointSet &f)
{
    if (e.cols() == 0 || f.cols() == 0) {
        detail::domain_fail("set_distance", "sets must be non-empty");
    }
    double d = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < e.cols(); ++i) {
        d = std::min(d, (f.colwise() - e.col(i)).colwise().norm().minCoeff());
    }
    return d;
}

double median_edge_length(const Polyline &c)
{
    std::vector<double> lengths;
    for (Eigen::Index i = 0; i < c.edge_count(); ++i) {
        lengths.push_back(dist(c.points(), i, (i + 1) % c.size()));
    }
    auto mid = lengths.begin() + static_cast<std::ptrdiff_t>(lengths.size() / 2);
    std::nth_element(lengths.begin(), mid, lengths.end());
    return *mid;
}

double relative_size(const PointSet &e, const PointSet &f)
{
    const double gap = set_distance(e, f);
    if (!(gap > 0)) {
        detail::domain_fail("relative_size", "degenerate pair: the sets meet");
    }
    return std::min(diameter(e), diameter(f)) / gap;
}

double ahlfors_constant(const Polyline &c)
{
    if (!c.closed() || c.size() < 4) {
        detail::domain_fail("ahlfors_constant", "needs a closed polyline with at least 4 vertices");
    }
    const Eigen::Index n = c.size();
    if (n > ahlfors_vertex_cap) {
        detail::domain_fail("ahlfors_constant", "too many vertices (cap 5000)");
    }
    const auto &p = c.points();
    // diam[len][s]: diameter of the arc of len+1 vertices starting at s,
    // from diam(len) = max(diam(len-1) at s, at s+1, |v_s - v_{s+len}|).
    // Only arcs up to half the curve are stored; the complementary arc of a
    // pair is evaluated when the sweep reaches its length.
    const Eigen::Index half = n / 2;
    std::vector<std::vector<double>> stored(static_cast<std::size_t>(half + 1));
    std::vector<double> layer(static_cast<std::size_t>(n), 0.0);
    stored[0] = layer;
    double m = 0;
    for (Eigen::Index len = 1; len < n; ++len) {
        std::vector<double> next(static_cast<std::size_t>(n));
        for (Eigen::Index s = 0; s < n; ++s) {
            next[s] = std::max({layer[s], layer[(s + 1) % n], dist(p, s, (s + len) % n)});
        }
        layer = std::move(next);
        if (len <= half) {
            stored[len] = layer;
        }
        const Eigen::Index other = n - len;
        if (other <= half && len >= other) {
            // pairs (a, b) = (v_s, v_{s+len}); the complementary arc starts at b
            for (Eigen::Index s = 0; s < n; ++s) {
                const Eigen::Index b = (s + len) % n;
                const double chord = dist(p, s, b);
                const double arc = std::min(layer[s], stored[other][b]);
                m = std::max(m, arc / chord);
            }
        }
    }
    return m;
}

double triangle_condition_constant(const Polyline &c, bool adjacent_only)
{
    const Eigen::Index n = c.size();
    if (c.closed() || n < 3) {
        detail::domain_fail("triangle_condition_constant", "needs an open polyline with at least 3 vertices");
    }
    if (!adjacent_only && n > triple_vertex_cap) {
        detail::domain_fail("triangle_condition_constant", "too many vertices for the all-triples sweep (cap 1500)");
    }
    const auto &p = c.points();
    double m = 1;
    auto visit = [&](Eigen::Index i, Eigen::Index j, Eigen::Index k) {
        const double base = dist(p, i, k);
        if (!(base > 0)) {
            detail::domain_fail("triangle_condition_constant", "zero denominator: repeated point");
        }
        m = std::max(m, (dist(p, i, j) + dist(p, j, k)) / base);
    };
    if (adjacent_only) {
        for (Eigen::Index i = 0; i + 2 < n; ++i) {
            visit(i, i + 1, i + 2);
        }
        return m;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = i + 2; k < n; ++k) {
            for (Eigen::Index j = i + 1; j < k; ++j) {
                visit(i, j, k);
            }
        }
    }
    return m;
}

HyperplaneFit linear_approx_delta(const PointSet &e, const Vec &x, double r)
{
    const auto idx = local_indices(e, x, r, "linear_approx_delta");
    if (idx.size() < 2) {
        detail::domain_fail("linear_approx_delta", "fewer than 2 points in B(x,r)");
    }
    constexpr int sweep = 3600;
    const double step = pi / sweep;
    double best_theta = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < sweep; ++i) {
        const double w = slab_width(e, idx, x, i * step);
        if (w < best) {
            best = w;
            best_theta = i * step;
        }
    }
    // golden-section refinement inside the neighbouring sweep cells
    const double g = (std::sqrt(5.0) - 1) / 2;
    double lo = best_theta - step;
    double hi = best_theta + step;
    double c1 = hi - g * (hi - lo);
    double c2 = lo + g * (hi - lo);
    double f1 = slab_width(e, idx, x, c1);
    double f2 = slab_width(e, idx, x, c2);
    for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
        if (f1 <= f2) {
            hi = c2;
            c2 = c1;
            f2 = f1;
            c1 = hi - g * (hi - lo);
            f1 = slab_width(e, idx, x, c1);
        } else {
            lo = c1;
            c1 = c2;
            f1 = f2;
            c2 = lo + g * (hi - lo);
            f2 = slab_width(e, idx, x, c2);
        }
    }
    const double theta = f1 <= f2 ? c1 : c2;
    const double refined = std::min(f1, f2);
    const double chosen = refined < best ? theta : best_theta;
    return {x, Vec(std::cos(chosen), std::sin(chosen)), std::min(refined, best) / r};
}

double thickness_constant(const PointSet &e, const Vec &x, double r)
{
    const auto idx = local_indices(e, x, r, "thickness_constant");
    if (idx.size() < 3) {
        detail::domain_fail("thickness_constant", "fewer than 3 points in B(x,r)");
    }
    if (static_cast<Eigen::Index>(idx.size()) > triple_vertex_cap) {
        detail::domain_fail("thickness_constant", "too many local points (cap 1500)");
    }
    double area = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            const Vec u = e.col(idx[j]) - e.col(idx[i]);
            for (std::size_t k = j + 1; k < idx.size(); ++k) {
                const Vec v = e.col(idx[k]) - e.col(idx[i]);
                area = std::max(area, std::abs(u.x() * v.y() - u.y() * v.x()) / 2);
            }
        }
    }
    return area / (r * r);
}

double box_dimension(const Polyline &c, const std::vector<double> &scales)
{
    if (scales.size() < 2) {
        detail::domain_fail("box_dimension", "needs at least 2 scales");
    }
    for (const double s : scales) {
        if (!(s > 0) || !std::isfinite(s)) {
            detail::domain_fail("box_dimension", "scales must be positive and finite");
        }
    }
    const auto [smin, smax] = std::minmax_element(scales.begin(), scales.end());
    if (*smax < 10 * *smin) {
        detail::domain_fail("box_dimension", "scales must span at least a decade");
    }
    const auto &p = c.points();
    const Vec origin = p.rowwise().minCoeff();
    const auto k = static_cast<Eigen::Index>(scales.size());
    Eigen::MatrixXd design(k, 2);
    Eigen::VectorXd counts(k);
    for (Eigen::Index row = 0; row < k; ++row) {
        const double s = scales[static_cast<std::size_t>(row)];
        std::unordered_set<std::uint64_t> boxes;
        auto mark = [&](const Vec &q) {
            const auto ix = static_cast<std::int64_t>(std::floor((q.x() - origin.x()) / s));
            const auto iy = static_cast<std::int64_t>(std::floor((q.y() - origin.y()) / s));
            boxes.insert((static_cast<std::uint64_t>(ix) << 32) ^ static_cast<std::uint64_t>(iy & 0xffffffff));
        };
        for (Eigen::Index i = 0; i < c.edge_count(); ++i) {
            const Vec a = p.col(i);
            const Vec b = p.col((i + 1) % c.size());
            const auto pieces = static_cast<int>(std::ceil((b - a).norm() / (s / 8)));
            for (int t = 0; t <= pieces; ++t) {
                mark(a + (b - a) * (double(t) / pieces));
            }
        }
        design(row, 0) = 1;
        design(row, 1) = -std::log(s);
        counts(row) = std::log(double(boxes.size()));
    }
    const Eigen::Vector2d fit = design.colPivHouseholderQr().solve(counts);
    return fit(1);
}

std::vector<double> default_box_scales(const Polyline &c, int count)
{
    if (count < 2) {
        detail::domain_fail("default_box_scales", "needs at least 2 scales");
    }
    const double top = diameter(c.points()) / 4;
    const double bottom = 2 * median_edge_length(c);
    if (!(top >= 10 * bottom)) {
        detail::domain_fail("default_box_scales", "curve too coarse: scales would not span a decade");
    }
    std::vector<double> out;
    const double ratio = std::log(bottom / top) / (count - 1);
    for (int i = 0; i < count; ++i) {
        out.push_back(top * std::exp(ratio * i));
    }
    return out;
}

double chordal(const ExtendedPoint &x, const ExtendedPoint &y)
{
    if (x.at_infinity && y.at_infinity) {
        return 0;
    }
    if (x.at_infinity || y.at_infinity) {
        const Vec &f = x.at_infinity ? y.p : x.p;
        return 1 / std::sqrt(1 + f.squaredNorm());
    }
    return (x.p - y.p).norm() / (std::sqrt(1 + x.p.squaredNorm()) * std::sqrt(1 + y.p.squaredNorm()));
}

double abs_ratio(const ExtendedPoint &a, const ExtendedPoint &b, const ExtendedPoint &c, const ExtendedPoint &d)
{
    const double den = chordal(a, b) * chordal(c, d);
    if (!(den > 0)) {
        detail::domain_fail("abs_ratio", "zero denominator: a = b or c = d");
    }
    return chordal(a, c) * chordal(b, d) / den;
}

double rho_disk(const Vec &a, const Vec &b)
{
    if (!(a.norm() < 1) || !(b.norm() < 1)) {
        detail::domain_fail("rho_disk", "points must lie in the open unit disk");
    }
    if (a == b) {
        return 0;
    }
    // z -> (z - a)/(1 - conj(a) z) moves a to 0; the geodesic becomes the
    // diameter through the image of b, whose endpoints are pulled back.
    const auto za = as_complex(a);
    const auto w = (as_complex(b) - za) / (1.0 - std::conj(za) * as_complex(b));
    const auto end = w / std::abs(w);
    auto back = [&](std::complex<double> z) { return as_vec((z + za) / (1.0 + std::conj(za) * z)); };
    const Vec a_end = back(-end);
    const Vec b_end = back(end);
    return std::log(abs_ratio(a_end, a, b, b_end));
}

bool strictly_inside(const Polyline &boundary, const Vec &x)
{
    const auto &p = boundary.points();
    const Eigen::Index n = boundary.size();
    bool inside = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        const Vec u = p.col(i);
        const Vec v = p.col((i + 1) % n);
        const Vec e = v - u;
        const Vec w = x - u;
        const double cross = e.x() * w.y() - e.y() * w.x();
        const double along = e.dot(w);
        if (std::abs(cross) <= 1e-14 * e.norm() * std::max(1.0, w.norm()) && along >= 0 && along <= e.squaredNorm()) {
            return false;
        }
        if ((u.y() > x.y()) != (v.y() > x.y())) {
            const double t = (x.y() - u.y()) / (v.y() - u.y());
            if (x.x() < u.x() + t * e.x()) {
                inside = !inside;
            }
        }
    }
    return inside;
}

double boundary_metric_estimate(const Polyline &boundary, const Vec &a, const Vec &b, BoundaryMetric mode)
{
    if (!boundary.closed() || boundary.size() < 3) {
        detail::domain_fail("boundary_metric_estimate", "boundary must be a closed polyline with at least 3 vertices");
    }
    if (!strictly_inside(boundary, a) || !strictly_inside(boundary, b)) {
        detail::domain_fail("boundary_metric_estimate", "points must lie strictly inside the boundary");
    }
    if (a == b) {
        return 0;
    }
    const auto &p = boundary.points();
    const Eigen::Index n = boundary.size();
    double sup = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            const Vec c = p.col(i);
            const Vec d = p.col(j);
            const double v = mode == BoundaryMetric::AbsoluteRatio ? abs_ratio(a, c, b, d) : abs_ratio(c, a, b, d);
            sup = std::max(sup, v);
        }
    }
    return mode == BoundaryMetric::AbsoluteRatio ? std::log1p(sup) : std::log(sup);
}

void write_polyline_csv(std::ostream &out, const Polyline &c)
{
    out << "x,y\n";
    char buf[64];
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", c.points()(0, i), c.points()(1, i));
        out << buf;
    }
}

Polyline read_polyline_csv(std::istream &in, bool closed)
{
    std::string line;
    std::size_t number = 0;
    bool header = false;
    std::vector<Vec> pts;
    while (std::getline(in, line)) {
        ++number;
        const auto text = trim(line);
        if (text.empty()) {
            continue;
        }
        if (!header) {
            const auto comma = text.find(',');
            if (comma == std::string_view::npos || trim(text.substr(0, comma)) != "x"
                || trim(text.substr(comma + 1)) != "y") {
                throw CsvError(number, "expected header x,y");
            }
            header = true;
            continue;
        }
        const auto comma = text.find(',');
        if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
            throw CsvError(number, "expected two comma-separated fields");
        }
        Vec v;
        if (!parse_double(text.substr(0, comma), v.x()) || !parse_double(text.substr(comma + 1), v.y())) {
            throw CsvError(number, "coordinates must be finite numbers");
        }
        if (!pts.empty() && pts.back() == v) {
            throw CsvError(number, "repeats the previous vertex");
        }
        pts.push_back(v);
    }
    if (!header) {
        throw CsvError(number + 1, "missing header x,y");
    }
    if (pts.size() < 2) {
        throw CsvError(number + 1, "needs at least two vertices");
    }
    if (closed && pts.front() == pts.back()) {
        pts.pop_back();
        if (pts.size() < 2) {
            throw CsvError(number, "needs at least two distinct vertices");
        }
    }
    PointSet m(2, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        m.col(static_cast<Eigen::Index>(i)) = pts[i];
    }
    return Polyline::make(std::move(m), closed);
}

} // namespace qcf
