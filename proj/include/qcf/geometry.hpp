// Planar quasicircle generation and brute-force estimators for geometric
// constants and boundary metrics. Point sets are 2xN matrices, one point per
// column. Suprema over continua are taken over vertices only, so sup-type
// quantities are lower estimates that refine with sampling.

#ifndef QCF_GEOMETRY_HPP
#define QCF_GEOMETRY_HPP

#include <Eigen/Core>

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcf
{

using PointSet = Eigen::Matrix2Xd;

class Polyline
{
public:
    /// Checks finiteness, at least two points and distinct consecutive points
    /// (including last -> first when closed).
    static Polyline make(PointSet points, bool closed);

    const PointSet &points() const { return points_; }
    bool closed() const { return closed_; }
    Eigen::Index size() const { return points_.cols(); }
    Eigen::Index edge_count() const { return closed_ ? size() : size() - 1; }

private:
    Polyline(PointSet points, bool closed) : points_(std::move(points)), closed_(closed) {}

    PointSet points_;
    bool closed_;
};

struct HyperplaneFit
{
    Eigen::Vector2d base;
    Eigen::Vector2d direction;
    double delta;
};

/// A point of the extended plane; `at_infinity` marks the point at infinity.
struct ExtendedPoint
{
    Eigen::Vector2d p = Eigen::Vector2d::Zero();
    bool at_infinity = false;

    ExtendedPoint() = default;
    ExtendedPoint(const Eigen::Vector2d &v) : p(v) {}
    static ExtendedPoint infinity()
    {
        ExtendedPoint e;
        e.at_infinity = true;
        return e;
    }
};

enum class BoundaryMetric { AbsoluteRatio, Apollonian };

inline constexpr int koch_level_cap = 12;
inline constexpr Eigen::Index ahlfors_vertex_cap = 5000;
inline constexpr Eigen::Index triple_vertex_cap = 1500;

/// Snowflake on the unit equilateral triangle (counterclockwise); every edge
/// is replaced by four with an outward bump whose base angles are angle_deg.
Polyline koch_curve(int level, double angle_deg = 60);

Polyline regular_polygon(int n, double radius = 1);

double perimeter(const Polyline &c);
double diameter(const PointSet &e);
double set_distance(const PointSet &e, const PointSet &f);
double median_edge_length(const Polyline &c);

/// min{d(E), d(F)} / d(E,F).
double relative_size(const PointSet &e, const PointSet &f);

/// max over vertex pairs of min{d(C1), d(C2)} / |a - b|, C1 and C2 the two
/// arcs between a and b (endpoints included).
double ahlfors_constant(const Polyline &c);

/// max over index triples i < j < k of (|a-b| + |b-c|) / |a-c|; with
/// adjacent_only, only k = j + 1 = i + 2.
double triangle_condition_constant(const Polyline &c, bool adjacent_only = false);

/// Smallest delta such that E within the closed ball B(x,r) lies in the
/// delta*r slab around some line through x.
HyperplaneFit linear_approx_delta(const PointSet &e, const Eigen::Vector2d &x, double r);

/// Largest triangle area over vertex triples in B(x,r), divided by r^2.
double thickness_constant(const PointSet &e, const Eigen::Vector2d &x, double r);

/// Least-squares slope of log N(s) against log(1/s), N(s) the number of grid
/// boxes of side s met by the curve.
double box_dimension(const Polyline &c, const std::vector<double> &scales);

/// `count` geometric scales from diam/4 down to twice the median edge length.
std::vector<double> default_box_scales(const Polyline &c, int count = 10);

/// Chordal distance; q(x, infinity) = 1/sqrt(1 + |x|^2).
double chordal(const ExtendedPoint &x, const ExtendedPoint &y);

/// |a,b,c,d| = q(a,c) q(b,d) / (q(a,b) q(c,d)).
double abs_ratio(const ExtendedPoint &a, const ExtendedPoint &b, const ExtendedPoint &c, const ExtendedPoint &d);

/// Hyperbolic distance in the unit disk, log |a*, a, b, b*| with a*, b* the
/// endpoints of the geodesic through a and b.
double rho_disk(const Eigen::Vector2d &a, const Eigen::Vector2d &b);

/// True when x lies strictly inside the closed polyline (even-odd rule) and
/// off its edges.
bool strictly_inside(const Polyline &boundary, const Eigen::Vector2d &x);

/// AbsoluteRatio: log(1 + sup |a,c,b,d|). Apollonian: sup log |c,a,b,d|.
/// Suprema over boundary vertex pairs.
double boundary_metric_estimate(const Polyline &boundary, const Eigen::Vector2d &a, const Eigen::Vector2d &b,
                                BoundaryMetric mode);

/// Malformed polyline CSV input; carries the 1-based line number.
class CsvError : public std::runtime_error
{
public:
    CsvError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Header `x,y`, one vertex per row, 17 significant digits.
void write_polyline_csv(std::ostream &out, const Polyline &c);
Polyline read_polyline_csv(std::istream &in, bool closed);

} // namespace qcf

#endif
