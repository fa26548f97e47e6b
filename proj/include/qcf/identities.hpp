// Registry of modular equations, functional identities and inequalities for
// mu, mu_a, phi_K and K(r), evaluated as residuals over parameter grids.

#ifndef QCF_IDENTITIES_HPP
#define QCF_IDENTITIES_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qcf
{

enum class CaseKind { Equality, Inequality, MonotoneProperty };

enum class IdentityId {
    LJ3,
    RamanujanE1,
    RamanujanE2,
    RamanujanE3,
    RamanujanE4,
    RamanujanE5a,
    RamanujanE5b,
    PhiId1,
    PhiId2,
    PhiId3,
    PhiId4,
    PhiId5,
    Fixed1,
    Fixed2,
    Fixed3,
    Fixed4,
    Fixed5,
    BBG2,
    BBG5,
    BBG11,
    PhiGroup1,
    PhiGroup2,
    PhiGroup3,
    PhiGroup4,
    RamIdCase,
    Landen,
    LandenIneq,
    MuSub,
    MuSuper,
    MuDup,
    MuProd,
    MeanChain,
    KBracketLower,
    KBracketUpper,
    LambdaBracketLower,
    LambdaBracketUpper,
    QiuBracket,
    KLogQuotient,
    MuPlusLog,
    PhiId4AsPrinted,
};

struct IdentityCase
{
    IdentityId id;
    std::string_view name;
    CaseKind kind;
    std::vector<std::string_view> params;
    double tolerance;
    /// Cases outside the gate are reported but never fail a suite run.
    bool gated;
    /// Inequalities that must hold with positive slack everywhere.
    bool strict;
    std::string_view statement;
};

const std::vector<IdentityCase> &identity_cases();
const IdentityCase &identity_case(IdentityId id);
std::optional<IdentityId> identity_from_name(std::string_view name);

/// Case ids of one kind, or all when kind is empty; ungated cases are
/// included only on request.
std::vector<IdentityId> cases_of_kind(std::optional<CaseKind> kind, bool include_ungated = true);

/// Equality: signed residual LHS - RHS (relative for Landen and RamIdCase).
/// Inequality: minimum normalized slack (rhs - lhs) / max(1, |rhs|).
/// MonotoneProperty: normalized drop f(r - 1e-3) - f(r + 1e-3), positive when decreasing.
/// Throws DomainError for points outside the case's domain.
double residual(IdentityId id, std::span<const double> point);

/// True when the point lies in the case's domain.
bool in_domain(IdentityId id, std::span<const double> point);

/// True at points where the stated inequality becomes an equality.
bool is_equality_point(IdentityId id, std::span<const double> point);

using GridOverrides = std::map<std::string, std::vector<double>, std::less<>>;

/// Default grid for a parameter name of a given case.
std::vector<double> default_grid(IdentityId id, std::string_view param);

struct ResidualReport
{
    std::string case_name;
    CaseKind kind;
    std::string grid;
    /// Equality: max |residual|. Inequality/monotone: max violation max(0, -slack).
    double max_abs_residual = 0;
    double min_slack = 0;
    std::vector<double> worst_point;
    /// Max |slack| over points where the inequality is stated to be sharp.
    std::optional<double> equality_residual;
    double tolerance = 0;
    bool pass = false;
    bool gated = true;
    std::size_t points = 0;
    std::size_t skipped = 0;
    std::string error;
    std::string note;
};

ResidualReport run_case(IdentityId id, const GridOverrides &overrides = {});
std::vector<ResidualReport> run_suite(std::span<const IdentityId> cases, const GridOverrides &overrides = {});

inline constexpr double default_equality_tolerance = 1e-9;
inline constexpr double default_inequality_tolerance = 1e-11;
inline constexpr double equality_point_tolerance = 1e-9;

// Numerical experiments on open problems: observations only, never asserted.

enum class ExperimentId { QMaclaurin, NewtonMonotone, ArtanhRatio, LinearizePhiA };

struct ExperimentTable
{
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> notes;
};

using ExperimentParams = std::map<std::string, double, std::less<>>;

std::optional<ExperimentId> experiment_from_name(std::string_view name);
std::string_view experiment_name(ExperimentId id);

/// QMaclaurin: a, b (a+b <= 1), terms. NewtonMonotone: y, iterations.
/// ArtanhRatio: K, points. LinearizePhiA: a, K, from, to, step.
ExperimentTable run_experiment(ExperimentId id, const ExperimentParams &params = {});

/// Maclaurin coefficients of G(r) = (Q(r) - 1)/(1 - r), where
/// Q(r) = B(a,b) F(a,b;a+b;r) / log(e^{R(a,b)}/(1-r)).
std::vector<double> q_maclaurin_coefficients(double a, double b, int terms);

} // namespace qcf

#endif
