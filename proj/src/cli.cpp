#include "qcf/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "qcf/bounds.hpp"
#include "qcf/distortion.hpp"
#include "qcf/errors.hpp"
#include "qcf/geometry.hpp"
#include "qcf/identities.hpp"
#include "qcf/means.hpp"
#include "qcf/modulus.hpp"
#include "qcf/specfun.hpp"

namespace qcf::cli
{

namespace
{

using json = nlohmann::ordered_json;
using UR = UnitRadius<double>;

/// Bad flags or values detected before any computation.
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Numeric flags shared by eval, table and bounds.
const std::vector<std::string> numeric_flags = {"r", "s", "t", "K", "a", "x", "y", "n", "M", "alpha", "pa", "pb", "pc"};

struct NumericArgs
{
    std::map<std::string, std::optional<double>> values;

    void attach(CLI::App *app)
    {
        for (const auto &name : numeric_flags) {
            app->add_option("--" + name, values[name], "value of " + name);
        }
    }

    std::optional<double> get(const std::string &name) const
    {
        const auto it = values.find(name);
        return it == values.end() ? std::nullopt : it->second;
    }
};

using Args = std::map<std::string, double, std::less<>>;

struct Interval
{
    double lo;
    double hi;
    bool lo_open;
    bool hi_open;

    bool contains(double v) const
    {
        return std::isfinite(v) && (lo_open ? v > lo : v >= lo) && (hi_open ? v < hi : v <= hi);
    }

    std::string text() const
    {
        return std::string(lo_open ? "(" : "[") + num(lo) + ", " + (std::isinf(hi) ? "inf" : num(hi))
            + (hi_open ? ")" : "]");
    }
};

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr Interval unit_open{0, 1, true, true};
constexpr Interval dilatation{1, inf, false, true};
constexpr Interval positive{0, inf, true, true};
constexpr Interval non_negative{0, inf, false, true};
constexpr Interval real_line{-inf, inf, true, true};

struct Variable
{
    std::string name;
    Interval domain;
};

struct FunctionDef
{
    std::string name;
    std::string description;
    std::vector<Variable> vars;  // first is the default sweep variable
    bool signature;              // accepts --a
    std::function<double(const Args &)> eval;
};

Signature<double> signature_of(const Args &a)
{
    const auto it = a.find("a");
    return it == a.end() ? Signature<double>::half() : Signature<double>::make(it->second);
}

const std::vector<FunctionDef> &functions()
{
    static const std::vector<FunctionDef> defs = {
        {"K", "complete elliptic integral K(r)", {{"r", unit_open}}, false,
         [](const Args &a) { return ellint_K(a.at("r")); }},
        {"mu", "Groetzsch modulus mu(r), or mu_a(r) with --a", {{"r", unit_open}}, true,
         [](const Args &a) { return mu_a(signature_of(a), UR::from_r(a.at("r"))); }},
        {"muprime", "derivative of mu_a(r) in r", {{"r", unit_open}}, true,
         [](const Args &a) { return mu_a_derivative(signature_of(a), UR::from_r(a.at("r"))); }},
        {"phiK", "distortion function phi_K(r), or phi^a_K(r) with --a", {{"r", unit_open}, {"K", positive}}, true,
         [](const Args &a) { return phi_aK(signature_of(a), a.at("K"), UR::from_r(a.at("r"))).r(); }},
        {"eta", "quasisymmetry function eta_{K,2}(t)", {{"t", non_negative}, {"K", dilatation}}, false,
         [](const Args &a) { return eta_K2(Dilatation<double>::make(a.at("K")), a.at("t")); }},
        {"lambda", "linear dilatation bound lambda(K)", {{"K", dilatation}}, false,
         [](const Args &a) { return lambda_of_K(Dilatation<double>::make(a.at("K"))); }},
        {"g", "linearized distortion p(phi_K(q(x))), or with phi^a_K under --a", {{"x", real_line}, {"K", dilatation}},
         true,
         [](const Args &a) {
             return linearized_g_a(signature_of(a), Dilatation<double>::make(a.at("K")), a.at("x"));
         }},
        {"schottky", "Schottky function Psi(r,t)", {{"r", {0, 1, false, true}}, {"t", positive}}, false,
         [](const Args &a) { return schottky_psi(a.at("r"), a.at("t")); }},
        {"gamma2", "Groetzsch capacity gamma_2(s)", {{"s", {1, inf, true, true}}}, false,
         [](const Args &a) { return grotzsch_gamma2(a.at("s")); }},
        {"tau2", "Teichmueller capacity tau_2(t)", {{"t", positive}}, false,
         [](const Args &a) { return teichmuller_tau2(a.at("t")); }},
        {"p", "product r exp(mu(r)) by the AGM", {{"r", unit_open}}, false,
         [](const Args &a) { return agm_product_p(UR::from_r(a.at("r"))); }},
        {"agm", "arithmetic-geometric mean AG(x,y)", {{"x", positive}, {"y", positive}}, false,
         [](const Args &a) { return agm(a.at("x"), a.at("y")); }},
        {"F", "Gauss hypergeometric F(pa,pb;pc;x)",
         {{"x", {-1, 1, true, true}}, {"pa", real_line}, {"pb", real_line}, {"pc", positive}}, false,
         [](const Args &a) {
             return gauss_F(HypergeomParams<double>::make(a.at("pa"), a.at("pb"), a.at("pc")), a.at("x"));
         }},
    };
    return defs;
}

const FunctionDef &function_by_name(const std::string &name)
{
    for (const auto &f : functions()) {
        if (f.name == name) {
            return f;
        }
    }
    std::string known;
    for (const auto &f : functions()) {
        known += (known.empty() ? "" : ", ") + f.name;
    }
    throw UsageError("unknown function '" + name + "' (known: " + known + ")");
}

void check_value(const std::string &fn, const Variable &v, double value)
{
    if (!v.domain.contains(value)) {
        throw UsageError(fn + ": --" + v.name + " = " + num(value) + " outside " + v.domain.text());
    }
}

// Collects and validates the function's parameters; `skip` names the sweep variable.
Args gather(const FunctionDef &f, const NumericArgs &flags, const std::string &skip = "")
{
    Args out;
    for (const auto &v : f.vars) {
        if (v.name == skip) {
            continue;
        }
        const auto value = flags.get(v.name);
        if (!value) {
            throw UsageError(f.name + ": missing --" + v.name);
        }
        check_value(f.name, v, *value);
        out[v.name] = *value;
    }
    if (const auto a = flags.get("a"); a && f.signature) {
        if (!(*a > 0 && *a < 1)) {
            throw UsageError(f.name + ": --a must lie in (0, 1)");
        }
        out["a"] = *a;
    }
    for (const auto &name : numeric_flags) {
        if (!flags.get(name) || out.count(name) || name == skip) {
            continue;
        }
        throw UsageError(f.name + ": flag --" + name + " does not apply");
    }
    return out;
}

json params_json(const Args &a)
{
    json j = json::object();
    for (const auto &[k, v] : a) {
        j[k] = v;
    }
    return j;
}

std::vector<double> sweep_grid(double from, double to, double step)
{
    if (!std::isfinite(from) || !std::isfinite(to) || !(from < to)) {
        throw UsageError("need finite --from < --to");
    }
    if (!(step > 0) || !std::isfinite(step)) {
        throw UsageError("--step must be positive");
    }
    const double count = std::floor((to - from) / step * (1 + 1e-12));
    if (count > 1e6) {
        throw UsageError("sweep has more than 1e6 points");
    }
    std::vector<double> grid;
    for (long i = 0; i <= static_cast<long>(count); ++i) {
        grid.push_back(from + i * step);
    }
    return grid;
}

// from:to:step or a comma list
std::vector<double> parse_list(const std::string &text)
{
    auto number = [&](const std::string &s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            throw UsageError("bad number '" + s + "' in '" + text + "'");
        }
        if (used != s.size()) {
            throw UsageError("bad number '" + s + "' in '" + text + "'");
        }
        return v;
    };
    std::vector<std::string> parts;
    const char sep = text.find(':') != std::string::npos ? ':' : ',';
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        parts.push_back(item);
    }
    if (sep == ':') {
        if (parts.size() != 3) {
            throw UsageError("range must be from:to:step, got '" + text + "'");
        }
        return sweep_grid(number(parts[0]), number(parts[1]), number(parts[2]));
    }
    std::vector<double> out;
    for (const auto &p : parts) {
        out.push_back(number(p));
    }
    if (out.empty()) {
        throw UsageError("empty list");
    }
    return out;
}

std::pair<std::string, std::string> split_assignment(const std::string &text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw UsageError("expected name=value, got '" + text + "'");
    }
    return {text.substr(0, eq), text.substr(eq + 1)};
}

std::string kind_name(CaseKind k)
{
    switch (k) {
    case CaseKind::Equality:
        return "Equality";
    case CaseKind::Inequality:
        return "Inequality";
    case CaseKind::MonotoneProperty:
        return "MonotoneProperty";
    }
    return "";
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// --- subcommands -----------------------------------------------------------

struct EvalOptions
{
    std::string fn;
    std::string format = "text";
    NumericArgs flags;
};

int do_eval(const EvalOptions &o, std::ostream &out)
{
    const auto &f = function_by_name(o.fn);
    const Args args = gather(f, o.flags);
    const double value = f.eval(args);
    if (o.format == "json") {
        json j;
        j["function"] = f.name;
        j["params"] = params_json(args);
        j["value"] = nullable(value);
        out << j.dump(2) << "\n";
    } else {
        out << num(value) << "\n";
    }
    return ok;
}

struct InvertOptions
{
    std::string fn;
    double y = 0;
    std::optional<double> a;
    std::string format = "text";
};

int do_invert(const InvertOptions &o, std::ostream &out)
{
    double r = 0;
    std::optional<double> complement;
    if (o.fn == "mu") {
        if (!(o.y > 0) || !std::isfinite(o.y)) {
            throw UsageError("invert mu: --y must be positive");
        }
        if (o.a && !(*o.a > 0 && *o.a < 1)) {
            throw UsageError("invert mu: --a must lie in (0, 1)");
        }
        const auto sig = o.a ? Signature<double>::make(*o.a) : Signature<double>::half();
        const UR u = mu_a_inv(sig, o.y);
        r = u.r();
        complement = u.complement();
    } else if (o.fn == "tau2") {
        if (!(o.y > 0) || !std::isfinite(o.y)) {
            throw UsageError("invert tau2: --y must be positive");
        }
        if (o.a) {
            throw UsageError("invert tau2: --a does not apply");
        }
        r = teichmuller_tau2_inv(o.y);
    } else {
        throw UsageError("invert: unknown function '" + o.fn + "' (known: mu, tau2)");
    }
    if (o.format == "json") {
        json j;
        j["function"] = o.fn;
        j["y"] = o.y;
        if (o.a) {
            j["a"] = *o.a;
        }
        j["value"] = r;
        if (complement) {
            j["complement"] = *complement;
        }
        out << j.dump(2) << "\n";
    } else {
        out << num(r) << "\n";
    }
    return ok;
}

struct TableOptions
{
    std::string fn;
    std::string var;
    double from = 0;
    double to = 0;
    double step = 0;
    std::string format = "csv";
    NumericArgs flags;
};

int do_table(const TableOptions &o, std::ostream &out)
{
    const auto &f = function_by_name(o.fn);
    const std::string var = o.var.empty() ? f.vars.front().name : o.var;
    const auto sweep = std::find_if(f.vars.begin(), f.vars.end(), [&](const Variable &v) { return v.name == var; });
    if (sweep == f.vars.end()) {
        throw UsageError(f.name + ": cannot sweep '" + var + "'");
    }
    if (o.flags.get(var)) {
        throw UsageError(f.name + ": --" + var + " is the sweep variable; use --from/--to/--step");
    }
    const Args fixed = gather(f, o.flags, var);
    const auto grid = sweep_grid(o.from, o.to, o.step);
    check_value(f.name, *sweep, grid.front());
    check_value(f.name, *sweep, grid.back());

    std::vector<double> values(grid.size(), std::nan(""));
    std::vector<std::string> errors(grid.size());
    bool any_error = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Args args = fixed;
        args[var] = grid[i];
        try {
            values[i] = f.eval(args);
        } catch (const std::exception &e) {
            errors[i] = e.what();
            any_error = true;
        }
    }
    if (o.format == "json") {
        json j;
        j["function"] = f.name;
        j["params"] = params_json(fixed);
        j["variable"] = var;
        j["grid"] = grid;
        json vals = json::array();
        json errs = json::array();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            vals.push_back(errors[i].empty() ? nullable(values[i]) : json(nullptr));
            errs.push_back(errors[i].empty() ? json(nullptr) : json(errors[i]));
        }
        j["values"] = vals;
        j["errors"] = errs;
        out << j.dump(2) << "\n";
    } else {
        out << var << ",value,error\n";
        for (std::size_t i = 0; i < grid.size(); ++i) {
            std::string message = errors[i];
            std::replace(message.begin(), message.end(), ',', ';');
            out << num(grid[i]) << "," << (errors[i].empty() ? num(values[i]) : "") << "," << message << "\n";
        }
    }
    return any_error ? failure : ok;
}

struct ResidualOptions
{
    std::string suite;
    std::vector<std::string> cases;
    std::string grid;
    std::vector<std::string> sets;
};

int do_residuals(const ResidualOptions &o, std::ostream &out)
{
    std::vector<IdentityId> ids;
    if (!o.suite.empty()) {
        if (o.suite == "all") {
            ids = cases_of_kind(std::nullopt, true);
        } else if (o.suite == "gated") {
            ids = cases_of_kind(std::nullopt, false);
        } else if (o.suite == "equality") {
            ids = cases_of_kind(CaseKind::Equality, true);
        } else if (o.suite == "inequality") {
            ids = cases_of_kind(CaseKind::Inequality, true);
        } else if (o.suite == "monotone") {
            ids = cases_of_kind(CaseKind::MonotoneProperty, true);
        } else {
            throw UsageError("unknown suite '" + o.suite + "' (all, gated, equality, inequality, monotone)");
        }
    }
    for (const auto &name : o.cases) {
        const auto id = identity_from_name(name);
        if (!id) {
            throw UsageError("unknown case '" + name + "'");
        }
        if (std::find(ids.begin(), ids.end(), *id) == ids.end()) {
            ids.push_back(*id);
        }
    }
    if (ids.empty()) {
        throw UsageError("residuals: select --suite or at least one --case");
    }
    GridOverrides overrides;
    if (!o.grid.empty()) {
        const auto g = parse_list(o.grid);
        overrides["r"] = g;
        overrides["s"] = g;
    }
    for (const auto &s : o.sets) {
        const auto [name, list] = split_assignment(s);
        overrides[name] = parse_list(list);
    }

    bool all_pass = true;
    json arr = json::array();
    for (const auto &r : run_suite(ids, overrides)) {
        json j;
        j["case"] = r.case_name;
        j["kind"] = kind_name(r.kind);
        j["grid"] = r.grid;
        j["max_residual"] = nullable(r.max_abs_residual);
        j["min_slack"] = nullable(r.min_slack);
        j["worst_point"] = r.worst_point;
        j["equality_residual"] = r.equality_residual ? nullable(*r.equality_residual) : json(nullptr);
        j["tolerance"] = r.tolerance;
        j["pass"] = r.pass;
        j["gated"] = r.gated;
        j["points"] = r.points;
        j["skipped"] = r.skipped;
        if (!r.error.empty()) {
            j["error"] = r.error;
        }
        if (!r.note.empty()) {
            j["note"] = r.note;
        }
        arr.push_back(j);
        if (r.gated && !r.pass) {
            all_pass = false;
        }
    }
    out << arr.dump(2) << "\n";
    return all_pass ? ok : failure;
}

struct ExperimentOptions
{
    std::string name;
    std::vector<std::string> params;
    std::string format = "json";
};

int do_experiment(const ExperimentOptions &o, std::ostream &out)
{
    const auto id = experiment_from_name(o.name);
    if (!id) {
        throw UsageError("unknown experiment '" + o.name + "' (QMaclaurin, NewtonMonotone, ArtanhRatio, LinearizePhiA)");
    }
    ExperimentParams params;
    for (const auto &p : o.params) {
        const auto [name, value] = split_assignment(p);
        const auto list = parse_list(value);
        if (list.size() != 1) {
            throw UsageError("experiment parameter '" + name + "' takes one value");
        }
        params[name] = list.front();
    }
    const auto table = run_experiment(*id, params);
    if (o.format == "csv") {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            out << (c ? "," : "") << table.columns[c];
        }
        out << "\n";
        for (const auto &row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << (c ? "," : "") << num(row[c]);
            }
            out << "\n";
        }
        for (const auto &n : table.notes) {
            out << "# " << n << "\n";
        }
    } else {
        json j;
        j["experiment"] = table.name;
        j["params"] = params;
        j["columns"] = table.columns;
        json rows = json::array();
        for (const auto &row : table.rows) {
            json r = json::array();
            for (double v : row) {
                r.push_back(nullable(v));
            }
            rows.push_back(r);
        }
        j["rows"] = rows;
        j["notes"] = table.notes;
        out << j.dump(2) << "\n";
    }
    return ok;
}

struct BoundsOptions
{
    std::string id;
    bool list = false;
    NumericArgs flags;
};

int do_bounds(const BoundsOptions &o, std::ostream &out)
{
    if (o.list) {
        json arr = json::array();
        for (const auto &info : bound_catalog()) {
            json j;
            j["id"] = info.name;
            j["params"] = std::vector<std::string>(info.params.begin(), info.params.end());
            j["required"] = info.required;
            j["formula"] = info.formula;
            arr.push_back(j);
        }
        out << arr.dump(2) << "\n";
        return ok;
    }
    if (o.id.empty()) {
        throw UsageError("bounds: give --id or --list");
    }
    const auto id = bound_from_name(o.id);
    if (!id) {
        throw UsageError("unknown bound '" + o.id + "'");
    }
    const auto &info = bound_info(*id);
    std::vector<double> values;
    json params = json::object();
    bool gap = false;
    for (std::size_t i = 0; i < info.params.size(); ++i) {
        const std::string name(info.params[i]);
        const auto v = o.flags.get(name);
        if (!v) {
            if (i < info.required) {
                throw UsageError(o.id + ": missing --" + name);
            }
            gap = true;
            continue;
        }
        if (gap) {
            throw UsageError(o.id + ": --" + name + " needs the earlier optional parameters");
        }
        values.push_back(*v);
        params[name] = *v;
    }
    for (const auto &name : numeric_flags) {
        if (o.flags.get(name)
            && std::find(info.params.begin(), info.params.end(), std::string_view(name)) == info.params.end()) {
            throw UsageError(o.id + ": flag --" + name + " does not apply");
        }
    }
    const double value = bound_value(*id, values);
    json j;
    j["bound"] = info.name;
    j["params"] = params;
    j["formula"] = info.formula;
    j["value"] = nullable(value);
    out << j.dump(2) << "\n";
    return ok;
}

struct GeomOptions
{
    // generate
    bool koch = false;
    int polygon = 0;
    int level = 0;
    double angle = 60;
    double radius = 1;
    std::string out_path;
    // check
    std::string in_path;
    bool open = false;
    std::string property;
    int scales = 10;
    bool adjacent = false;
    std::optional<double> x, y, r;
    std::vector<double> a, b;
    std::string mode = "absratio";
};

int do_generate(const GeomOptions &o, std::ostream &out)
{
    if (o.koch == (o.polygon > 0)) {
        throw UsageError("geom generate: give exactly one of --koch or --polygon N");
    }
    if (o.koch && (o.level < 0 || o.level > koch_level_cap)) {
        throw UsageError("geom generate: --level must lie in [0, 12]");
    }
    if (o.koch && !(o.angle > 0 && o.angle < 90)) {
        throw UsageError("geom generate: --angle must lie in (0, 90)");
    }
    if (o.polygon > 0 && (o.polygon < 3 || o.polygon > 10'000'000)) {
        throw UsageError("geom generate: --polygon must lie in [3, 1e7]");
    }
    const Polyline c = o.koch ? koch_curve(o.level, o.angle) : regular_polygon(o.polygon, o.radius);
    if (o.out_path.empty() || o.out_path == "-") {
        write_polyline_csv(out, c);
        return ok;
    }
    std::ofstream file(o.out_path);
    if (!file) {
        throw UsageError("cannot write " + o.out_path);
    }
    write_polyline_csv(file, c);
    file.close();
    if (!file) {
        throw std::runtime_error("failed writing " + o.out_path);
    }
    return ok;
}

Eigen::Vector2d point_flag(const std::vector<double> &v, const char *name)
{
    if (v.size() != 2) {
        throw UsageError(std::string("--") + name + " needs two numbers");
    }
    return {v[0], v[1]};
}

int do_check(const GeomOptions &o, std::ostream &out)
{
    static const std::vector<std::string> properties = {"ahlfors", "triangle", "boxdim", "perimeter", "diameter",
                                                        "linear", "thickness", "metric"};
    if (std::find(properties.begin(), properties.end(), o.property) == properties.end()) {
        throw UsageError("geom check: --property must be one of ahlfors, triangle, boxdim, perimeter, diameter, "
                         "linear, thickness, metric");
    }
    if (o.in_path.empty()) {
        throw UsageError("geom check: --in is required");
    }
    std::ifstream file(o.in_path);
    if (!file) {
        throw UsageError("cannot read " + o.in_path);
    }
    const Polyline c = read_polyline_csv(file, !o.open);

    json j;
    j["input"] = o.in_path;
    j["vertices"] = c.size();
    j["closed"] = c.closed();
    j["property"] = o.property;
    double value = 0;
    if (o.property == "ahlfors") {
        value = ahlfors_constant(c);
    } else if (o.property == "triangle") {
        value = triangle_condition_constant(c, o.adjacent);
        j["adjacent_only"] = o.adjacent;
    } else if (o.property == "boxdim") {
        if (o.scales < 2 || o.scales > 1000) {
            throw UsageError("geom check: --scales must lie in [2, 1000]");
        }
        const auto scales = default_box_scales(c, o.scales);
        value = box_dimension(c, scales);
        j["scales"] = scales;
    } else if (o.property == "perimeter") {
        value = perimeter(c);
    } else if (o.property == "diameter") {
        value = diameter(c.points());
    } else if (o.property == "linear" || o.property == "thickness") {
        if (!o.x || !o.y || !o.r) {
            throw UsageError("geom check: " + o.property + " needs --x, --y and --r");
        }
        const Eigen::Vector2d x(*o.x, *o.y);
        j["x"] = {*o.x, *o.y};
        j["r"] = *o.r;
        if (o.property == "linear") {
            const auto fit = linear_approx_delta(c.points(), x, *o.r);
            value = fit.delta;
            j["direction"] = {fit.direction.x(), fit.direction.y()};
        } else {
            value = thickness_constant(c.points(), x, *o.r);
        }
    } else {
        const auto a = point_flag(o.a, "a");
        const auto b = point_flag(o.b, "b");
        BoundaryMetric mode;
        if (o.mode == "absratio") {
            mode = BoundaryMetric::AbsoluteRatio;
        } else if (o.mode == "apollonian") {
            mode = BoundaryMetric::Apollonian;
        } else {
            throw UsageError("geom check: --mode must be absratio or apollonian");
        }
        value = boundary_metric_estimate(c, a, b, mode);
        j["a"] = o.a;
        j["b"] = o.b;
        j["mode"] = o.mode;
    }
    j["value"] = nullable(value);
    out << j.dump(2) << "\n";
    return ok;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Quasiconformal distortion functions, modular identities and quasicircle geometry", "qcf"};
    app.require_subcommand(1);

    EvalOptions eval;
    auto *eval_cmd = app.add_subcommand("eval", "evaluate a function at one point");
    eval_cmd->add_option("--fn", eval.fn, "function name")->required();
    eval_cmd->add_option("--format", eval.format)->check(CLI::IsMember({"text", "json"}));
    eval.flags.attach(eval_cmd);

    InvertOptions inv;
    auto *inv_cmd = app.add_subcommand("invert", "invert mu, mu_a or tau2");
    inv_cmd->add_option("--fn", inv.fn, "mu or tau2")->required();
    inv_cmd->add_option("--y", inv.y, "target value")->required();
    inv_cmd->add_option("--a", inv.a, "signature for mu_a");
    inv_cmd->add_option("--format", inv.format)->check(CLI::IsMember({"text", "json"}));

    TableOptions table;
    auto *table_cmd = app.add_subcommand("table", "tabulate a function over a sweep");
    table_cmd->add_option("--fn", table.fn, "function name")->required();
    table_cmd->add_option("--var", table.var, "sweep variable (default: the function's first)");
    table_cmd->add_option("--from", table.from)->required();
    table_cmd->add_option("--to", table.to)->required();
    table_cmd->add_option("--step", table.step)->required();
    table_cmd->add_option("--format", table.format)->check(CLI::IsMember({"csv", "json"}));
    table.flags.attach(table_cmd);

    ResidualOptions res;
    auto *res_cmd = app.add_subcommand("residuals", "run identity and inequality residual checks");
    res_cmd->add_option("--suite", res.suite, "all, gated, equality, inequality or monotone");
    res_cmd->add_option("--case", res.cases, "case name (repeatable)");
    res_cmd->add_option("--grid", res.grid, "grid for r and s: from:to:step or a comma list");
    res_cmd->add_option("--set", res.sets, "name=from:to:step or name=v1,v2,... (repeatable)");

    ExperimentOptions exp;
    auto *exp_cmd = app.add_subcommand("experiment", "tabulate observations on an open problem");
    exp_cmd->add_option("--name", exp.name, "QMaclaurin, NewtonMonotone, ArtanhRatio or LinearizePhiA")->required();
    exp_cmd->add_option("--param", exp.params, "name=value (repeatable)");
    exp_cmd->add_option("--format", exp.format)->check(CLI::IsMember({"csv", "json"}));

    BoundsOptions bounds;
    auto *bounds_cmd = app.add_subcommand("bounds", "evaluate a catalogued distortion bound");
    bounds_cmd->add_option("--id", bounds.id, "bound name");
    bounds_cmd->add_flag("--list", bounds.list, "print the catalog");
    bounds.flags.attach(bounds_cmd);

    GeomOptions geom;
    auto *geom_cmd = app.add_subcommand("geom", "generate or check planar curves");
    geom_cmd->require_subcommand(1);
    auto *gen_cmd = geom_cmd->add_subcommand("generate", "write a polyline CSV");
    gen_cmd->add_flag("--koch", geom.koch, "snowflake curve");
    gen_cmd->add_option("--polygon", geom.polygon, "regular polygon with N vertices");
    gen_cmd->add_option("--level", geom.level, "snowflake level");
    gen_cmd->add_option("--angle", geom.angle, "bump angle in degrees");
    gen_cmd->add_option("--radius", geom.radius, "polygon circumradius");
    gen_cmd->add_option("--out", geom.out_path, "output file (default stdout)");
    auto *check_cmd = geom_cmd->add_subcommand("check", "estimate a geometric constant of a polyline CSV");
    check_cmd->add_option("--in", geom.in_path, "input CSV with header x,y")->required();
    check_cmd->add_flag("--open", geom.open, "treat the polyline as open");
    check_cmd->add_option("--property", geom.property, "ahlfors, triangle, boxdim, perimeter, diameter, linear, "
                                                       "thickness or metric")
        ->required();
    check_cmd->add_option("--scales", geom.scales, "number of box-counting scales");
    check_cmd->add_flag("--adjacent", geom.adjacent, "triangle condition over adjacent triples only");
    check_cmd->add_option("--x", geom.x, "centre x");
    check_cmd->add_option("--y", geom.y, "centre y");
    check_cmd->add_option("--r", geom.r, "radius");
    check_cmd->add_option("--a", geom.a, "first point for metric")->expected(2);
    check_cmd->add_option("--b", geom.b, "second point for metric")->expected(2);
    check_cmd->add_option("--mode", geom.mode, "absratio or apollonian");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError &e) {
        err << "qcf: " << e.what() << "\n";
        return usage;
    }

    try {
        if (eval_cmd->parsed()) {
            return do_eval(eval, out);
        }
        if (inv_cmd->parsed()) {
            return do_invert(inv, out);
        }
        if (table_cmd->parsed()) {
            return do_table(table, out);
        }
        if (res_cmd->parsed()) {
            return do_residuals(res, out);
        }
        if (exp_cmd->parsed()) {
            return do_experiment(exp, out);
        }
        if (bounds_cmd->parsed()) {
            return do_bounds(bounds, out);
        }
        if (gen_cmd->parsed()) {
            return do_generate(geom, out);
        }
        return do_check(geom, out);
    } catch (const UsageError &e) {
        err << "qcf: " << e.what() << "\n";
        return usage;
    } catch (const CsvError &e) {
        err << "qcf: malformed CSV, " << e.what() << "\n";
        return usage;
    } catch (const DomainError &e) {
        err << "qcf: domain error: " << e.what() << "\n";
        return usage;
    } catch (const UnsupportedDimension &e) {
        err << "qcf: unsupported: " << e.what() << "\n";
        return usage;
    } catch (const std::exception &e) {
        err << "qcf: " << e.what() << "\n";
        return failure;
    }
}

} // namespace qcf::cli
