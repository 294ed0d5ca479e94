#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "willmore/conformal_gauss.hpp"
#include "willmore/energetics.hpp"
#include "willmore/error.hpp"
#include "willmore/normalizer.hpp"
#include "willmore/report.hpp"
#include "willmore/residuals.hpp"

namespace willmore::cli {
namespace {

using report::Json;

// Validation failure in the run configuration: exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string surface;
    std::string moebius;
    std::vector<std::string> centers;
    std::string radius = "1";
    std::string grid = "16x64";
    std::string format = "json";
    std::string out;
    std::string config;
    double eps0 = 0.1;
    double c0 = 10.0;
    double tol = -1.0;
    double h = 0.05;
    int levels = 3;
    std::string kind = "all";
    double chart_radius = 1e3;
    std::string input;
    std::string field_out;
};

const char* kSurfaceGrammar =
    "surface specs: plane | sphere [r=R] [chart=south] | enneper | catenoid | graph h=paraboloid|saddle|bump |\n"
    "  weierstrass g=\"EXPR\" dh=\"EXPR\" [base=C] | invert center=(x,y,z) of (SPEC) |\n"
    "  moebius \"STAGES\" of (SPEC) | rescale [center=(x,y)] scale=S of (SPEC) | perturb [eps=E] of (SPEC) |\n"
    "  grid file=PATH [richardson=1]";

Vec2 parse_pair(const std::string& text, const char* flag) {
    std::istringstream is(text);
    double x = 0.0, y = 0.0;
    char comma = 0;
    if (!(is >> x >> comma >> y) || comma != ',' || !(is >> std::ws).eof() || !std::isfinite(x) || !std::isfinite(y))
        throw UsageError(std::string(flag) + ": expected 'x,y', got '" + text + "'");
    return {x, y};
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::istringstream is(text);
    std::string cell;
    while (std::getline(is, cell, ',')) {
        char* e = nullptr;
        const double v = std::strtod(cell.c_str(), &e);
        if (e == cell.c_str() || *e != '\0' || !std::isfinite(v))
            throw UsageError(std::string(flag) + ": bad number '" + cell + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError(std::string(flag) + ": expected at least one value");
    return out;
}

std::vector<double> radii(const Options& o) {
    std::vector<double> r = parse_list(o.radius, "--radius");
    for (double v : r)
        if (!(v > 0.0)) throw UsageError("--radius: radii must be positive");
    return r;
}

std::vector<Vec2> centers(const Options& o) {
    std::vector<Vec2> c;
    for (const std::string& s : o.centers) c.push_back(parse_pair(s, "--center"));
    if (c.empty()) c.push_back(Vec2::Zero());
    return c;
}

std::pair<int, int> resolution(const Options& o) {
    const auto x = o.grid.find('x');
    int nr = 0, nt = 0;
    try {
        if (x == std::string::npos) throw std::invalid_argument("x");
        std::size_t used = 0;
        nr = std::stoi(o.grid.substr(0, x), &used);
        if (used != x) throw std::invalid_argument("x");
        nt = std::stoi(o.grid.substr(x + 1), &used);
        if (used != o.grid.size() - x - 1) throw std::invalid_argument("x");
    } catch (const std::exception&) {
        throw UsageError("--grid: expected NRxNT, e.g. 16x64, got '" + o.grid + "'");
    }
    if (nr < 4 || nt < 8) throw UsageError("--grid: need NR >= 4 and NT >= 8");
    return {nr, nt};
}

Thresholds thresholds(const Options& o) {
    if (!(o.eps0 > 0.0) || !(o.c0 > 0.0)) throw UsageError("--eps0 and --c0 must be positive");
    return {o.eps0, o.c0};
}

SurfacePtr surface(const Options& o) {
    if (o.surface.empty()) throw UsageError("--surface is required\n" + std::string(kSurfaceGrammar));
    SurfacePtr s;
    try {
        s = parse_surface(o.surface);
    } catch (const SyntaxError& e) {
        throw UsageError("--surface: " + std::string(e.what()) + "\n" + kSurfaceGrammar);
    }
    if (!o.moebius.empty()) {
        MoebiusMap m;
        try {
            m = parse_moebius(o.moebius);
        } catch (const SyntaxError& e) {
            throw UsageError("--moebius: " + std::string(e.what()) +
                             "\nstages: translate (x,y,z) | dilate s | rotate (x,y,z) angle | invert (x,y,z)");
        }
        s = make_transformed(m, s);
    }
    return s;
}

void require_format(const Options& o) {
    if (o.format != "json" && o.format != "csv") throw UsageError("--format: expected json or csv");
}

class Emitter {
public:
    Emitter(const Options& o, std::ostream& out) : path_(o.out), out_(out) {}

    void text(const std::string& s) {
        if (path_.empty()) {
            out_ << s;
            return;
        }
        std::ofstream f(path_, std::ios::binary);
        if (!f) throw InvalidArgument("cannot write '" + path_ + "'");
        f << s;
    }
    void json(const Json& j) { text(j.dump(2) + "\n"); }

private:
    std::string path_;
    std::ostream& out_;
};

Json header(const char* command, const Options& o, const SurfaceSpec* s) {
    Json j;
    j["schema"] = report::kSchemaVersion;
    j["command"] = command;
    if (s) j["surface"] = s->to_string();
    (void)o;
    return j;
}

// ------------------------------------------------------------ subcommands

void cmd_zoo(const Options& o, Emitter& em) {
    if (o.surface.empty()) {
        Json j = header("zoo", o, nullptr);
        Json list = Json::array();
        for (const char* spec : {"plane", "sphere r=1", "enneper", "catenoid", "graph h=paraboloid", "graph h=saddle",
                                 "graph h=bump", "weierstrass g=\"z\" dh=\"2\""}) {
            const SurfacePtr s = parse_surface(spec);
            list.push_back({{"spec", s->to_string()}, {"willmore", s->is_willmore()}, {"conformal", s->is_conformal()}});
        }
        j["surfaces"] = list;
        em.json(j);
        return;
    }
    const SurfacePtr s = surface(o);
    Json j = header("zoo", o, s.get());
    Json pts = Json::array();
    for (const Vec2& p : centers(o)) {
        const Jet3 jt = jet3(*s, p);
        const FundamentalForms f = fundamental_forms(jt);
        const CGMJet c = conformal_gauss(jt);
        Json e;
        e["point"] = {p[0], p[1]};
        e["phi"] = {jt.phi[0], jt.phi[1], jt.phi[2]};
        e["phi_x"] = {jt.d1[0][0], jt.d1[0][1], jt.d1[0][2]};
        e["phi_y"] = {jt.d1[1][0], jt.d1[1][1], jt.d1[1][2]};
        e["forms"] = report::to_json(f);
        e["tracefree_density"] = tracefree_density(f);
        e["curvature_identity_residual"] = curvature_identity_residual(f);
        e["conformal_gauss"] = report::to_json(c);
        pts.push_back(e);
    }
    j["points"] = pts;
    em.json(j);
}

void cmd_analyze(const Options& o, Emitter& em) {
    require_format(o);
    const SurfacePtr s = surface(o);
    const auto [nr, nt] = resolution(o);
    const Thresholds t = thresholds(o);
    const std::vector<double> rs = radii(o);
    if (rs.size() != 1) throw UsageError("--radius: analyze takes a single radius (use epsreg-scan for lists)");
    const Vec2 c = centers(o).front();
    const DiskQuadrature q = disk_quadrature(c, rs[0], nr, nt);
    const EnergyReport r = energy_report(*s, q, t);
    if (o.format == "csv") {
        em.text(report::energy_csv({r}));
        return;
    }
    Json j = header("analyze", o, s.get());
    j["thresholds"] = {{"eps0", t.eps0}, {"c0", t.c0}};
    j["energy"] = report::to_json(r);
    j["oscillation"] = report::to_json(oscillation_check(*s, q));
    j["averages"] = report::to_json(averages(*s, q));
    em.json(j);
}

void cmd_normalize(const Options& o, Emitter& em) {
    const SurfacePtr s = surface(o);
    const auto [nr, nt] = resolution(o);
    const std::vector<double> rs = radii(o);
    if (rs.size() != 1) throw UsageError("--radius: normalize takes a single radius");
    NormalizeOptions opt;
    opt.n_r = nr;
    opt.n_theta = nt;
    opt.eps0 = thresholds(o).eps0;
    if (o.tol > 0.0) opt.hbar_tol = o.tol;
    const NormalizationResult n = normalize(*s, centers(o).front(), rs[0], opt);
    Json j = header("normalize", o, s.get());
    j["patch"] = {{"center", {centers(o).front()[0], centers(o).front()[1]}}, {"radius", rs[0]}};
    j["result"] = report::to_json(n);
    em.json(j);
}

void cmd_scan(const Options& o, Emitter& em) {
    require_format(o);
    const SurfacePtr s = surface(o);
    const auto [nr, nt] = resolution(o);
    const auto rows = epsreg_scan(*s, centers(o), radii(o), nr, nt, thresholds(o));
    if (o.format == "csv") {
        em.text(report::energy_csv(rows));
        return;
    }
    Json j = header("epsreg-scan", o, s.get());
    j["thresholds"] = {{"eps0", o.eps0}, {"c0", o.c0}};
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(report::to_json(r));
    j["rows"] = arr;
    em.json(j);
}

void cmd_residuals(const Options& o, Emitter& em) {
    require_format(o);
    const SurfacePtr s = surface(o);
    const std::vector<double> rs = radii(o);
    if (rs.size() != 1) throw UsageError("--radius: residuals takes a single radius");
    if (!(o.h > 0.0)) throw UsageError("--spacing must be positive");
    if (o.levels < 2 || o.levels > 6) throw UsageError("--levels must be between 2 and 6");
    std::vector<ResidualKind> kinds;
    if (o.kind == "all") {
        kinds = {ResidualKind::GaussCodazzi, ResidualKind::WillmoreClassical, ResidualKind::WillmoreDivergence,
                 ResidualKind::Harmonicity, ResidualKind::Conservation};
    } else {
        try {
            kinds.push_back(parse_residual_kind(o.kind));
        } catch (const InvalidArgument& e) {
            throw UsageError(std::string("--kind: ") + e.what());
        }
    }
    const Vec2 c = centers(o).front();
    std::vector<ConvergenceStudy> studies;
    for (ResidualKind k : kinds) studies.push_back(convergence_study(k, *s, c, rs[0], o.h, o.levels));
    if (!o.field_out.empty()) {
        const double finest = o.h / std::pow(2.0, o.levels - 1);
        write_field_csv(residual(kinds.front(), *s, DiskGrid::make(c, rs[0], finest)), o.field_out);
    }
    if (o.format == "csv") {
        em.text(report::convergence_csv(studies));
        return;
    }
    Json j = header("residuals", o, s.get());
    j["patch"] = {{"center", {c[0], c[1]}}, {"radius", rs[0]}};
    Json arr = Json::array();
    for (const auto& st : studies) arr.push_back(report::to_json(st));
    j["studies"] = arr;
    em.json(j);
}

void cmd_gauss_bonnet(const Options& o, Emitter& em) {
    const SurfacePtr s = surface(o);
    const double tol = o.tol > 0.0 ? o.tol : 1e-3;
    const GaussBonnetResult g = gauss_bonnet_check(*s, o.chart_radius);
    Json j = header("gauss-bonnet", o, s.get());
    j["result"] = report::to_json(g);
    j["tol"] = tol;
    j["pass"] = g.defect <= tol;
    em.json(j);
}

void cmd_desitter(const Options& o, Emitter& em) {
    require_format(o);
    YGrid y;
    SurfacePtr s;
    if (!o.input.empty()) {
        y = read_y_grid_csv(o.input);
    } else {
        s = surface(o);
        const std::vector<double> rs = radii(o);
        if (rs.size() != 1) throw UsageError("--radius: desitter takes a single radius");
        y = sample_y_grid(*s, DiskGrid::make(centers(o).front(), rs[0], o.h));
    }
    if (o.format == "csv") {
        if (o.out.empty()) throw UsageError("--format csv for desitter needs --out");
        write_y_grid_csv(y, o.out);
        return;
    }
    double unit = 0.0;
    std::size_t count = 0;
    for (int j = -y.grid.n; j <= y.grid.n; ++j) {
        for (int i = -y.grid.n; i <= y.grid.n; ++i) {
            if (!y.valid(i, j)) continue;
            unit = std::max(unit, std::fabs(lorentz_dot(y.at(i, j), y.at(i, j)) - 1.0));
            ++count;
        }
    }
    Json j = header("desitter", o, s.get());
    if (!o.input.empty()) j["input"] = o.input;
    j["nodes"] = count;
    j["max_unit_defect"] = unit;
    j["harmonicity"] = report::to_json(harmonicity_residual(y));
    j["conservation"] = report::to_json(conservation_residual(y));
    em.json(j);
}

// ------------------------------------------------------------ plumbing

struct Flag {
    const char* name;
    bool multi;
};

// Reads key=value lines; keys already given on the command line are skipped.
std::vector<std::string> config_args(const std::string& path, const std::vector<std::string>& given) {
    std::ifstream in(path);
    if (!in) throw UsageError("--config: cannot open '" + path + "'");
    std::vector<std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto eq = line.find('=', b);
        if (eq == std::string::npos)
            throw UsageError("--config: line " + std::to_string(lineno) + ": expected key=value");
        std::string key = line.substr(b, eq - b);
        key.erase(key.find_last_not_of(" \t") + 1);
        std::string value = line.substr(eq + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        value.erase(value.find_last_not_of(" \t\r") + 1);
        if (key == "config") throw UsageError("--config: nested config files are not supported");
        const std::string flag = "--" + key;
        bool seen = false;
        for (const std::string& g : given) seen = seen || g == flag || g.rfind(flag + "=", 0) == 0;
        if (!seen) out.push_back(flag + "=" + value);
    }
    return out;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--surface", o.surface, "Surface spec, e.g. \"enneper\" or \"invert center=(0,0,3) of (plane)\"");
    sub->add_option("--moebius", o.moebius, "Moebius stages applied to the surface, e.g. \"translate (1,0,0) | invert (0,0,3)\"");
    sub->add_option("--config", o.config, "File of key=value lines using the flag names; flags win");
    sub->add_option("--out", o.out, "Write the report to this file instead of stdout");
}

void add_patch(CLI::App* sub, Options& o, bool many) {
    sub->add_option("--center", o.centers, many ? "Disk center x,y (repeatable)" : "Disk center x,y")
        ->expected(1, many ? 1 << 20 : 1);
    sub->add_option("--radius", o.radius, many ? "Disk radius or comma-separated radii" : "Disk radius")
        ->capture_default_str();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"willmore-lab: curvature energies, conformal Gauss maps, Moebius normalization and PDE residuals "
                 "for parametrized surfaces",
                 "willmore-lab"};
    app.require_subcommand(1);
    app.footer(std::string("\n") + kSurfaceGrammar + "\n\nExit status: 0 success, 1 domain error (JSON on stderr), "
                                                       "2 usage error.");

    CLI::App* zoo = app.add_subcommand("zoo", "List built-in surfaces, or evaluate pointwise data at --center");
    add_common(zoo, o);
    zoo->add_option("--center", o.centers, "Parameter point x,y (repeatable)")->expected(1, 1 << 20);

    CLI::App* analyze = app.add_subcommand("analyze", "Energies, norms and ratios over one disk");
    add_common(analyze, o);
    add_patch(analyze, o, false);
    analyze->add_option("--grid", o.grid, "Quadrature resolution NRxNT")->capture_default_str();
    analyze->add_option("--format", o.format, "json or csv")->capture_default_str();
    analyze->add_option("--eps0", o.eps0, "Small-energy threshold")->capture_default_str();
    analyze->add_option("--c0", o.c0, "Weak-L2 threshold for grad lambda")->capture_default_str();

    CLI::App* norm = app.add_subcommand("normalize", "Moebius map cancelling the mean-curvature average");
    add_common(norm, o);
    add_patch(norm, o, false);
    norm->add_option("--grid", o.grid, "Quadrature resolution NRxNT")->capture_default_str();
    norm->add_option("--eps0", o.eps0, "Small-energy threshold for the Lorentz-square gate")->capture_default_str();
    norm->add_option("--tol", o.tol, "Relative |mean H| below which the identity suffices (default 1e-10)");

    CLI::App* scan = app.add_subcommand("epsreg-scan", "Energy reports over many disks");
    add_common(scan, o);
    add_patch(scan, o, true);
    scan->add_option("--grid", o.grid, "Quadrature resolution NRxNT")->capture_default_str();
    scan->add_option("--format", o.format, "json or csv")->capture_default_str();
    scan->add_option("--eps0", o.eps0, "Small-energy threshold")->capture_default_str();
    scan->add_option("--c0", o.c0, "Weak-L2 threshold for grad lambda")->capture_default_str();

    CLI::App* res = app.add_subcommand("residuals", "Finite-difference residuals and observed orders");
    add_common(res, o);
    add_patch(res, o, false);
    res->add_option("--spacing", o.h, "Coarsest grid spacing")->capture_default_str();
    res->add_option("--levels", o.levels, "Number of halvings of h, counting the coarsest")->capture_default_str();
    res->add_option("--kind", o.kind,
                    "all, gauss-codazzi, willmore, willmore-divergence, harmonicity or conservation")
        ->capture_default_str();
    res->add_option("--format", o.format, "json or csv")->capture_default_str();
    res->add_option("--field-out", o.field_out, "CSV dump (x,y,value) of the finest field of the first kind");

    CLI::App* gb = app.add_subcommand("gauss-bonnet", "Tracefree energy against 2W - 4 pi chi on closed spheres");
    add_common(gb, o);
    gb->add_option("--chart-radius", o.chart_radius, "Parameter radius of the main chart")->capture_default_str();
    gb->add_option("--tol", o.tol, "Pass threshold on the defect (default 1e-3)");

    CLI::App* ds = app.add_subcommand("desitter", "Conformal Gauss map grid: unit defect and harmonic-map residuals");
    add_common(ds, o);
    add_patch(ds, o, false);
    ds->add_option("--spacing", o.h, "Grid spacing")->capture_default_str();
    ds->add_option("--input", o.input, "Read a Y grid CSV (x,y,Y1..Y5) instead of sampling --surface");
    ds->add_option("--format", o.format, "json (summary) or csv (Y grid, needs --out)")->capture_default_str();

    try {
        std::vector<std::string> argv(args.begin() + (args.empty() ? 0 : 1), args.end());
        // Splice config entries in right after the subcommand name.
        for (std::size_t k = 0; k < argv.size(); ++k) {
            std::string path;
            if (argv[k] == "--config" && k + 1 < argv.size()) path = argv[k + 1];
            else if (argv[k].rfind("--config=", 0) == 0) path = argv[k].substr(9);
            if (path.empty()) continue;
            const auto extra = config_args(path, argv);
            if (!argv.empty()) argv.insert(argv.begin() + 1, extra.begin(), extra.end());
            break;
        }
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\nRun 'willmore-lab --help' for usage.\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    for (CLI::App* sub : app.get_subcommands()) {
        if (sub->get_help_ptr() && sub->get_help_ptr()->count()) {
            out << sub->help();
            return 0;
        }
    }

    Emitter em(o, out);
    try {
        if (zoo->parsed()) cmd_zoo(o, em);
        else if (analyze->parsed()) cmd_analyze(o, em);
        else if (norm->parsed()) cmd_normalize(o, em);
        else if (scan->parsed()) cmd_scan(o, em);
        else if (res->parsed()) cmd_residuals(o, em);
        else if (gb->parsed()) cmd_gauss_bonnet(o, em);
        else if (ds->parsed()) cmd_desitter(o, em);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const SyntaxError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << Json{{"error", e.kind()}, {"message", e.what()}}.dump() << '\n';
        return 1;
    }
    return 0;
}

} // namespace willmore::cli
