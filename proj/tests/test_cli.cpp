#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "willmore-lab");
    std::ostringstream out, err;
    const int code = willmore::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    auto d = fs::temp_directory_path() / "willmore_test_cli";
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path golden(const std::string& name) { return fs::path(WILLMORE_GOLDEN_DIR) / name; }

bool updating() {
    const char* e = std::getenv("WILLMORE_UPDATE_GOLDEN");
    return e != nullptr && std::string(e) == "1";
}

void check_golden_text(const std::string& name, const std::string& actual) {
    if (updating()) {
        std::ofstream(golden(name), std::ios::binary) << actual;
        return;
    }
    ASSERT_TRUE(fs::exists(golden(name))) << name;
    EXPECT_EQ(actual, slurp(golden(name)));
}

/// Structural equality with numbers compared to a relative tolerance.
void expect_json_near(const Json& a, const Json& b, double tol, const std::string& path = "$") {
    if (a.is_number() && b.is_number()) {
        const double x = a.get<double>(), y = b.get<double>();
        EXPECT_LE(std::abs(x - y), tol * std::max(1.0, std::abs(y))) << path << ": " << x << " vs " << y;
        return;
    }
    ASSERT_EQ(a.type(), b.type()) << path;
    if (a.is_object()) {
        ASSERT_EQ(a.size(), b.size()) << path;
        for (auto it = b.begin(); it != b.end(); ++it) {
            ASSERT_TRUE(a.contains(it.key())) << path << "." << it.key();
            expect_json_near(a[it.key()], it.value(), tol, path + "." + it.key());
        }
    } else if (a.is_array()) {
        ASSERT_EQ(a.size(), b.size()) << path;
        for (std::size_t k = 0; k < a.size(); ++k) expect_json_near(a[k], b[k], tol, path + "[" + std::to_string(k) + "]");
    } else {
        EXPECT_EQ(a, b) << path;
    }
}

void check_golden_json(const std::string& name, const std::string& actual) {
    if (updating()) {
        std::ofstream(golden(name), std::ios::binary) << actual;
        return;
    }
    ASSERT_TRUE(fs::exists(golden(name))) << name;
    expect_json_near(Json::parse(actual), Json::parse(slurp(golden(name))), 1e-9);
}

const char* kSubcommands[] = {"zoo", "analyze", "normalize", "epsreg-scan", "residuals", "gauss-bonnet", "desitter"};

} // namespace

TEST(Cli, HelpIsGolden) {
    const Result r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    for (const char* sub : kSubcommands) EXPECT_NE(r.out.find(sub), std::string::npos) << sub;
    check_golden_text("help.txt", r.out);
    for (const char* sub : kSubcommands) {
        const Result s = run({sub, "--help"});
        EXPECT_EQ(s.code, 0) << sub;
        EXPECT_NE(s.out.find("--surface"), std::string::npos) << sub;
        check_golden_text(std::string("help-") + sub + ".txt", s.out);
    }
}

TEST(Cli, AnalyzeEnneperIsGolden) {
    const Result r = run({"analyze", "--surface", "enneper", "--center", "3,0", "--radius", "1", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["command"], "analyze");
    EXPECT_EQ(j["surface"], "enneper");
    EXPECT_GT(j["energy"]["l2_tf"].get<double>(), 0.0);
    check_golden_json("analyze-enneper.json", r.out);
}

TEST(Cli, OutputIsByteIdenticalAcrossRuns) {
    const std::vector<std::vector<std::string>> runs{
        {"analyze", "--surface", "catenoid", "--center", "0.2,0.5", "--radius", "0.8"},
        {"epsreg-scan", "--surface", "enneper", "--center", "3,0", "--center", "1,1", "--radius", "0.25,0.5,1", "--format", "csv"},
        {"normalize", "--surface", "invert center=(0,0,0) of (catenoid)", "--center", "0.5,0.2", "--radius", "0.6"},
        {"residuals", "--surface", "enneper", "--radius", "0.4", "--spacing", "0.05", "--levels", "2"},
    };
    int k = 0;
    for (auto args : runs) {
        const fs::path a = scratch() / ("det_a" + std::to_string(k));
        const fs::path b = scratch() / ("det_b" + std::to_string(k++));
        auto with = [&](const fs::path& p) {
            auto v = args;
            v.push_back("--out");
            v.push_back(p.string());
            return v;
        };
        ASSERT_EQ(run(with(a)).code, 0);
        ASSERT_EQ(run(with(b)).code, 0);
        const std::string sa = slurp(a);
        EXPECT_FALSE(sa.empty());
        EXPECT_EQ(sa, slurp(b)) << args[0];
    }
}

TEST(Cli, GaussBonnetPasses) {
    const Result r = run({"gauss-bonnet", "--surface", "sphere r=1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_TRUE(j["pass"].get<bool>());
    EXPECT_LE(j["result"]["defect"].get<double>(), 1e-3);
}

TEST(Cli, ExitCodes) {
    const Result syntax = run({"analyze", "--surface", "nonsense("});
    EXPECT_EQ(syntax.code, 2);
    EXPECT_NE(syntax.err.find("position"), std::string::npos) << syntax.err;
    EXPECT_NE(syntax.err.find("surface specs:"), std::string::npos);

    const Result pole = run({"zoo", "--surface", "weierstrass g=\"z\" dh=\"1/z\" base=1", "--center", "-1,0"});
    EXPECT_EQ(pole.code, 1);
    const Json e = Json::parse(pole.err);
    EXPECT_EQ(e["error"], "PoleOnPath");
    EXPECT_TRUE(e["message"].is_string());

    const Result unsupported = run({"gauss-bonnet", "--surface", "enneper"});
    EXPECT_EQ(unsupported.code, 1);
    EXPECT_EQ(Json::parse(unsupported.err)["error"], "UnsupportedClosedSurface");

    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"analyze", "--surface", "enneper", "--grid", "16by64"}).code, 2);
    EXPECT_EQ(run({"analyze", "--surface", "enneper", "--grid", "2x64"}).code, 2);
    EXPECT_EQ(run({"analyze", "--surface", "enneper", "--radius", "-1"}).code, 2);
    EXPECT_EQ(run({"analyze", "--surface", "enneper", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"analyze", "--surface", "enneper", "--eps0", "0"}).code, 2);
    EXPECT_EQ(run({"analyze"}).code, 2);
    EXPECT_EQ(run({"analyze", "--surface", "enneper", "--moebius", "shear 2"}).code, 2);
    EXPECT_EQ(run({"residuals", "--surface", "enneper", "--kind", "bogus"}).code, 2);
    EXPECT_EQ(run({"analyze", "--surface", "enneper", "--config", (scratch() / "missing.cfg").string()}).code, 2);
}

TEST(Cli, ConfigFileWithFlagsWinning) {
    const fs::path cfg = scratch() / "run.cfg";
    std::ofstream(cfg) << "# batch settings\nsurface = enneper\ncenter=3,0\nradius=0.5\ngrid=12x48\n";
    const Result from_cfg = run({"analyze", "--config", cfg.string(), "--radius", "1"});
    ASSERT_EQ(from_cfg.code, 0) << from_cfg.err;
    const Result explicit_flags =
        run({"analyze", "--surface", "enneper", "--center", "3,0", "--radius", "1", "--grid", "12x48"});
    ASSERT_EQ(explicit_flags.code, 0);
    EXPECT_EQ(from_cfg.out, explicit_flags.out);
    EXPECT_EQ(Json::parse(from_cfg.out)["energy"]["radius"], 1.0);

    std::ofstream(scratch() / "bad.cfg") << "surface enneper\n";
    EXPECT_EQ(run({"analyze", "--config", (scratch() / "bad.cfg").string()}).code, 2);
}

TEST(Cli, CsvHeadersAreVersioned) {
    const Result a = run({"analyze", "--surface", "enneper", "--center", "3,0", "--format", "csv"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "# willmore-lab energy v1");
    const Result s = run({"epsreg-scan", "--surface", "enneper", "--center", "3,0", "--radius", "0.25,0.5,1", "--format", "csv"});
    ASSERT_EQ(s.code, 0);
    std::istringstream lines(s.out);
    std::string line;
    int rows = 0;
    std::getline(lines, line);
    EXPECT_EQ(line, "# willmore-lab energy v1");
    std::getline(lines, line);
    EXPECT_EQ(line.rfind("cx,cy,radius", 0), 0u) << line;
    while (std::getline(lines, line)) ++rows;
    EXPECT_EQ(rows, 3);
    const Result r = run({"residuals", "--surface", "enneper", "--radius", "0.4", "--levels", "2", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "# willmore-lab residuals v1");
}

TEST(Cli, NormalizeThetaIsReingestible) {
    const Result n = run({"normalize", "--surface", "invert center=(0,0,0) of (catenoid)", "--center", "0.5,0.2", "--radius", "0.6"});
    ASSERT_EQ(n.code, 0) << n.err;
    const Json j = Json::parse(n.out);
    EXPECT_EQ(j["result"]["status"], "inverted");
    const std::string theta = j["result"]["theta"];
    const Result a = run({"analyze", "--surface", "invert center=(0,0,0) of (catenoid)", "--moebius", theta, "--center",
                          "0.5,0.2", "--radius", "0.6"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_LE(std::abs(Json::parse(a.out)["averages"]["hbar"].get<double>()), 1e-6);
    const Result again = run({"normalize", "--surface", "invert center=(0,0,0) of (catenoid)", "--moebius", theta,
                              "--center", "0.5,0.2", "--radius", "0.6"});
    ASSERT_EQ(again.code, 0) << again.err;
    EXPECT_EQ(Json::parse(again.out)["result"]["status"], "identity-suffices");
}

TEST(Cli, DeSitterGridRoundTrip) {
    const fs::path y = scratch() / "y.csv";
    ASSERT_EQ(run({"desitter", "--surface", "enneper", "--radius", "0.4", "--spacing", "0.05", "--format", "csv", "--out",
                   y.string()})
                  .code,
              0);
    EXPECT_EQ(slurp(y).rfind("# willmore y-grid v1", 0), 0u);
    const Result direct = run({"desitter", "--surface", "enneper", "--radius", "0.4", "--spacing", "0.05"});
    const Result read = run({"desitter", "--input", y.string()});
    ASSERT_EQ(direct.code, 0);
    ASSERT_EQ(read.code, 0) << read.err;
    const Json d = Json::parse(direct.out), r = Json::parse(read.out);
    EXPECT_EQ(d["nodes"], r["nodes"]);
    EXPECT_EQ(d["harmonicity"]["max"], r["harmonicity"]["max"]);
    EXPECT_EQ(d["conservation"]["max"], r["conservation"]["max"]);
    EXPECT_LE(d["max_unit_defect"].get<double>(), 1e-10);
    EXPECT_EQ(run({"desitter", "--surface", "enneper", "--format", "csv"}).code, 2);
}

TEST(Cli, ZooListsAndEvaluates) {
    const Result list = run({"zoo"});
    ASSERT_EQ(list.code, 0);
    const Json l = Json::parse(list.out);
    EXPECT_GE(l["surfaces"].size(), 5u);
    const Result p = run({"zoo", "--surface", "sphere r=1", "--center", "0,0"});
    ASSERT_EQ(p.code, 0);
    const Json j = Json::parse(p.out);
    EXPECT_EQ(j["points"][0]["phi"], Json::array({0.0, 0.0, -1.0}));
    EXPECT_EQ(j["points"][0]["phi_x"], Json::array({2.0, 0.0, 0.0}));
}

TEST(Cli, ResidualFieldDump) {
    const fs::path f = scratch() / "field.csv";
    const Result r = run({"residuals", "--surface", "perturb eps=0.05 of (enneper)", "--radius", "0.3", "--spacing", "0.05",
                          "--levels", "2", "--kind", "willmore", "--field-out", f.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string text = slurp(f);
    EXPECT_NE(text.find("x,y,value"), std::string::npos);
    const Json j = Json::parse(r.out);
    ASSERT_EQ(j["studies"].size(), 1u);
    EXPECT_EQ(j["studies"][0]["kind"], "willmore");
}
