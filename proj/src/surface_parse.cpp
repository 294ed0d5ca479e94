#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "willmore/error.hpp"
#include "willmore/surface.hpp"

namespace willmore {
namespace {

struct Value {
    std::string text;
    std::size_t pos = 0;
    bool quoted = false;
};

class SpecParser {
public:
    explicit SpecParser(std::string_view text) : s_(text) {}

    SurfacePtr parse_all() {
        SurfacePtr out = parse_spec();
        skip_ws();
        if (i_ != s_.size()) fail("unexpected trailing input", i_);
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::size_t pos) const { throw SyntaxError(msg, pos); }

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    bool at_end_of_spec() {
        skip_ws();
        return i_ >= s_.size() || s_[i_] == ')';
    }

    std::string word() {
        skip_ws();
        const std::size_t start = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        if (start == i_) fail("expected a keyword", start);
        return std::string(s_.substr(start, i_ - start));
    }

    Value quoted() {
        const std::size_t start = i_;
        ++i_;
        const std::size_t body = i_;
        while (i_ < s_.size() && s_[i_] != '"') ++i_;
        if (i_ >= s_.size()) fail("unterminated string", start);
        Value v{std::string(s_.substr(body, i_ - body)), body, true};
        ++i_;
        return v;
    }

    Value value() {
        skip_ws();
        if (i_ >= s_.size()) fail("expected a value", i_);
        if (s_[i_] == '"') return quoted();
        const std::size_t start = i_;
        if (s_[i_] == '(') {
            int depth = 0;
            for (; i_ < s_.size(); ++i_) {
                if (s_[i_] == '(') ++depth;
                if (s_[i_] == ')' && --depth == 0) break;
            }
            if (i_ >= s_.size()) fail("unbalanced parenthesis", start);
            ++i_;
            return {std::string(s_.substr(start, i_ - start)), start, false};
        }
        while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != ')') ++i_;
        if (start == i_) fail("expected a value", start);
        return {std::string(s_.substr(start, i_ - start)), start, false};
    }

    struct Args {
        std::map<std::string, Value> kv;
        std::vector<Value> positional;
        SurfacePtr inner;
        std::size_t inner_pos = 0;
    };

    Args arguments() {
        Args a;
        while (!at_end_of_spec()) {
            if (s_[i_] == '"') {
                a.positional.push_back(quoted());
                continue;
            }
            const std::size_t key_pos = i_;
            const std::string key = word();
            if (key == "of") {
                skip_ws();
                if (i_ >= s_.size() || s_[i_] != '(') fail("expected '(' after 'of'", i_);
                ++i_;
                a.inner_pos = i_;
                a.inner = parse_spec();
                skip_ws();
                if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')'", i_);
                ++i_;
                if (!at_end_of_spec()) fail("nothing may follow the inner surface", i_);
                break;
            }
            skip_ws();
            if (i_ >= s_.size() || s_[i_] != '=') fail("expected '=' after '" + key + "'", i_);
            ++i_;
            if (a.kv.count(key)) fail("duplicate key '" + key + "'", key_pos);
            a.kv[key] = value();
        }
        return a;
    }

    double number(const Value& v) const {
        const char* b = v.text.c_str();
        char* e = nullptr;
        const double d = std::strtod(b, &e);
        if (e == b || *e != '\0' || !std::isfinite(d)) fail("expected a number", v.pos);
        return d;
    }

    std::vector<double> tuple(const Value& v, std::size_t n) const {
        if (v.text.size() < 2 || v.text.front() != '(' || v.text.back() != ')')
            fail("expected a tuple of " + std::to_string(n) + " numbers", v.pos);
        std::vector<double> out;
        std::size_t start = 1;
        for (std::size_t k = 1; k < v.text.size(); ++k) {
            if (v.text[k] == ',' || k + 1 == v.text.size()) {
                std::string part = v.text.substr(start, k - start);
                const auto b = part.find_first_not_of(" \t");
                const auto e = part.find_last_not_of(" \t");
                part = b == std::string::npos ? "" : part.substr(b, e - b + 1);
                out.push_back(number(Value{part, v.pos + start}));
                start = k + 1;
            }
        }
        if (out.size() != n) fail("expected a tuple of " + std::to_string(n) + " numbers", v.pos);
        return out;
    }

    static void expect_keys(const Args& a, std::initializer_list<const char*> allowed, std::size_t pos) {
        for (const auto& [k, v] : a.kv) {
            bool ok = false;
            for (const char* name : allowed) ok = ok || k == name;
            if (!ok) throw SyntaxError("unknown key '" + k + "'", v.pos);
        }
        (void)pos;
    }

    const Value& required(const Args& a, const char* key, std::size_t pos) const {
        auto it = a.kv.find(key);
        if (it == a.kv.end()) fail(std::string("missing key '") + key + "'", pos);
        return it->second;
    }

    SurfacePtr need_inner(const Args& a, std::size_t pos) const {
        if (!a.inner) fail("expected 'of (SPEC)'", pos);
        return a.inner;
    }

    void no_inner(const Args& a, const std::string& kind, std::size_t pos) const {
        if (a.inner) fail("'" + kind + "' takes no inner surface", pos);
        if (!a.positional.empty()) fail("unexpected string argument", a.positional.front().pos);
    }

    // Re-anchors syntax errors from an embedded grammar at its offset in the full text.
    template <class F>
    auto embedded(const Value& v, F&& f) const {
        try {
            return f(v.text);
        } catch (const SyntaxError& e) {
            throw SyntaxError(strip_position(e.what()), v.pos + e.position());
        }
    }

    static std::string strip_position(const std::string& what) {
        const auto k = what.rfind(" at position ");
        return k == std::string::npos ? what : what.substr(0, k);
    }

    Complex complex_value(const Value& v) const {
        const RationalExpr e = embedded(v, [](const std::string& t) { return parse_rational(t); });
        const Complex c = e.evaluate(Complex(0.37, -1.3));
        if (std::abs(c - e.evaluate(Complex(-2.1, 0.4))) != 0.0) fail("basepoint must be a constant", v.pos);
        return c;
    }

    SurfacePtr parse_spec() {
        skip_ws();
        const std::size_t pos = i_;
        const std::string kind = word();
        Args a = arguments();
        if (kind == "plane" || kind == "enneper" || kind == "catenoid") {
            no_inner(a, kind, pos);
            expect_keys(a, {}, pos);
            if (kind == "plane") return make_plane();
            return kind == "enneper" ? make_enneper() : make_catenoid();
        }
        if (kind == "sphere") {
            no_inner(a, kind, pos);
            expect_keys(a, {"r", "chart"}, pos);
            double r = 1.0;
            bool south = false;
            if (a.kv.count("r")) {
                r = number(a.kv["r"]);
                if (!(r > 0.0)) fail("sphere radius must be positive", a.kv["r"].pos);
            }
            if (a.kv.count("chart")) {
                const Value& c = a.kv["chart"];
                if (c.text == "south") south = true;
                else if (c.text != "north") fail("chart must be 'north' or 'south'", c.pos);
            }
            return make_sphere(r, south);
        }
        if (kind == "graph") {
            no_inner(a, kind, pos);
            expect_keys(a, {"h"}, pos);
            const Value& h = required(a, "h", pos);
            if (h.text == "paraboloid") return make_graph(surf::GraphPatch::Height::Paraboloid);
            if (h.text == "saddle") return make_graph(surf::GraphPatch::Height::Saddle);
            if (h.text == "bump") return make_graph(surf::GraphPatch::Height::Bump);
            fail("unknown height '" + h.text + "'", h.pos);
        }
        if (kind == "weierstrass") {
            no_inner(a, kind, pos);
            expect_keys(a, {"g", "dh", "base"}, pos);
            const Value& g = required(a, "g", pos);
            const Value& dh = required(a, "dh", pos);
            Complex base{};
            if (a.kv.count("base")) base = complex_value(a.kv["base"]);
            embedded(g, [](const std::string& t) { return parse_rational(t); });
            embedded(dh, [](const std::string& t) { return parse_rational(t); });
            return make_weierstrass(g.text, dh.text, base);
        }
        if (kind == "invert") {
            expect_keys(a, {"center"}, pos);
            const auto c = tuple(required(a, "center", pos), 3);
            return make_transformed(MoebiusMap::invert(Vec3(c[0], c[1], c[2])), need_inner(a, pos));
        }
        if (kind == "moebius") {
            expect_keys(a, {}, pos);
            if (a.positional.size() != 1) fail("expected one quoted stage list", pos);
            const Value& st = a.positional.front();
            const MoebiusMap m = embedded(st, [](const std::string& t) { return parse_moebius(t); });
            return make_transformed(m, need_inner(a, pos));
        }
        if (kind == "rescale") {
            expect_keys(a, {"center", "scale"}, pos);
            Vec2 c = Vec2::Zero();
            if (a.kv.count("center")) {
                const auto t = tuple(a.kv["center"], 2);
                c = Vec2(t[0], t[1]);
            }
            const Value& sv = required(a, "scale", pos);
            const double s = number(sv);
            if (!(s > 0.0)) fail("scale must be positive", sv.pos);
            return make_rescaled(c, s, need_inner(a, pos));
        }
        if (kind == "perturb") {
            expect_keys(a, {"eps"}, pos);
            double eps = 0.05;
            if (a.kv.count("eps")) eps = number(a.kv["eps"]);
            return make_perturbed(eps, need_inner(a, pos));
        }
        if (kind == "grid") {
            no_inner(a, kind, pos);
            expect_keys(a, {"file", "richardson"}, pos);
            surf::SampledGrid g = read_grid_csv(required(a, "file", pos).text);
            if (a.kv.count("richardson")) g.richardson = number(a.kv["richardson"]) != 0.0;
            return make_grid_sampled(std::move(g));
        }
        fail("unknown surface '" + kind + "'", pos);
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

} // namespace

SurfacePtr parse_surface(std::string_view text) {
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) throw SyntaxError("empty surface spec", 0);
    return SpecParser(text).parse_all();
}

surf::SampledGrid read_grid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open grid file '" + path + "'");
    struct Row {
        double x, y;
        Vec3 v;
    };
    std::vector<Row> rows;
    std::string line;
    bool header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            if (line.rfind("x,y", 0) == 0) continue;
        }
        std::istringstream ls(line);
        std::array<double, 5> f{};
        for (int k = 0; k < 5; ++k) {
            std::string cell;
            if (!std::getline(ls, cell, ',')) throw InvalidArgument("grid row " + std::to_string(lineno) + ": expected 5 columns");
            char* e = nullptr;
            f[k] = std::strtod(cell.c_str(), &e);
            if (e == cell.c_str()) {
                if (cell == "nan" || cell == "NaN") f[k] = std::nan("");
                else throw InvalidArgument("grid row " + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        rows.push_back({f[0], f[1], Vec3(f[2], f[3], f[4])});
    }
    if (rows.size() < 2) throw GridTooSmall("grid file '" + path + "' has fewer than 2 nodes");
    double x0 = rows[0].x, y0 = rows[0].y, x1 = x0, y1 = y0;
    for (const Row& r : rows) {
        x0 = std::min(x0, r.x);
        y0 = std::min(y0, r.y);
        x1 = std::max(x1, r.x);
        y1 = std::max(y1, r.y);
    }
    double h = 0.0;
    for (const Row& r : rows) {
        const double d = r.x - x0;
        if (d > 0.0 && (h == 0.0 || d < h)) h = d;
    }
    if (h == 0.0) throw GridTooSmall("grid file '" + path + "' has a single column");
    surf::SampledGrid g;
    g.x0 = x0;
    g.y0 = y0;
    g.h = h;
    g.nx = static_cast<int>(std::lround((x1 - x0) / h)) + 1;
    g.ny = static_cast<int>(std::lround((y1 - y0) / h)) + 1;
    g.values.assign(static_cast<std::size_t>(g.nx) * g.ny, Vec3::Constant(std::nan("")));
    for (const Row& r : rows) {
        const double u = (r.x - x0) / h;
        const double v = (r.y - y0) / h;
        const long i = std::lround(u);
        const long j = std::lround(v);
        if (std::fabs(u - i) > 1e-6 || std::fabs(v - j) > 1e-6)
            throw InvalidArgument("grid file '" + path + "' is not a uniform square grid");
        g.values[static_cast<std::size_t>(j) * g.nx + i] = r.v;
    }
    g.source = path;
    return g;
}

void write_grid_csv(const surf::SampledGrid& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write grid file '" + path + "'");
    out.precision(17);
    out << "# willmore grid v1\nx,y,X,Y,Z\n";
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const Vec3& v = g.at(i, j);
            if (!v.allFinite()) continue;
            out << g.x0 + i * g.h << ',' << g.y0 + j * g.h << ',' << v[0] << ',' << v[1] << ',' << v[2] << '\n';
        }
    }
}

} // namespace willmore
