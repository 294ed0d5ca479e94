#include "willmore/moebius.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "willmore/error.hpp"
#include "willmore/format.hpp"
#include "willmore/taylor.hpp"

namespace willmore {

MoebiusMap::MoebiusMap(std::vector<MoebiusStage> stages) : stages_(std::move(stages)) {}

MoebiusMap MoebiusMap::translate(const Vec3& v) { return MoebiusMap({Translate{v}}); }
MoebiusMap MoebiusMap::dilate(double s) { return MoebiusMap({Dilate{s}}); }
MoebiusMap MoebiusMap::rotate(const Mat3& Q) { return MoebiusMap({Rotate{Q}}); }
MoebiusMap MoebiusMap::rotate(const Vec3& axis, double angle) {
    return MoebiusMap({Rotate{Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix()}});
}
MoebiusMap MoebiusMap::invert(const Vec3& a) { return MoebiusMap({Invert{a}}); }

MoebiusMap MoebiusMap::then(const MoebiusMap& next) const {
    std::vector<MoebiusStage> s = stages_;
    s.insert(s.end(), next.stages_.begin(), next.stages_.end());
    MoebiusMap m(std::move(s));
    m.singular_threshold = std::max(singular_threshold, next.singular_threshold);
    return m;
}

MoebiusMap compose(const MoebiusMap& outer, const MoebiusMap& inner) { return inner.then(outer); }

void validate(const MoebiusMap& m) {
    for (const auto& st : m.stages()) {
        if (const auto* d = std::get_if<Dilate>(&st)) {
            if (!(d->s > 0.0) || !std::isfinite(d->s)) throw InvalidArgument("dilation factor must be positive");
        } else if (const auto* r = std::get_if<Rotate>(&st)) {
            const double orth = (r->Q.transpose() * r->Q - Mat3::Identity()).cwiseAbs().maxCoeff();
            if (!(orth <= 1e-12) || r->Q.determinant() < 0.0)
                throw InvalidArgument("rotation must be orthogonal with determinant +1");
        } else if (const auto* t = std::get_if<Translate>(&st)) {
            if (!t->v.allFinite()) throw InvalidArgument("translation must be finite");
        } else if (const auto* i = std::get_if<Invert>(&st)) {
            if (!i->a.allFinite()) throw InvalidArgument("inversion center must be finite");
        }
    }
}

namespace {

[[noreturn]] void singular(const Vec3& x, const Vec3& a) {
    std::ostringstream os;
    os << "point (" << x[0] << ", " << x[1] << ", " << x[2] << ") meets inversion center (" << a[0] << ", "
       << a[1] << ", " << a[2] << ")";
    throw SingularPoint(os.str());
}

} // namespace

Vec3 apply_point(const MoebiusMap& m, const Vec3& x) {
    Vec3 y = x;
    for (const auto& st : m.stages()) {
        std::visit(
            [&](const auto& s) {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, Translate>) y = y + s.v;
                else if constexpr (std::is_same_v<S, Dilate>) y = s.s * y;
                else if constexpr (std::is_same_v<S, Rotate>) y = s.Q * y;
                else {
                    const Vec3 d = y - s.a;
                    const double n2 = d.squaredNorm();
                    if (!(std::sqrt(n2) >= m.singular_threshold)) singular(y, s.a);
                    y = d / n2;
                }
            },
            st);
    }
    return y;
}

double conformal_factor(const MoebiusMap& m, const Vec3& x) {
    double f = 1.0;
    Vec3 y = x;
    for (const auto& st : m.stages()) {
        std::visit(
            [&](const auto& s) {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, Translate>) y = y + s.v;
                else if constexpr (std::is_same_v<S, Dilate>) {
                    y = s.s * y;
                    f *= s.s;
                } else if constexpr (std::is_same_v<S, Rotate>) y = s.Q * y;
                else {
                    const Vec3 d = y - s.a;
                    const double n2 = d.squaredNorm();
                    if (!(std::sqrt(n2) >= m.singular_threshold)) singular(y, s.a);
                    f /= n2;
                    y = d / n2;
                }
            },
            st);
    }
    return f;
}

namespace {

TaylorVec3 push_taylor(const MoebiusMap& m, TaylorVec3 t) {
    for (const auto& st : m.stages()) {
        std::visit(
            [&](const auto& s) {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, Translate>) {
                    for (int k = 0; k < 3; ++k) t[k][0] += s.v[k];
                } else if constexpr (std::is_same_v<S, Dilate>) {
                    for (auto& c : t) c *= s.s;
                } else if constexpr (std::is_same_v<S, Rotate>) {
                    TaylorVec3 r;
                    for (int i = 0; i < 3; ++i)
                        r[i] = s.Q(i, 0) * t[0] + s.Q(i, 1) * t[1] + s.Q(i, 2) * t[2];
                    t = r;
                } else {
                    const Vec3 y(t[0].value(), t[1].value(), t[2].value());
                    if (!((y - s.a).norm() >= m.singular_threshold)) singular(y, s.a);
                    TaylorVec3 d;
                    for (int k = 0; k < 3; ++k) d[k] = t[k] - Taylor3(s.a[k]);
                    const Taylor3 inv = reciprocal(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
                    for (int k = 0; k < 3; ++k) t[k] = d[k] * inv;
                }
            },
            st);
    }
    return t;
}

} // namespace

Jet3 pushforward_jet(const MoebiusMap& m, const Jet3& j) { return to_jet3(push_taylor(m, to_taylor(j)), j.p); }

Jet2 pushforward_jet(const MoebiusMap& m, const Jet2& j) {
    return static_cast<Jet2>(to_jet3(push_taylor(m, to_taylor(j)), j.p));
}

// ------------------------------------------------------------- Lorentz action

Mat5 lorentz_of(const MoebiusStage& stage) {
    Mat5 M = Mat5::Identity();
    std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Translate>) {
                // Light-cone coordinates p = Y5 - Y4, q = Y5 + Y4:
                // Y123 += v p, q += 2<v, Y123> + |v|^2 p.
                const Vec3& v = s.v;
                const double h = 0.5 * v.squaredNorm();
                M.block<3, 1>(0, 3) = -v;
                M.block<3, 1>(0, 4) = v;
                M.block<1, 3>(3, 0) = v.transpose();
                M.block<1, 3>(4, 0) = v.transpose();
                M(3, 3) = 1.0 - h;
                M(3, 4) = h;
                M(4, 3) = -h;
                M(4, 4) = 1.0 + h;
            } else if constexpr (std::is_same_v<S, Dilate>) {
                // p -> p / s, q -> s q: a boost in the (Y4, Y5) plane.
                const double ch = 0.5 * (s.s + 1.0 / s.s);
                const double sh = 0.5 * (s.s - 1.0 / s.s);
                M(3, 3) = ch;
                M(3, 4) = sh;
                M(4, 3) = sh;
                M(4, 4) = ch;
            } else if constexpr (std::is_same_v<S, Rotate>) {
                M.block<3, 3>(0, 0) = s.Q;
            } else {
                // diag(-Id, 1, -1) times the translation by -a.
                const Vec3& a = s.a;
                const double h = 0.5 * a.squaredNorm();
                M.block<3, 3>(0, 0) = -Mat3::Identity();
                M.block<3, 1>(0, 3) = -a;
                M.block<3, 1>(0, 4) = a;
                M.block<1, 3>(3, 0) = -a.transpose();
                M(3, 3) = 1.0 - h;
                M(3, 4) = h;
                M.block<1, 3>(4, 0) = a.transpose();
                M(4, 3) = h;
                M(4, 4) = -1.0 - h;
            }
        },
        stage);
    return M;
}

Mat5 lorentz_of(const MoebiusMap& m) {
    Mat5 M = Mat5::Identity();
    for (const auto& st : m.stages()) M = lorentz_of(st) * M;
    return M;
}

Vec5 act_on_Y(const Mat5& M, const Vec5& Y) { return M * Y; }

double lorentz_defect(const Mat5& M) {
    const Mat5 eps = lorentz_signature();
    return (M.transpose() * eps * M - eps).cwiseAbs().maxCoeff();
}

// ------------------------------------------------------------- text format

namespace {

class StageParser {
public:
    explicit StageParser(std::string_view s) : s_(s) {}

    MoebiusMap parse() {
        std::vector<MoebiusStage> stages;
        skip();
        if (pos_ == s_.size()) return MoebiusMap{};
        for (;;) {
            stages.push_back(stage());
            skip();
            if (pos_ == s_.size()) break;
            if (s_[pos_] != '|') throw SyntaxError("expected '|' between Moebius stages", pos_);
            ++pos_;
        }
        MoebiusMap m(std::move(stages));
        validate(m);
        return m;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string word() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    double number() {
        skip();
        const std::size_t start = pos_;
        const std::string rest(s_.substr(pos_));
        char* end = nullptr;
        const double v = std::strtod(rest.c_str(), &end);
        if (end == rest.c_str()) throw SyntaxError("expected a number", start);
        pos_ += static_cast<std::size_t>(end - rest.c_str());
        return v;
    }

    void expect(char c) {
        skip();
        if (pos_ >= s_.size() || s_[pos_] != c) throw SyntaxError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    Vec3 vec3() {
        expect('(');
        Vec3 v;
        v[0] = number();
        expect(',');
        v[1] = number();
        expect(',');
        v[2] = number();
        expect(')');
        return v;
    }

    MoebiusStage stage() {
        skip();
        const std::size_t start = pos_;
        const std::string w = word();
        if (w == "translate") return Translate{vec3()};
        if (w == "dilate") {
            const std::size_t at = pos_;
            const double s = number();
            if (!(s > 0.0)) throw SyntaxError("dilation factor must be positive", at);
            return Dilate{s};
        }
        if (w == "invert") return Invert{vec3()};
        if (w == "rotate") {
            const std::size_t at = pos_;
            const Vec3 axis = vec3();
            if (!(axis.norm() > 0.0)) throw SyntaxError("rotation axis must be nonzero", at);
            const double angle = number();
            return Rotate{Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix()};
        }
        throw SyntaxError("unknown Moebius stage '" + w + "' (expected translate, dilate, rotate, invert)", start);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::string fmt(double v) { return shortest(v); }

std::string fmt(const Vec3& v) { return "(" + fmt(v[0]) + "," + fmt(v[1]) + "," + fmt(v[2]) + ")"; }

} // namespace

MoebiusMap parse_moebius(std::string_view text) { return StageParser(text).parse(); }

std::string to_string(const MoebiusMap& m) {
    std::string out;
    for (const auto& st : m.stages()) {
        if (!out.empty()) out += " | ";
        std::visit(
            [&](const auto& s) {
                using S = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<S, Translate>) out += "translate " + fmt(s.v);
                else if constexpr (std::is_same_v<S, Dilate>) out += "dilate " + fmt(s.s);
                else if constexpr (std::is_same_v<S, Rotate>) {
                    const Eigen::AngleAxisd aa(s.Q);
                    out += "rotate " + fmt(Vec3(aa.axis())) + " " + fmt(aa.angle());
                } else out += "invert " + fmt(s.a);
            },
            st);
    }
    return out;
}

} // namespace willmore
