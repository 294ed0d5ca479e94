#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "willmore/jet.hpp"
#include "willmore/linalg.hpp"

namespace willmore {

struct Translate {
    Vec3 v = Vec3::Zero();
};
struct Dilate {
    double s = 1.0;
};
struct Rotate {
    Mat3 Q = Mat3::Identity();
};
/// x -> (x - a) / |x - a|^2
struct Invert {
    Vec3 a = Vec3::Zero();
};

using MoebiusStage = std::variant<Translate, Dilate, Rotate, Invert>;

/// A conformal map of R^3 as a list of primitive stages applied in order
/// (stages.front() acts first).
class MoebiusMap {
public:
    MoebiusMap() = default;
    explicit MoebiusMap(std::vector<MoebiusStage> stages);

    static MoebiusMap identity() { return {}; }
    static MoebiusMap translate(const Vec3& v);
    static MoebiusMap dilate(double s);
    static MoebiusMap rotate(const Mat3& Q);
    static MoebiusMap rotate(const Vec3& axis, double angle);
    static MoebiusMap invert(const Vec3& a);

    const std::vector<MoebiusStage>& stages() const { return stages_; }
    bool empty() const { return stages_.empty(); }

    /// `then` applied after this map.
    MoebiusMap then(const MoebiusMap& next) const;

    /// Singular-point threshold for inversion stages, |x - a| >= threshold.
    double singular_threshold = 1e-10;

private:
    std::vector<MoebiusStage> stages_;
};

/// Mathematical composition (outer o inner): inner acts first.
MoebiusMap compose(const MoebiusMap& outer, const MoebiusMap& inner);

/// Throws InvalidArgument for s <= 0 or non-orthogonal / improper Q.
void validate(const MoebiusMap& m);

/// Throws SingularPoint when an inversion stage meets its center.
Vec3 apply_point(const MoebiusMap& m, const Vec3& x);

/// Conformal factor |d m(x)| (the common singular value of the differential).
double conformal_factor(const MoebiusMap& m, const Vec3& x);

/// Exact chain rule through every stage.
Jet2 pushforward_jet(const MoebiusMap& m, const Jet2& j);
Jet3 pushforward_jet(const MoebiusMap& m, const Jet3& j);

/// Induced element of SO(4,1) acting on conformal Gauss maps: Y_{m o Phi} = M Y.
Mat5 lorentz_of(const MoebiusMap& m);
Mat5 lorentz_of(const MoebiusStage& s);

Vec5 act_on_Y(const Mat5& M, const Vec5& Y);

/// max |M^T eps M - eps|
double lorentz_defect(const Mat5& M);

/// Stages separated by '|', e.g.
///   translate (1,0,0) | dilate 2 | rotate (0,0,1) 0.5 | invert (0,0,3)
/// `rotate` takes an axis and an angle in radians. Empty text is the identity.
MoebiusMap parse_moebius(std::string_view text);

/// Inverse of parse_moebius up to round-off (rotations print as axis-angle).
std::string to_string(const MoebiusMap& m);

} // namespace willmore
