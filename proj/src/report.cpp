#include "willmore/report.hpp"

#include <cmath>
#include <sstream>

#include "willmore/format.hpp"

namespace willmore::report {
namespace {

template <class V>
Json vec(const V& v) {
    Json a = Json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(v[k]);
    return a;
}

} // namespace

Json to_json(const EnergyReport& r) {
    Json j;
    j["center"] = vec(r.center);
    j["radius"] = r.radius;
    j["scheme"] = r.scheme;
    j["W"] = r.W;
    j["E_tf"] = r.E_tf;
    j["dirichlet_n"] = r.dirichlet_n;
    j["l2_tf"] = r.l2_tf;
    j["linf_tf_half"] = r.linf_tf_half;
    j["weak_l2_gradlambda"] = r.weak_l2_gradlambda;
    j["ratio"] = r.ratio;
    j["umbilic"] = r.umbilic;
    j["hbar"] = r.hbar;
    j["h_osc"] = r.h_osc;
    j["lambda_bar"] = r.lambda_bar;
    j["gates"] = {{"dirichlet_n", r.gate_dirichlet}, {"weak_l2", r.gate_weak}, {"l2_tf", r.gate_small},
                  {"all", r.hypotheses()}};
    return j;
}

Json to_json(const OscillationResult& o) {
    return {{"h_osc", o.h_osc}, {"l2_tf", o.l2_tf}, {"quotient", o.quotient}, {"hbar", o.hbar},
            {"degenerate", o.degenerate}, {"willmore", o.willmore}};
}

Json to_json(const AverageData& a) {
    return {{"hbar", a.hbar}, {"ybar", vec(a.ybar)}, {"lorentz_square", a.lorentz_square}, {"variance", a.variance}};
}

Json to_json(const NormalizationResult& n) {
    Json j;
    j["status"] = n.status == NormalizationResult::Status::Inverted ? "inverted" : "identity-suffices";
    j["theta"] = to_string(n.theta);
    j["sphere_center"] = vec(n.sphere_center);
    j["sphere_radius"] = n.sphere_radius;
    j["chosen_a"] = vec(n.chosen_a);
    j["achieved_hbar"] = n.achieved_hbar;
    j["predicted_hbar"] = n.predicted_hbar;
    j["hbar_before"] = n.hbar_before;
    j["min_distance"] = n.min_distance;
    j["lambda_bar_before"] = n.lambda_bar_before;
    j["lambda_bar_after"] = n.lambda_bar_after;
    j["curvature_scale"] = n.curvature_scale;
    j["lorentz_square"] = n.lorentz_square;
    j["variance"] = n.variance;
    j["l2_tf"] = n.l2_tf;
    j["cory"] = {{"quotient", n.cory_quotient}, {"applicable", n.cory_applicable}, {"gate", n.cory_gate}};
    return j;
}

Json to_json(const GaussBonnetResult& g) {
    return {{"E_tf_total", g.E_tf_total}, {"W_total", g.W_total}, {"chi", g.chi}, {"rhs", g.rhs},
            {"defect", g.defect}, {"chart_radius", g.chart_radius}, {"tail", g.tail}};
}

Json to_json(const ConvergenceStudy& c) {
    Json j;
    j["kind"] = residual_name(c.kind);
    j["h"] = c.h;
    j["max_residual"] = c.max_residual;
    Json orders = Json::array();
    for (double o : c.orders) {
        if (std::isfinite(o)) orders.push_back(o);
        else orders.push_back(nullptr);
    }
    j["orders"] = orders;
    return j;
}

Json to_json(const ResidualField& f) {
    return {{"center", vec(f.center)}, {"radius", f.radius}, {"h", f.h}, {"nodes", f.values.size()},
            {"max", f.max}, {"l2_mean", f.l2_mean}};
}

Json to_json(const FundamentalForms& f) {
    return {{"lambda", f.lambda}, {"normal", vec(f.normal)}, {"a11", f.a11}, {"a12", f.a12}, {"a22", f.a22},
            {"H", f.H}, {"tf11", f.tf11}, {"tf12", f.tf12}, {"K", f.K},
            {"conformality_defect", f.conformality_defect}};
}

Json to_json(const CGMJet& c) {
    return {{"Y", vec(c.Y)}, {"Yx", vec(c.Yx)}, {"Yy", vec(c.Yy)},
            {"lorentz_energy_density", c.lorentz_energy_density}};
}

std::string energy_csv(const std::vector<EnergyReport>& rows) {
    std::ostringstream os;
    os << "# willmore-lab energy v" << kSchemaVersion << '\n';
    os << "cx,cy,radius,scheme,W,E_tf,dirichlet_n,l2_tf,linf_tf_half,weak_l2_gradlambda,ratio,umbilic,hbar,h_osc,"
          "lambda_bar,gate_dirichlet,gate_weak,gate_small\n";
    for (const EnergyReport& r : rows) {
        os << shortest(r.center[0]) << ',' << shortest(r.center[1]) << ',' << shortest(r.radius) << ',' << r.scheme
           << ',' << shortest(r.W) << ',' << shortest(r.E_tf) << ',' << shortest(r.dirichlet_n) << ','
           << shortest(r.l2_tf) << ',' << shortest(r.linf_tf_half) << ',' << shortest(r.weak_l2_gradlambda) << ','
           << shortest(r.ratio) << ',' << r.umbilic << ',' << shortest(r.hbar) << ',' << shortest(r.h_osc) << ','
           << shortest(r.lambda_bar) << ',' << r.gate_dirichlet << ',' << r.gate_weak << ',' << r.gate_small
           << '\n';
    }
    return os.str();
}

std::string convergence_csv(const std::vector<ConvergenceStudy>& rows) {
    std::ostringstream os;
    os << "# willmore-lab residuals v" << kSchemaVersion << '\n';
    os << "kind,level,h,max_residual,order\n";
    for (const ConvergenceStudy& c : rows) {
        for (std::size_t k = 0; k < c.h.size(); ++k) {
            os << residual_name(c.kind) << ',' << k << ',' << shortest(c.h[k]) << ',' << shortest(c.max_residual[k])
               << ',';
            if (k > 0 && std::isfinite(c.orders[k - 1])) os << shortest(c.orders[k - 1]);
            os << '\n';
        }
    }
    return os.str();
}

} // namespace willmore::report
