#include "willmore/grid.hpp"

#include <cmath>
#include <fstream>

#include "willmore/error.hpp"
#include "willmore/kernels.hpp"

namespace willmore {

DiskGrid DiskGrid::make(const Vec2& center, double radius, double h) {
    if (!(radius > 0.0) || !(h > 0.0) || !center.allFinite())
        throw InvalidArgument("disk grids need a finite center, radius > 0 and h > 0");
    const double steps = std::round(radius / h);
    if (steps < 2.0) throw GridTooSmall("fewer than 5x5 nodes fit in the disk");
    if (steps > 1e5) throw BadResolution("grid spacing too fine for the disk");
    DiskGrid g;
    g.center = center;
    g.radius = radius;
    g.h = h;
    g.n = static_cast<int>(steps);
    return g;
}

bool DiskGrid::inside(int i, int j) const {
    if (std::abs(i) > n || std::abs(j) > n) return false;
    const double r = radius / h;
    return static_cast<double>(i) * i + static_cast<double>(j) * j <= r * r * (1.0 + 1e-12);
}

bool DiskGrid::interior(int i, int j, int w) const {
    return inside(i - w, j - w) && inside(i + w, j - w) && inside(i - w, j + w) && inside(i + w, j + w);
}

void ResidualField::summarize() {
    max = values.empty() ? 0.0 : kernels::max_abs(values);
    std::vector<double> sq(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) sq[k] = values[k] * values[k];
    l2_mean = values.empty() ? 0.0 : std::sqrt(kernels::sum(sq) / static_cast<double>(values.size()));
}

std::vector<double> observed_orders(const std::vector<double>& errors) {
    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) out.push_back(std::log2(errors[k] / errors[k + 1]));
    return out;
}

bool convergence_ok(const std::vector<double>& errors, double min_order, double noise_floor) {
    if (errors.size() < 2) return false;
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
        const double a = errors[k];
        const double b = errors[k + 1];
        if (!std::isfinite(a) || !std::isfinite(b)) return false;
        if (a <= noise_floor && b <= noise_floor) continue;
        if (!(std::log2(a / b) >= min_order)) return false;
    }
    return true;
}

void write_field_csv(const ResidualField& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out.precision(17);
    out << "# willmore residual-field v1\nx,y,value\n";
    for (std::size_t k = 0; k < f.values.size(); ++k)
        out << f.nodes[k][0] << ',' << f.nodes[k][1] << ',' << f.values[k] << '\n';
}

} // namespace willmore
