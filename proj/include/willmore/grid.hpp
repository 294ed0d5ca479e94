#pragma once

#include <optional>
#include <string>
#include <vector>

#include "willmore/linalg.hpp"

namespace willmore {

/// Square grid of spacing h centered on a disk; node (i, j) sits at
/// center + h (i, j) for |i|, |j| <= n with n = round(radius / h).
struct DiskGrid {
    Vec2 center = Vec2::Zero();
    double radius = 1.0;
    double h = 0.1;
    int n = 10;

    /// Throws GridTooSmall when fewer than 5 nodes fit across the disk.
    static DiskGrid make(const Vec2& center, double radius, double h);

    int side() const { return 2 * n + 1; }
    std::size_t size() const { return static_cast<std::size_t>(side()) * side(); }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j + n) * side() + static_cast<std::size_t>(i + n);
    }
    Vec2 node(int i, int j) const { return center + h * Vec2(i, j); }
    bool inside(int i, int j) const;
    /// Every node of the (2w+1)^2 stencil box around (i, j) lies in the disk.
    bool interior(int i, int j, int w) const;
};

/// Per-node residual magnitudes on the interior of a disk grid.
struct ResidualField {
    Vec2 center = Vec2::Zero();
    double radius = 0.0;
    double h = 0.0;
    std::vector<Vec2> nodes;
    std::vector<double> values;
    double max = 0.0;
    double l2_mean = 0.0;

    void summarize();
};

/// Observed order log2(e(h) / e(h/2)) per consecutive pair.
std::vector<double> observed_orders(const std::vector<double>& errors);

/// Pairs pass when the order reaches `min_order`, or when both levels sit
/// under `noise_floor` (an identically vanishing residual has no order).
bool convergence_ok(const std::vector<double>& errors, double min_order, double noise_floor);

void write_field_csv(const ResidualField& f, const std::string& path);

} // namespace willmore
