#include "dampflow/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dampflow {

double Grid::domain_volume() const noexcept {
    const double l = domain_length();
    return l * l * l;
}

double Grid::cell_volume() const noexcept {
    const double h = domain_length() / static_cast<double>(n_);
    return h * h * h;
}

int fold_index(int j, int n) { return j <= n / 2 ? j : j - n; }

double max_trunc_radius(int n_points, double box_scale) {
    return static_cast<double>(n_points) / (3.0 * box_scale);
}

Grid make_grid(int n_points, double box_scale, double trunc_radius) {
    if (n_points < 8 || n_points % 2 != 0) {
        throw std::invalid_argument("n_points must be even and >= 8, got " +
                                    std::to_string(n_points));
    }
    if (!(box_scale > 0.0)) {
        throw std::invalid_argument("box_scale must be positive");
    }
    const double limit = max_trunc_radius(n_points, box_scale);
    // Tiny slack so a limit computed by the caller in a different expression
    // order is not rejected.
    if (!(trunc_radius > 0.0) || trunc_radius > limit * (1.0 + 1e-12)) {
        throw std::invalid_argument("trunc_radius must lie in (0, (n/3)/L] = (0, " +
                                    std::to_string(limit) + "], got " +
                                    std::to_string(trunc_radius));
    }

    Grid g;
    g.n_ = n_points;
    g.box_scale_ = box_scale;
    g.trunc_radius_ = trunc_radius;
    g.wavenumbers_.resize(static_cast<std::size_t>(n_points));
    for (int j = 0; j < n_points; ++j) {
        g.wavenumbers_[static_cast<std::size_t>(j)] =
            static_cast<double>(fold_index(j, n_points)) / box_scale;
    }
    return g;
}

}  // namespace dampflow
