#pragma once

#include <cstddef>
#include <vector>

namespace dampflow {

inline constexpr double kPi = 3.14159265358979323846;

/// Discretization descriptor for the periodic box [0, 2*pi*L]^3 sampled on an
/// n^3 collocation lattice. Wavenumbers live on (1/L)*Z^3 with each axis index
/// folded into the symmetric range (-n/2, n/2]. `trunc_radius` is the radius
/// of the spherical spectral cutoff in physical wavenumber units; it must sit
/// inside the dealiasing-safe zone, trunc_radius <= (n/3)/L, so quadratic
/// products evaluated by collocation are alias-free after truncation.
class Grid {
  public:
    Grid() = default;

    int n_points() const noexcept { return n_; }
    double box_scale() const noexcept { return box_scale_; }
    double trunc_radius() const noexcept { return trunc_radius_; }

    /// Folded wavenumber along one axis for FFT index j in [0, n).
    double axis_wavenumber(int j) const { return wavenumbers_[static_cast<std::size_t>(j)]; }
    const std::vector<double>& wavenumbers() const noexcept { return wavenumbers_; }

    double domain_length() const noexcept { return 2.0 * kPi * box_scale_; }
    double domain_volume() const noexcept;
    double cell_volume() const noexcept;

    std::size_t point_count() const noexcept {
        auto n = static_cast<std::size_t>(n_);
        return n * n * n;
    }
    std::size_t flat_index(int i, int j, int k) const noexcept {
        auto n = static_cast<std::size_t>(n_);
        return (static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n +
               static_cast<std::size_t>(k);
    }

    bool operator==(const Grid&) const = default;

    friend Grid make_grid(int n_points, double box_scale, double trunc_radius);

  private:
    int n_ = 0;
    double box_scale_ = 0.0;
    double trunc_radius_ = 0.0;
    std::vector<double> wavenumbers_;
};

/// Map FFT index j in [0, n) to the symmetric integer range (-n/2, n/2].
int fold_index(int j, int n);

/// Largest dealiasing-safe truncation radius, (n/3)/L.
double max_trunc_radius(int n_points, double box_scale);

/// Build a grid. Throws std::invalid_argument for odd or too-small n_points,
/// non-positive box_scale, or a truncation radius outside (0, (n/3)/L].
Grid make_grid(int n_points, double box_scale, double trunc_radius);

}  // namespace dampflow
