#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "dampflow/grid.hpp"

namespace dampflow {

/// Three complex coefficient arrays over the wavenumber lattice of a Grid.
/// Storage is component-major, lattice row-major: data[c*n^3 + (i*n+j)*n + k].
/// A field representing a real velocity is Hermitian-symmetric,
/// coeff(-k) = conj(coeff(k)), and zero-mean (coefficient at k = 0 is 0).
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(Grid grid)
        : grid_(std::move(grid)), data_(3 * grid_.point_count(), std::complex<double>{0.0, 0.0}) {}

    const Grid& grid() const noexcept { return grid_; }

    std::complex<double>& at(int c, int i, int j, int k) {
        return data_[static_cast<std::size_t>(c) * grid_.point_count() + grid_.flat_index(i, j, k)];
    }
    const std::complex<double>& at(int c, int i, int j, int k) const {
        return data_[static_cast<std::size_t>(c) * grid_.point_count() + grid_.flat_index(i, j, k)];
    }

    std::span<std::complex<double>> component(int c) {
        return {data_.data() + static_cast<std::size_t>(c) * grid_.point_count(), grid_.point_count()};
    }
    std::span<const std::complex<double>> component(int c) const {
        return {data_.data() + static_cast<std::size_t>(c) * grid_.point_count(), grid_.point_count()};
    }

    std::vector<std::complex<double>>& raw() noexcept { return data_; }
    const std::vector<std::complex<double>>& raw() const noexcept { return data_; }

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double scale);

    /// this += scale * other
    void add_scaled(double scale, const SpectralField& other);

  private:
    Grid grid_;
    std::vector<std::complex<double>> data_;
};

SpectralField operator-(SpectralField a, const SpectralField& b);

/// Three real arrays of collocation samples x_j = 2*pi*L*j/n.
/// Same component-major, row-major layout as SpectralField.
class PhysicalField {
  public:
    PhysicalField() = default;
    explicit PhysicalField(Grid grid) : grid_(std::move(grid)), data_(3 * grid_.point_count(), 0.0) {}

    const Grid& grid() const noexcept { return grid_; }

    double& at(int c, int i, int j, int k) {
        return data_[static_cast<std::size_t>(c) * grid_.point_count() + grid_.flat_index(i, j, k)];
    }
    double at(int c, int i, int j, int k) const {
        return data_[static_cast<std::size_t>(c) * grid_.point_count() + grid_.flat_index(i, j, k)];
    }

    std::span<double> component(int c) {
        return {data_.data() + static_cast<std::size_t>(c) * grid_.point_count(), grid_.point_count()};
    }
    std::span<const double> component(int c) const {
        return {data_.data() + static_cast<std::size_t>(c) * grid_.point_count(), grid_.point_count()};
    }

    /// Velocity 3-vector at flat collocation index p.
    std::array<double, 3> vector_at(std::size_t p) const {
        const std::size_t stride = grid_.point_count();
        return {data_[p], data_[stride + p], data_[2 * stride + p]};
    }

    std::vector<double>& raw() noexcept { return data_; }
    const std::vector<double>& raw() const noexcept { return data_; }

  private:
    Grid grid_;
    std::vector<double> data_;
};

/// Throws std::invalid_argument if the two fields live on different grids.
void require_same_grid(const Grid& a, const Grid& b);

// Invariant probes. These return worst-case defect magnitudes so tests can
// assert tolerances; they never throw.
double linf_coefficient(const SpectralField& g);
double max_hermitian_asymmetry(const SpectralField& g);
double max_divergence(const SpectralField& g);
double max_coefficient_outside_ball(const SpectralField& g, double radius);
bool all_finite(const SpectralField& g);
bool all_finite(const PhysicalField& f);

}  // namespace dampflow
