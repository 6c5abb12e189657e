#include "dampflow/field.hpp"

#include <cmath>
#include <stdexcept>

namespace dampflow {

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) {
        throw std::invalid_argument("fields live on different grids");
    }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
    for (auto& v : data_) v *= scale;
    return *this;
}

void SpectralField::add_scaled(double scale, const SpectralField& other) {
    require_same_grid(grid_, other.grid_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += scale * other.data_[i];
}

SpectralField operator-(SpectralField a, const SpectralField& b) {
    a -= b;
    return a;
}

double linf_coefficient(const SpectralField& g) {
    double m = 0.0;
    for (const auto& v : g.raw()) m = std::max(m, std::abs(v));
    return m;
}

double max_hermitian_asymmetry(const SpectralField& g) {
    const int n = g.grid().n_points();
    double worst = 0.0;
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < n; ++i) {
            const int im = (n - i) % n;
            for (int j = 0; j < n; ++j) {
                const int jm = (n - j) % n;
                for (int k = 0; k < n; ++k) {
                    const int km = (n - k) % n;
                    worst = std::max(worst,
                                     std::abs(g.at(c, i, j, k) - std::conj(g.at(c, im, jm, km))));
                }
            }
        }
    }
    return worst;
}

double max_divergence(const SpectralField& g) {
    const Grid& grid = g.grid();
    const int n = grid.n_points();
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double kx = grid.axis_wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double ky = grid.axis_wavenumber(j);
            for (int k = 0; k < n; ++k) {
                const double kz = grid.axis_wavenumber(k);
                const std::complex<double> div =
                    kx * g.at(0, i, j, k) + ky * g.at(1, i, j, k) + kz * g.at(2, i, j, k);
                worst = std::max(worst, std::abs(div));
            }
        }
    }
    return worst;
}

double max_coefficient_outside_ball(const SpectralField& g, double radius) {
    const Grid& grid = g.grid();
    const int n = grid.n_points();
    const double r2 = radius * radius;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double kx = grid.axis_wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double ky = grid.axis_wavenumber(j);
            for (int k = 0; k < n; ++k) {
                const double kz = grid.axis_wavenumber(k);
                if (kx * kx + ky * ky + kz * kz > r2) {
                    for (int c = 0; c < 3; ++c) {
                        worst = std::max(worst, std::abs(g.at(c, i, j, k)));
                    }
                }
            }
        }
    }
    return worst;
}

bool all_finite(const SpectralField& g) {
    for (const auto& v : g.raw()) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

bool all_finite(const PhysicalField& f) {
    for (double v : f.raw()) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

}  // namespace dampflow
