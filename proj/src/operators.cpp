#include "dampflow/operators.hpp"

#include <cmath>

namespace dampflow {

SpectralField leray_project(const SpectralField& g) {
    const Grid& grid = g.grid();
    const int n = grid.n_points();
    SpectralField out(grid);
    for (int i = 0; i < n; ++i) {
        const double kx = grid.axis_wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double ky = grid.axis_wavenumber(j);
            for (int k = 0; k < n; ++k) {
                const double kz = grid.axis_wavenumber(k);
                const double k2 = kx * kx + ky * ky + kz * kz;
                if (k2 == 0.0) continue;  // mean mode stays zero
                const std::complex<double> vx = g.at(0, i, j, k);
                const std::complex<double> vy = g.at(1, i, j, k);
                const std::complex<double> vz = g.at(2, i, j, k);
                const std::complex<double> kdotv = (kx * vx + ky * vy + kz * vz) / k2;
                out.at(0, i, j, k) = vx - kdotv * kx;
                out.at(1, i, j, k) = vy - kdotv * ky;
                out.at(2, i, j, k) = vz - kdotv * kz;
            }
        }
    }
    return out;
}

SpectralField friedrichs_truncate(const SpectralField& g, double radius) {
    const Grid& grid = g.grid();
    const int n = grid.n_points();
    const double r2 = radius * radius;
    SpectralField out(grid);
    for (int i = 0; i < n; ++i) {
        const double kx = grid.axis_wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double ky = grid.axis_wavenumber(j);
            for (int k = 0; k < n; ++k) {
                const double kz = grid.axis_wavenumber(k);
                if (kx * kx + ky * ky + kz * kz <= r2) {
                    for (int c = 0; c < 3; ++c) out.at(c, i, j, k) = g.at(c, i, j, k);
                }
            }
        }
    }
    return out;
}

SpectralField galerkin_project(const SpectralField& g) {
    return leray_project(friedrichs_truncate(g, g.grid().trunc_radius()));
}

std::pair<SpectralField, SpectralField> frequency_split(const SpectralField& g, double kappa) {
    const Grid& grid = g.grid();
    const int n = grid.n_points();
    const double k2cut = kappa * kappa;
    SpectralField low(grid);
    SpectralField high(grid);
    for (int i = 0; i < n; ++i) {
        const double kx = grid.axis_wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double ky = grid.axis_wavenumber(j);
            for (int k = 0; k < n; ++k) {
                const double kz = grid.axis_wavenumber(k);
                SpectralField& part = (kx * kx + ky * ky + kz * kz < k2cut) ? low : high;
                for (int c = 0; c < 3; ++c) part.at(c, i, j, k) = g.at(c, i, j, k);
            }
        }
    }
    return {std::move(low), std::move(high)};
}

}  // namespace dampflow
