#include "dampflow/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace dampflow {

namespace {

template <typename Weight>
double weighted_spectral_sum(const SpectralField& g, Weight&& weight) {
    const Grid& grid = g.grid();
    const int n = grid.n_points();
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double kx = grid.axis_wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double ky = grid.axis_wavenumber(j);
            for (int k = 0; k < n; ++k) {
                const double kz = grid.axis_wavenumber(k);
                const double k2 = kx * kx + ky * ky + kz * kz;
                const double w = weight(k2);
                if (w == 0.0) continue;
                double mag2 = 0.0;
                for (int c = 0; c < 3; ++c) mag2 += std::norm(g.at(c, i, j, k));
                sum += w * mag2;
            }
        }
    }
    return sum;
}

}  // namespace

double l2_norm(const SpectralField& g) {
    return std::sqrt(g.grid().domain_volume() * weighted_spectral_sum(g, [](double) { return 1.0; }));
}

double sobolev_norm(const SpectralField& g, double s) {
    return std::sqrt(g.grid().domain_volume() *
                     weighted_spectral_sum(g, [s](double k2) { return std::pow(1.0 + k2, s); }));
}

double homogeneous_sobolev_norm(const SpectralField& g, double s) {
    if (s < 0.0) {
        double mean2 = 0.0;
        for (int c = 0; c < 3; ++c) mean2 += std::norm(g.at(c, 0, 0, 0));
        if (std::sqrt(mean2) > 1e-14 * (1.0 + linf_coefficient(g))) {
            throw std::invalid_argument(
                "homogeneous Sobolev norm with s < 0 requires a zero-mean field");
        }
    }
    return std::sqrt(g.grid().domain_volume() * weighted_spectral_sum(g, [s](double k2) {
                         return k2 == 0.0 ? 0.0 : std::pow(k2, s);
                     }));
}

double lp_norm(const PhysicalField& f, double p) {
    if (p < 1.0) {
        throw std::invalid_argument("lp_norm requires p >= 1");
    }
    const std::size_t m = f.grid().point_count();
    double sum = 0.0;
    if (p == 2.0) {
        for (double v : f.raw()) sum += v * v;
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            const auto v = f.vector_at(i);
            const double speed = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            sum += std::pow(speed, p);
        }
    }
    return std::pow(f.grid().cell_volume() * sum, 1.0 / p);
}

double max_speed(const PhysicalField& f) {
    const std::size_t m = f.grid().point_count();
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto v = f.vector_at(i);
        worst = std::max(worst, v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    }
    return std::sqrt(worst);
}

}  // namespace dampflow
