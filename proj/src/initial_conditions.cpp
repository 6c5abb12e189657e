#include "dampflow/initial_conditions.hpp"

#include <complex>
#include <random>
#include <stdexcept>

#include "dampflow/norms.hpp"
#include "dampflow/operators.hpp"

namespace dampflow {

SpectralField init_taylor_green(const Grid& grid, double amplitude) {
    SpectralField u(grid);
    const int n = grid.n_points();
    const std::complex<double> iunit(0.0, 1.0);
    for (int sx : {1, -1}) {
        for (int sy : {1, -1}) {
            for (int sz : {1, -1}) {
                const int i = sx == 1 ? 1 : n - 1;
                const int j = sy == 1 ? 1 : n - 1;
                const int k = sz == 1 ? 1 : n - 1;
                u.at(0, i, j, k) = -amplitude * iunit * static_cast<double>(sx) / 8.0;
                u.at(1, i, j, k) = amplitude * iunit * static_cast<double>(sy) / 8.0;
            }
        }
    }
    return u;
}

SpectralField init_random_divfree(const Grid& grid, std::uint64_t seed, double spectrum_cutoff,
                                  double amplitude) {
    if (!(spectrum_cutoff > 0.0)) throw std::invalid_argument("spectrum_cutoff must be > 0");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    SpectralField draw(grid);
    const int n = grid.n_points();
    for (int c = 0; c < 3; ++c) {
        auto comp = draw.component(c);
        for (std::size_t p = 0; p < comp.size(); ++p) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            comp[p] = {re, im};
        }
    }

    // Hermitian part of the draw, so the inverse transform is real.
    SpectralField sym(grid);
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < n; ++i) {
            const int ci = (n - i) % n;
            for (int j = 0; j < n; ++j) {
                const int cj = (n - j) % n;
                for (int k = 0; k < n; ++k) {
                    const int ck = (n - k) % n;
                    sym.at(c, i, j, k) =
                        0.5 * (draw.at(c, i, j, k) + std::conj(draw.at(c, ci, cj, ck)));
                }
            }
        }
    }
    for (int c = 0; c < 3; ++c) sym.at(c, 0, 0, 0) = 0.0;

    const double radius = std::min(spectrum_cutoff, grid.trunc_radius());
    SpectralField u = leray_project(friedrichs_truncate(sym, radius));
    const double norm = l2_norm(u);
    if (norm == 0.0) throw std::invalid_argument("spectrum_cutoff keeps no modes on this grid");
    u *= amplitude / norm;
    return u;
}

}  // namespace dampflow
