#include "dampflow/transport.hpp"

#include <complex>
#include <stdexcept>

#include "dampflow/operators.hpp"
#include "dampflow/transform.hpp"

namespace dampflow {

SpectralField transport_term(const SpectralField& u) {
    const Grid& grid = u.grid();
    if (max_coefficient_outside_ball(u, grid.trunc_radius()) > 1e-12 * (1.0 + linf_coefficient(u))) {
        throw std::invalid_argument("transport_term requires a field inside the truncation ball");
    }

    const PhysicalField f = inverse_transform(u);
    const std::size_t m = grid.point_count();

    // Symmetric product tensor packed into two 3-component fields:
    // diag = (u0u0, u1u1, u2u2), off = (u1u2, u0u2, u0u1).
    PhysicalField diag(grid);
    PhysicalField off(grid);
    for (std::size_t i = 0; i < m; ++i) {
        const auto v = f.vector_at(i);
        diag.component(0)[i] = v[0] * v[0];
        diag.component(1)[i] = v[1] * v[1];
        diag.component(2)[i] = v[2] * v[2];
        off.component(0)[i] = v[1] * v[2];
        off.component(1)[i] = v[0] * v[2];
        off.component(2)[i] = v[0] * v[1];
    }
    const SpectralField diag_hat = forward_transform(diag);
    const SpectralField off_hat = forward_transform(off);

    SpectralField out(grid);
    const int n = grid.n_points();
    const std::complex<double> iunit(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        const double kx = grid.axis_wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double ky = grid.axis_wavenumber(j);
            for (int k = 0; k < n; ++k) {
                const double kz = grid.axis_wavenumber(k);
                const auto t00 = diag_hat.at(0, i, j, k);
                const auto t11 = diag_hat.at(1, i, j, k);
                const auto t22 = diag_hat.at(2, i, j, k);
                const auto t12 = off_hat.at(0, i, j, k);
                const auto t02 = off_hat.at(1, i, j, k);
                const auto t01 = off_hat.at(2, i, j, k);
                out.at(0, i, j, k) = iunit * (kx * t00 + ky * t01 + kz * t02);
                out.at(1, i, j, k) = iunit * (kx * t01 + ky * t11 + kz * t12);
                out.at(2, i, j, k) = iunit * (kx * t02 + ky * t12 + kz * t22);
            }
        }
    }
    return galerkin_project(out);
}

}  // namespace dampflow
