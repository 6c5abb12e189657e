#pragma once

#include <cstdint>

#include "dampflow/field.hpp"

namespace dampflow {

/// Taylor-Green vortex scaled to the box:
///   u = A * ( sin(x/L)cos(y/L)cos(z/L), -cos(x/L)sin(y/L)cos(z/L), 0 ).
/// Divergence-free and zero-mean by construction.
SpectralField init_taylor_green(const Grid& grid, double amplitude);

/// Seeded Gaussian coefficients on |k| <= spectrum_cutoff, Hermitian
/// symmetrized, Leray-projected, zero-mean, rescaled so l2_norm == amplitude.
/// Identical seeds give identical fields.
SpectralField init_random_divfree(const Grid& grid, std::uint64_t seed, double spectrum_cutoff,
                                  double amplitude);

}  // namespace dampflow
