#pragma once

#include <utility>

#include "dampflow/field.hpp"

namespace dampflow {

/// Project onto divergence-free fields: u_hat(k) -> u_hat(k) - (u_hat.k^)k^.
/// The k = 0 mode is set to zero (the projector symbol is undefined there;
/// the solver works with zero-mean flows).
SpectralField leray_project(const SpectralField& g);

/// Sharp spectral cutoff: coefficients with |k| > radius are zeroed,
/// |k| <= radius pass through untouched (closed-ball convention, which makes
/// the operator idempotent at every radius).
SpectralField friedrichs_truncate(const SpectralField& g, double radius);

/// Composition of the spherical cutoff at the grid's trunc_radius with the
/// Leray projection: the projection onto the band-limited divergence-free
/// subspace the Galerkin system lives on.
SpectralField galerkin_project(const SpectralField& g);

/// Split into (low, high) parts across the shell |k| = kappa: low keeps modes
/// with |k| < kappa strictly, high keeps |k| >= kappa. The parts are
/// orthogonal and sum to the input exactly.
std::pair<SpectralField, SpectralField> frequency_split(const SpectralField& g, double kappa);

}  // namespace dampflow
