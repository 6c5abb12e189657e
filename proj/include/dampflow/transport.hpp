#pragma once

#include "dampflow/field.hpp"

namespace dampflow {

/// Galerkin transport term A_n[div(u (x) u)], computed pseudo-spectrally:
/// collocate u, form the products u_i u_j, transform, contract with i*k,
/// truncate to the grid ball and Leray-project. With trunc_radius inside the
/// dealiasing-safe zone the quadratic products are alias-free, so the discrete
/// pairing <transport_term(u), u> vanishes to round-off.
///
/// Throws std::invalid_argument if u carries energy outside the truncation
/// ball.
SpectralField transport_term(const SpectralField& u);

}  // namespace dampflow
