#pragma once

#include "dampflow/field.hpp"

namespace dampflow {

/// Discrete Fourier transform pair between collocation samples and spectral
/// coefficients.
///
/// Convention (pinned by the Parseval test in the spectral suite):
///   forward:  u_hat(k) = (1/n^3) * sum_x u(x) exp(-i k.x)
///   inverse:  u(x)     = sum_k u_hat(k) exp(+i k.x)
/// so a single mode A*cos(k0.x) carries coefficients A/2 at +-k0, and the
/// discrete Parseval identity reads
///   (2*pi*L/n)^3 * sum_x |u(x)|^2 = (2*pi*L)^3 * sum_k |u_hat(k)|^2.
///
/// The inverse transform of a Hermitian-symmetric field is real up to
/// round-off; the imaginary parts are dropped.
SpectralField forward_transform(const PhysicalField& f);
PhysicalField inverse_transform(const SpectralField& g);

}  // namespace dampflow
