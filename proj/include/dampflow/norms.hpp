#pragma once

#include "dampflow/field.hpp"

namespace dampflow {

/// L2 norm of a spectral field: sqrt((2*pi*L)^3 * sum_k |u_hat(k)|^2).
double l2_norm(const SpectralField& g);

/// Inhomogeneous Sobolev norm with weight (1 + |k|^2)^s.
double sobolev_norm(const SpectralField& g, double s);

/// Homogeneous Sobolev norm with weight |k|^(2s); the k = 0 term is excluded.
/// For s < 0 the field must be zero-mean (throws std::invalid_argument if the
/// mean mode is nonzero).
double homogeneous_sobolev_norm(const SpectralField& g, double s);

/// Lp norm by collocation-grid quadrature:
/// ((2*pi*L/n)^3 * sum_x |u(x)|^p)^(1/p), |u(x)| the Euclidean speed.
/// Rejects p < 1.
double lp_norm(const PhysicalField& f, double p);

/// Pointwise maximum speed max_x |u(x)|.
double max_speed(const PhysicalField& f);

}  // namespace dampflow
