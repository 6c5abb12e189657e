#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "dampflow/damping.hpp"
#include "dampflow/field.hpp"
#include "dampflow/integrator.hpp"

namespace dampflow::oracle {

/// Slow, allocation-simple reference implementations used to validate the
/// spectral kernels on tiny instances. Everything here works on explicit mode
/// lists and direct trigonometric sums; no FFT, no shared code with the
/// production path beyond the scalar damping factor.

struct DenseMode {
    std::array<int, 3> index{};                     ///< integer lattice site; k = index / L
    std::array<std::complex<double>, 3> amplitude{};
};

struct DenseModeSet {
    double box_scale = 1.0;
    std::vector<DenseMode> modes;
};

inline constexpr std::size_t kMaxModes = 500;

/// Collect the nonzero coefficients of a spectral field (magnitude > tol in
/// any component). Throws std::length_error past kMaxModes.
DenseModeSet from_spectral(const SpectralField& g, double tol = 0.0);

SpectralField to_spectral(const DenseModeSet& m, const Grid& grid);

/// Largest violation of Hermitian closure (missing or non-conjugate partner).
double hermitian_closure_defect(const DenseModeSet& m);

/// Exact Galerkin transport term by direct double-sum convolution over mode
/// pairs, truncated to |k| <= radius and Leray-projected.
DenseModeSet dense_transport(const DenseModeSet& m, double radius);

/// Damping term evaluated by collocation on an n_grid^3 lattice via direct
/// trigonometric sums, projected onto ball modes by direct DFT. Matches the
/// production damping_term spatial semantics (same grid, same aliasing).
DenseModeSet collocation_damping(const DenseModeSet& m, const DampingParams& p,
                                 const ClipPolicy& clip, int n_grid, double radius);

/// Same evaluation on an (oversample*n_base)^3 lattice; the difference from
/// collocation_damping at n_base is the aliasing error of the production term.
DenseModeSet oversampled_damping(const DenseModeSet& m, const DampingParams& p,
                                 const ClipPolicy& clip, int n_base, int oversample, double radius);

/// Integrate the truncated Galerkin system with a fully explicit classical
/// fourth-order scheme at step dt_ref, using dense_transport and
/// collocation_damping on n_grid for the nonlinear terms. Ground truth for
/// cross-checking run() endpoints on tiny instances.
DenseModeSet explicit_reference_run(const DenseModeSet& m0, const SimParams& p, double dt_ref,
                                    int n_grid, double radius);

/// max_k |a(k) - b(k)| over the union of mode sets, divided by max_k |a(k)|.
double relative_difference(const DenseModeSet& a, const DenseModeSet& b);

}  // namespace dampflow::oracle
