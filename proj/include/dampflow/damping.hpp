#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "dampflow/field.hpp"

namespace dampflow {

/// Parameters of the damping term a*(e^{b|u|^r} - 1)u.
struct DampingParams {
    double a = 1.0;  ///< amplitude, >= 0 (a below kAmplitudeDisabled disables the term)
    double b = 1.0;  ///< exponent rate, > 0
    double r = 4.0;  ///< power inside the exponential, >= 1
};

/// Amplitudes at or below this threshold take the exact-zero path, giving the
/// undamped (pure Navier-Stokes) limit for tests against heat-kernel decay.
inline constexpr double kAmplitudeDisabled = 1e-30;

/// Largest exponent argument b*v^r we allow before clipping; e^700 is still
/// finite in double precision.
inline constexpr double kMaxExpArgument = 700.0;

void validate(const DampingParams& p);

/// Pointwise speed cap applied before the exponential is evaluated.
struct ClipPolicy {
    enum class Mode { error, saturate };
    double v_max = 0.0;
    Mode mode = Mode::saturate;

    /// Saturating policy with b*v_max^r = kMaxExpArgument.
    static ClipPolicy saturate_for(const DampingParams& p);
};

/// Scalar damping factor a*(e^{b*min(s, v_max)^r} - 1), evaluated with expm1.
/// Sets *saturated when the cap was hit; throws OverflowRisk (with point
/// index) in mode `error`.
double damping_scale(double speed, const DampingParams& p, const ClipPolicy& clip,
                     bool* saturated = nullptr, std::size_t point_index = 0);

/// a*(e^{b|v|^r} - 1) * v for one velocity sample.
std::array<double, 3> damping_pointwise(const std::array<double, 3>& v, const DampingParams& p,
                                        const ClipPolicy& clip,
                                        std::size_t* saturated_count = nullptr);

/// Damping term of the Galerkin system: evaluate a*(e^{b|u|^r}-1)u at every
/// collocation point of inverse_transform(u), transform back, truncate to the
/// grid ball and Leray-project. No dealiasing is applied (the nonlinearity is
/// non-polynomial); aliasing is quantified against the oversampled oracle
/// instead.
SpectralField damping_term(const SpectralField& u, const DampingParams& p, const ClipPolicy& clip,
                           std::size_t* saturated_count = nullptr);

/// Grid quadrature of (e^{b|u|^r} - 1)|u|^2 (no amplitude factor); always
/// >= 0 and consistent with <damping_term(u), u> / a under discrete Parseval.
double damping_dissipation(const SpectralField& u, const DampingParams& p, const ClipPolicy& clip,
                           std::size_t* saturated_count = nullptr);

/// Grid quadrature of (e^{b|u|^r} - 1)|u| over the whole box (unclipped).
double damping_flux_l1(const PhysicalField& f, const DampingParams& p);

/// Damping flux split across the speed level |u| = 1: `below` integrates over
/// {|u| <= 1}, `above` over {|u| > 1}. below + above equals the total flux.
struct FluxSplit {
    double below = 0.0;
    double above = 0.0;
};
FluxSplit k1k2_split(const PhysicalField& f, const DampingParams& p);

/// Monotonicity defect of the power map x -> |x|^beta x:
///   <|x|^b x - |y|^b y, x - y> - (1/2)(|x|^b + |y|^b)|x - y|^2.
/// Nonnegative for every pair; evaluated directly (no algebraic shortcut) so
/// sweeps exercise the inequality as the energy argument uses it.
double power_monotonicity_gap(std::span<const double> x, std::span<const double> y, double beta);

/// Same defect for the exponential map x -> (e^{b|x|^r} - 1)x.
double exp_monotonicity_gap(std::span<const double> x, std::span<const double> y,
                            const DampingParams& p);

}  // namespace dampflow
