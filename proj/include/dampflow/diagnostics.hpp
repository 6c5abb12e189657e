#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dampflow/damping.hpp"
#include "dampflow/integrator.hpp"
#include "dampflow/ledger.hpp"

namespace dampflow {

/// Result of checking a ledger against the discrete energy inequality:
/// residual >= -tol*E(0) in every row, energy nonincreasing row to row
/// (slack 1e-10*E(0)), times strictly increasing, cumulative dissipation
/// nonnegative and nondecreasing.
struct VerifyResult {
    bool pass = true;
    std::size_t worst_row = 0;       ///< row with the most negative residual
    double worst_residual = 0.0;
    double max_abs_residual = 0.0;
    std::string failure;             ///< empty when pass; names the first bad row otherwise
};

inline constexpr double kMonotoneSlack = 1e-10;

VerifyResult verify_energy(const EnergyLedger& ledger, double tol);

/// Paired-trajectory separation against the exponential stability bound
/// ||w(0)||^2 * e^{4t/(ab)}.
struct StabilityReport {
    std::vector<double> times;
    std::vector<double> w_norm_sq;  ///< ||u(t) - v(t)||^2
    std::vector<double> bound;
    std::vector<double> margin;     ///< bound - w_norm_sq
    double w0_norm_sq = 0.0;
    double min_margin = 0.0;
};

/// Runs u0 and u0 + delta with identical discretization and reports the
/// squared separation against the bound at every ledger time.
StabilityReport stability_experiment(const SpectralField& u0, const SpectralField& delta,
                                     const SimParams& p);

struct DecayRow {
    double t = 0.0;
    double l2 = 0.0;
    double h_neg2 = 0.0;          ///< H^{-2} norm
    double w1_l2 = 0.0;           ///< modes |k| < kappa
    double w2_l2 = 0.0;           ///< modes |k| >= kappa
    double lp_10_3 = 0.0;         ///< L^{10/3} norm
    double damping_flux_l1 = 0.0;
    double k1 = 0.0;              ///< flux over {|u| <= 1}
    double k2 = 0.0;              ///< flux over {|u| > 1}
};

struct DecayReport {
    double kappa = 1.0;
    std::vector<DecayRow> rows;
    bool split_consistent = true;   ///< l2^2 == w1^2 + w2^2 to 1e-10 relative
    bool low_mode_bounded = true;   ///< w1 <= (1+kappa^2) * h_neg2 per row
    bool flux_split_additive = true;
    bool h_neg2_monotone = true;    ///< reported; asserted only by decay studies
    std::string failure;
};

/// Post-process a snapshot sequence (shared grid) into the decay observables.
/// Throws std::invalid_argument on grid mismatch.
DecayReport decay_probe(const std::vector<std::pair<double, SpectralField>>& snapshots,
                        double kappa, const DampingParams& p);

}  // namespace dampflow
