#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dampflow/damping.hpp"
#include "dampflow/field.hpp"
#include "dampflow/ledger.hpp"

namespace dampflow {

/// Scalar parameters of a run. The viscous term is integrated exactly by the
/// heat multiplier e^{-nu|k|^2 dt}, so dt is constrained only by the explicit
/// nonlinear terms; step() sub-steps adaptively whenever
/// dt * a*(e^{b*v_obs^r}-1) exceeds kDampingCourant for the observed maximum
/// speed v_obs.
struct SimParams {
    double nu = 1.0;
    DampingParams damping{};
    ClipPolicy clip = ClipPolicy::saturate_for(DampingParams{});
    double dt = 1e-3;
    double t_end = 1.0;
    int output_every = 1;    ///< steps between ledger rows
    int scheme_order = 2;    ///< explicit stage order, 2 or 4
    int snapshot_every = 0;  ///< steps between snapshots; 0 disables
};

inline constexpr double kDampingCourant = 0.5;

void validate(const SimParams& p);

struct SolverState {
    double time = 0.0;
    SpectralField field;
    long long saturation_count = 0;
};

/// Fused right-hand-side evaluation: the nonlinear term plus the instantaneous
/// budget quantities of the input state, all from one set of transforms.
struct RhsEval {
    SpectralField rhs;         ///< -transport_term(u) - damping_term(u)
    double grad_sq = 0.0;      ///< ||grad u||^2 (spectral)
    double dissipation = 0.0;  ///< damping_dissipation(u)
    double max_speed = 0.0;    ///< max_x |u(x)|
    std::size_t saturated = 0;
};

RhsEval eval_rhs(const SpectralField& u, const SimParams& p);

/// Nonlinear right-hand side -transport_term(u) - damping_term(u).
SpectralField rhs_nonlinear(const SpectralField& u, const SimParams& p);

/// Advance one nominal step dt with the integrating-factor Runge-Kutta scheme
/// of order p.scheme_order, sub-stepping internally when the damping guard
/// requires it. Throws NonFiniteState if a coefficient leaves the floating
/// range.
SolverState step(const SolverState& s, const SimParams& p);

/// Streaming hooks for run(); rows and snapshots are delivered as soon as
/// they are produced so callers can flush partial output on abort.
class RunObserver {
  public:
    virtual ~RunObserver() = default;
    virtual void on_row(const LedgerRow& row) { (void)row; }
    virtual void on_snapshot(double time, const SpectralField& field) {
        (void)time;
        (void)field;
    }
};

struct RunResult {
    SolverState final_state;
    EnergyLedger ledger;
    std::vector<std::pair<double, SpectralField>> snapshots;
};

/// Integrate u0 to t_end, emitting a ledger row every output_every steps
/// (including t = 0) and a snapshot every snapshot_every steps. u0 must be
/// divergence-free, zero-mean and band-limited to the grid ball.
RunResult run(const SpectralField& u0, const SimParams& p, RunObserver* observer = nullptr);

}  // namespace dampflow
