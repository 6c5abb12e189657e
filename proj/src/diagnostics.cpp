#include "dampflow/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "dampflow/errors.hpp"
#include "dampflow/norms.hpp"
#include "dampflow/operators.hpp"
#include "dampflow/transform.hpp"

namespace dampflow {

VerifyResult verify_energy(const EnergyLedger& ledger, double tol) {
    if (ledger.empty()) throw EmptyLedger();
    const auto& rows = ledger.rows();
    const double energy0 = rows.front().energy;
    VerifyResult result;
    result.worst_residual = rows.front().residual;

    auto fail = [&](std::size_t row, const std::string& what) {
        if (result.pass) {
            result.pass = false;
            result.failure = "row " + std::to_string(row) + ": " + what;
        }
    };

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const LedgerRow& row = rows[i];
        result.max_abs_residual = std::max(result.max_abs_residual, std::abs(row.residual));
        if (row.residual < result.worst_residual) {
            result.worst_residual = row.residual;
            result.worst_row = i;
        }
        if (row.residual < -tol * energy0) fail(i, "energy inequality violated");
        if (row.visc_cum < 0.0 || row.damp_cum < 0.0) fail(i, "negative cumulative dissipation");
        if (i > 0) {
            const LedgerRow& prev = rows[i - 1];
            if (!(row.t > prev.t)) fail(i, "times not strictly increasing");
            if (row.energy > prev.energy + kMonotoneSlack * energy0) fail(i, "energy increased");
            if (row.visc_cum < prev.visc_cum || row.damp_cum < prev.damp_cum) {
                fail(i, "cumulative dissipation decreased");
            }
        }
    }
    return result;
}

StabilityReport stability_experiment(const SpectralField& u0, const SpectralField& delta,
                                     const SimParams& p) {
    validate(p);
    require_same_grid(u0.grid(), delta.grid());
    if (p.damping.a <= kAmplitudeDisabled) {
        throw std::invalid_argument("stability bound requires an active damping term (a > 0)");
    }

    SpectralField v0 = u0;
    v0 += delta;
    SolverState a{0.0, u0, 0};
    SolverState b{0.0, v0, 0};

    StabilityReport report;
    const double w0 = l2_norm(delta);
    report.w0_norm_sq = w0 * w0;
    const double rate = 4.0 / (p.damping.a * p.damping.b);

    auto record = [&](const SolverState& sa, const SolverState& sb) {
        const double w = l2_norm(sa.field - sb.field);
        const double bound = report.w0_norm_sq * std::exp(rate * sa.time);
        report.times.push_back(sa.time);
        report.w_norm_sq.push_back(w * w);
        report.bound.push_back(bound);
        report.margin.push_back(bound - w * w);
    };

    record(a, b);
    long long step_index = 0;
    const double eps = 1e-12 * std::max(p.t_end, 1.0);
    while (a.time < p.t_end - eps) {
        SimParams local = p;
        local.dt = std::min(p.dt, p.t_end - a.time);
        a = step(a, local);
        b = step(b, local);
        ++step_index;
        if (step_index % p.output_every == 0 || a.time >= p.t_end - eps) record(a, b);
    }

    report.min_margin = report.margin.front();
    for (double m : report.margin) report.min_margin = std::min(report.min_margin, m);
    return report;
}

DecayReport decay_probe(const std::vector<std::pair<double, SpectralField>>& snapshots,
                        double kappa, const DampingParams& p) {
    if (snapshots.empty()) throw std::invalid_argument("decay_probe needs at least one snapshot");
    if (!(kappa > 0.0)) throw std::invalid_argument("split threshold kappa must be > 0");
    validate(p);

    DecayReport report;
    report.kappa = kappa;
    const Grid& grid = snapshots.front().second.grid();

    auto fail = [&](std::size_t row, const std::string& what) {
        if (report.failure.empty()) report.failure = "snapshot " + std::to_string(row) + ": " + what;
    };

    for (std::size_t s = 0; s < snapshots.size(); ++s) {
        const auto& [time, field] = snapshots[s];
        require_same_grid(grid, field.grid());

        DecayRow row;
        row.t = time;
        row.l2 = l2_norm(field);
        row.h_neg2 = sobolev_norm(field, -2.0);
        const auto [low, high] = frequency_split(field, kappa);
        row.w1_l2 = l2_norm(low);
        row.w2_l2 = l2_norm(high);
        const PhysicalField f = inverse_transform(field);
        row.lp_10_3 = lp_norm(f, 10.0 / 3.0);
        row.damping_flux_l1 = damping_flux_l1(f, p);
        const FluxSplit split = k1k2_split(f, p);
        row.k1 = split.below;
        row.k2 = split.above;

        const double total_sq = row.l2 * row.l2;
        const double split_sq = row.w1_l2 * row.w1_l2 + row.w2_l2 * row.w2_l2;
        if (std::abs(total_sq - split_sq) > 1e-10 * std::max(total_sq, 1e-300)) {
            report.split_consistent = false;
            fail(s, "frequency split does not conserve energy");
        }
        if (row.w1_l2 > (1.0 + kappa * kappa) * row.h_neg2 * (1.0 + 1e-12)) {
            report.low_mode_bounded = false;
            fail(s, "low-mode norm exceeds the H^-2 bound");
        }
        if (std::abs(row.k1 + row.k2 - row.damping_flux_l1) >
            1e-12 * (1.0 + row.damping_flux_l1)) {
            report.flux_split_additive = false;
            fail(s, "flux split not additive");
        }
        if (s > 0 && row.h_neg2 > report.rows[s - 1].h_neg2 +
                         1e-10 * report.rows.front().h_neg2) {
            report.h_neg2_monotone = false;
            fail(s, "H^-2 norm increased");
        }
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace dampflow
