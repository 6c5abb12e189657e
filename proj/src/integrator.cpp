#include "dampflow/integrator.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dampflow/errors.hpp"
#include "dampflow/norms.hpp"
#include "dampflow/operators.hpp"
#include "dampflow/transform.hpp"

namespace dampflow {

void validate(const SimParams& p) {
    if (!(p.nu > 0.0)) throw std::invalid_argument("viscosity nu must be > 0");
    validate(p.damping);
    if (!(p.clip.v_max > 0.0)) throw std::invalid_argument("clip v_max must be > 0");
    if (!(p.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    if (!(p.t_end >= 0.0)) throw std::invalid_argument("t_end must be >= 0");
    if (p.output_every < 1) throw std::invalid_argument("output_every must be >= 1");
    if (p.scheme_order != 2 && p.scheme_order != 4) {
        throw std::invalid_argument("scheme_order must be 2 or 4");
    }
    if (p.snapshot_every < 0) throw std::invalid_argument("snapshot_every must be >= 0");
}

namespace {

// |k|^2 at every lattice point, flat row-major.
std::vector<double> lattice_k2(const Grid& grid) {
    const int n = grid.n_points();
    std::vector<double> k2(grid.point_count());
    std::size_t p = 0;
    for (int i = 0; i < n; ++i) {
        const double kx = grid.axis_wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double ky = grid.axis_wavenumber(j);
            for (int k = 0; k < n; ++k, ++p) {
                const double kz = grid.axis_wavenumber(k);
                k2[p] = kx * kx + ky * ky + kz * kz;
            }
        }
    }
    return k2;
}

std::vector<double> heat_multiplier(const std::vector<double>& k2, double nu, double tau) {
    std::vector<double> mult(k2.size());
    for (std::size_t p = 0; p < k2.size(); ++p) mult[p] = std::exp(-nu * k2[p] * tau);
    return mult;
}

void apply_multiplier(SpectralField& g, const std::vector<double>& mult) {
    for (int c = 0; c < 3; ++c) {
        auto comp = g.component(c);
        for (std::size_t p = 0; p < mult.size(); ++p) comp[p] *= mult[p];
    }
}

// out = mult .* (base + scale * incr)
SpectralField combine(const SpectralField& base, double scale, const SpectralField& incr,
                      const std::vector<double>& mult) {
    SpectralField out(base.grid());
    for (int c = 0; c < 3; ++c) {
        auto o = out.component(c);
        auto b = base.component(c);
        auto i = incr.component(c);
        for (std::size_t p = 0; p < mult.size(); ++p) o[p] = mult[p] * (b[p] + scale * i[p]);
    }
    return out;
}

struct BudgetIncrement {
    double grad_sq = 0.0;
    double dissipation = 0.0;
};

// One explicit sub-step of size h with the integrating-factor scheme.
// `first` must hold eval_rhs at s.field; stage budget quantities are combined
// with the quadrature rule matching the scheme order (midpoint for order 2,
// Simpson for order 4).
SolverState substep(const SolverState& s, const SimParams& p, double h, const RhsEval& first,
                    BudgetIncrement* budget) {
    const std::vector<double> k2 = lattice_k2(s.field.grid());
    const std::vector<double> full = heat_multiplier(k2, p.nu, h);
    const std::vector<double> half = heat_multiplier(k2, p.nu, 0.5 * h);

    SolverState out;
    out.time = s.time + h;
    out.saturation_count = s.saturation_count + static_cast<long long>(first.saturated);

    if (p.scheme_order == 2) {
        const SpectralField s2 = combine(s.field, 0.5 * h, first.rhs, half);
        RhsEval mid = eval_rhs(s2, p);
        out.saturation_count += static_cast<long long>(mid.saturated);
        out.field = combine(s.field, 0.0, first.rhs, full);
        apply_multiplier(mid.rhs, half);
        out.field.add_scaled(h, mid.rhs);
        if (budget != nullptr) {
            budget->grad_sq += h * mid.grad_sq;
            budget->dissipation += h * mid.dissipation;
        }
        return out;
    }

    const SpectralField s2 = combine(s.field, 0.5 * h, first.rhs, half);
    const RhsEval e2 = eval_rhs(s2, p);
    SpectralField s3 = s.field;
    apply_multiplier(s3, half);
    s3.add_scaled(0.5 * h, e2.rhs);
    const RhsEval e3 = eval_rhs(s3, p);
    const SpectralField s4 = combine(s.field, 0.0, first.rhs, full);
    SpectralField k3 = e3.rhs;
    apply_multiplier(k3, half);
    SpectralField stage4_state = s4;
    stage4_state.add_scaled(h, k3);
    const RhsEval e4 = eval_rhs(stage4_state, p);
    out.saturation_count += static_cast<long long>(e2.saturated + e3.saturated + e4.saturated);

    SpectralField acc = first.rhs;
    apply_multiplier(acc, full);
    SpectralField k2s = e2.rhs;
    apply_multiplier(k2s, half);
    acc.add_scaled(2.0, k2s);
    SpectralField k3s = e3.rhs;
    apply_multiplier(k3s, half);
    acc.add_scaled(2.0, k3s);
    acc.add_scaled(1.0, e4.rhs);

    out.field = s4;
    out.field.add_scaled(h / 6.0, acc);
    if (budget != nullptr) {
        budget->grad_sq += (h / 6.0) * (first.grad_sq + 2.0 * e2.grad_sq + 2.0 * e3.grad_sq + e4.grad_sq);
        budget->dissipation +=
            (h / 6.0) * (first.dissipation + 2.0 * e2.dissipation + 2.0 * e3.dissipation + e4.dissipation);
    }
    return out;
}

// Target fraction of kDampingCourant the adaptive sub-step aims for, leaving
// headroom so the guard is not violated mid-step as the speed evolves.
constexpr double kGuardFraction = 0.8;

SolverState step_with_budget(const SolverState& s, const SimParams& p, BudgetIncrement* budget) {
    SolverState cur = s;
    double remaining = p.dt;
    const double tiny = 1e-15 * p.dt;
    while (remaining > tiny) {
        const RhsEval first = eval_rhs(cur.field, p);
        const double capped = std::min(first.max_speed, p.clip.v_max);
        const double rate = p.damping.a <= kAmplitudeDisabled
                                ? 0.0
                                : p.damping.a * std::expm1(p.damping.b * std::pow(capped, p.damping.r));
        double h = remaining;
        if (rate > 0.0) h = std::min(h, kGuardFraction * kDampingCourant / rate);
        const double parts = std::ceil(remaining / h - 1e-12);
        h = remaining / std::max(parts, 1.0);
        cur = substep(cur, p, h, first, budget);
        remaining -= h;
    }
    if (!all_finite(cur.field)) throw NonFiniteState(cur.time);
    return cur;
}

}  // namespace

RhsEval eval_rhs(const SpectralField& u, const SimParams& p) {
    const Grid& grid = u.grid();
    const PhysicalField f = inverse_transform(u);
    const std::size_t m = grid.point_count();
    const bool damped = p.damping.a > kAmplitudeDisabled;

    PhysicalField diag(grid);
    PhysicalField off(grid);
    PhysicalField damp(grid);
    RhsEval eval{SpectralField(grid)};
    double worst_speed_sq = 0.0;
    double diss_sum = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
        const auto v = f.vector_at(q);
        diag.component(0)[q] = v[0] * v[0];
        diag.component(1)[q] = v[1] * v[1];
        diag.component(2)[q] = v[2] * v[2];
        off.component(0)[q] = v[1] * v[2];
        off.component(1)[q] = v[0] * v[2];
        off.component(2)[q] = v[0] * v[1];
        const double mag2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        worst_speed_sq = std::max(worst_speed_sq, mag2);
        const double speed = std::sqrt(mag2);
        double capped = speed;
        if (speed > p.clip.v_max) {
            if (damped && p.clip.mode == ClipPolicy::Mode::error) {
                throw OverflowRisk(q, speed, p.clip.v_max);
            }
            capped = p.clip.v_max;
            if (damped) ++eval.saturated;
        }
        const double factor = std::expm1(p.damping.b * std::pow(capped, p.damping.r));
        diss_sum += factor * mag2;
        if (damped) {
            const double scale = p.damping.a * factor;
            damp.component(0)[q] = scale * v[0];
            damp.component(1)[q] = scale * v[1];
            damp.component(2)[q] = scale * v[2];
        }
    }
    eval.max_speed = std::sqrt(worst_speed_sq);
    eval.dissipation = grid.cell_volume() * diss_sum;

    const SpectralField diag_hat = forward_transform(diag);
    const SpectralField off_hat = forward_transform(off);
    SpectralField damp_hat;
    if (damped) damp_hat = forward_transform(damp);

    SpectralField sum(grid);
    const int n = grid.n_points();
    const std::complex<double> iunit(0.0, 1.0);
    double grad_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double kx = grid.axis_wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const double ky = grid.axis_wavenumber(j);
            for (int k = 0; k < n; ++k) {
                const double kz = grid.axis_wavenumber(k);
                const double k2 = kx * kx + ky * ky + kz * kz;
                double mode_sq = 0.0;
                for (int c = 0; c < 3; ++c) mode_sq += std::norm(u.at(c, i, j, k));
                grad_sum += k2 * mode_sq;
                const auto t00 = diag_hat.at(0, i, j, k);
                const auto t11 = diag_hat.at(1, i, j, k);
                const auto t22 = diag_hat.at(2, i, j, k);
                const auto t12 = off_hat.at(0, i, j, k);
                const auto t02 = off_hat.at(1, i, j, k);
                const auto t01 = off_hat.at(2, i, j, k);
                sum.at(0, i, j, k) = iunit * (kx * t00 + ky * t01 + kz * t02);
                sum.at(1, i, j, k) = iunit * (kx * t01 + ky * t11 + kz * t12);
                sum.at(2, i, j, k) = iunit * (kx * t02 + ky * t12 + kz * t22);
            }
        }
    }
    eval.grad_sq = grid.domain_volume() * grad_sum;
    if (damped) sum += damp_hat;
    eval.rhs = galerkin_project(sum);
    eval.rhs *= -1.0;
    return eval;
}

SpectralField rhs_nonlinear(const SpectralField& u, const SimParams& p) {
    return eval_rhs(u, p).rhs;
}

SolverState step(const SolverState& s, const SimParams& p) {
    return step_with_budget(s, p, nullptr);
}

RunResult run(const SpectralField& u0, const SimParams& p, RunObserver* observer) {
    validate(p);
    const double amp = linf_coefficient(u0);
    if (max_divergence(u0) > 1e-10 * (1.0 + amp)) {
        throw std::invalid_argument("initial state must be divergence-free");
    }
    if (max_coefficient_outside_ball(u0, u0.grid().trunc_radius()) > 1e-12 * (1.0 + amp)) {
        throw std::invalid_argument("initial state must be band-limited to the grid ball");
    }
    double mean_sq = 0.0;
    for (int c = 0; c < 3; ++c) mean_sq += std::norm(u0.at(c, 0, 0, 0));
    if (std::sqrt(mean_sq) > 1e-12 * (1.0 + amp)) {
        throw std::invalid_argument("initial state must be zero-mean");
    }

    RunResult result;
    result.final_state = SolverState{0.0, u0, 0};
    const double e0 = l2_norm(u0);
    const double energy0 = e0 * e0;
    double visc_cum = 0.0;
    double damp_cum = 0.0;

    auto emit_row = [&](const SolverState& s) {
        const double e = l2_norm(s.field);
        LedgerRow row;
        row.t = s.time;
        row.energy = e * e;
        row.visc_cum = visc_cum;
        row.damp_cum = damp_cum;
        row.residual = energy0 - row.energy - visc_cum - damp_cum;
        row.saturation_count = s.saturation_count;
        result.ledger.append(row);
        if (observer != nullptr) observer->on_row(row);
    };
    auto emit_snapshot = [&](const SolverState& s) {
        result.snapshots.emplace_back(s.time, s.field);
        if (observer != nullptr) observer->on_snapshot(s.time, s.field);
    };

    emit_row(result.final_state);
    if (p.snapshot_every > 0) emit_snapshot(result.final_state);

    const double total = p.t_end;
    long long step_index = 0;
    while (result.final_state.time < total - 1e-12 * std::max(total, 1.0)) {
        SimParams local = p;
        local.dt = std::min(p.dt, total - result.final_state.time);
        BudgetIncrement inc;
        result.final_state = step_with_budget(result.final_state, local, &inc);
        visc_cum += 2.0 * p.nu * inc.grad_sq;
        damp_cum += 2.0 * p.damping.a * inc.dissipation;
        ++step_index;
        const bool last = result.final_state.time >= total - 1e-12 * std::max(total, 1.0);
        if (step_index % p.output_every == 0 || last) emit_row(result.final_state);
        if (p.snapshot_every > 0 && (step_index % p.snapshot_every == 0 || last)) {
            emit_snapshot(result.final_state);
        }
    }
    return result;
}

}  // namespace dampflow
