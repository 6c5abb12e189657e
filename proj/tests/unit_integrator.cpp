#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "dampflow/diagnostics.hpp"
#include "dampflow/errors.hpp"
#include "dampflow/initial_conditions.hpp"
#include "dampflow/integrator.hpp"
#include "dampflow/norms.hpp"
#include "dampflow/operators.hpp"
#include "dampflow/transform.hpp"
#include "dampflow/transport.hpp"
#include "test_helpers.hpp"

using namespace dampflow;
using dampflow::testing::max_coefficient_difference;
using dampflow::testing::random_hermitian;

namespace {

SimParams tame_params() {
    SimParams p;
    p.nu = 0.1;
    p.damping = DampingParams{1.0, 1.0, 4.0};
    p.clip = ClipPolicy::saturate_for(p.damping);
    p.dt = 1e-2;
    p.t_end = 0.2;
    p.output_every = 5;
    return p;
}

}  // namespace

TEST_CASE("sim parameter validation") {
    SimParams p = tame_params();
    CHECK_NOTHROW(validate(p));
    p.dt = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = tame_params();
    p.scheme_order = 3;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = tame_params();
    p.nu = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = tame_params();
    p.output_every = 0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("taylor-green data is divergence-free with the analytic energy") {
    for (double box : {1.0, 4.0}) {
        const Grid g = make_grid(32, box, 32.0 / (3.0 * box));
        const double amp = 1.5;
        const SpectralField u = init_taylor_green(g, amp);
        const double expected = std::pow(2.0 * kPi * box, 3.0) * amp * amp / 4.0;
        CHECK(l2_norm(u) * l2_norm(u) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(max_divergence(u) < 1e-13);
        CHECK(max_hermitian_asymmetry(u) == 0.0);
        CHECK(std::abs(u.at(0, 0, 0, 0)) == 0.0);
        CHECK(max_coefficient_outside_ball(u, 2.0 / box) == 0.0);
    }
}

TEST_CASE("taylor-green collocation values match the trigonometric formula") {
    const Grid g = make_grid(8, 1.0, 8.0 / 3.0);
    const PhysicalField f = inverse_transform(init_taylor_green(g, 2.0));
    const int n = g.n_points();
    for (int i : {0, 1, 3}) {
        for (int j : {0, 2}) {
            for (int k : {1, 5}) {
                const double x = 2.0 * kPi * i / n;
                const double y = 2.0 * kPi * j / n;
                const double z = 2.0 * kPi * k / n;
                CHECK(f.at(0, i, j, k) ==
                      doctest::Approx(2.0 * std::sin(x) * std::cos(y) * std::cos(z)).epsilon(1e-12));
                CHECK(f.at(1, i, j, k) ==
                      doctest::Approx(-2.0 * std::cos(x) * std::sin(y) * std::cos(z)).epsilon(1e-12));
                CHECK(f.at(2, i, j, k) == doctest::Approx(0.0));
            }
        }
    }
}

TEST_CASE("random initial data is reproducible, normalized and solenoidal") {
    const Grid g = make_grid(16, 1.0, 16.0 / 3.0);
    const SpectralField a = init_random_divfree(g, 7, 2.5, 1.25);
    const SpectralField b = init_random_divfree(g, 7, 2.5, 1.25);
    const SpectralField c = init_random_divfree(g, 8, 2.5, 1.25);
    CHECK(max_coefficient_difference(a, b) == 0.0);
    CHECK(max_coefficient_difference(a, c) > 1e-3);
    CHECK(l2_norm(a) == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(max_divergence(a) < 1e-12);
    CHECK(max_coefficient_outside_ball(a, 2.5) == 0.0);
    CHECK(max_hermitian_asymmetry(a) < 1e-13);
}

TEST_CASE("rhs matches the sum of its named terms") {
    const Grid g = make_grid(16, 1.0, 16.0 / 3.0);
    const SimParams p = tame_params();
    SpectralField u = init_random_divfree(g, 3, 3.0, 1.0);

    const RhsEval eval = eval_rhs(u, p);
    SpectralField expected = transport_term(u);
    expected += damping_term(u, p.damping, p.clip);
    expected *= -1.0;
    CHECK(max_coefficient_difference(eval.rhs, expected) <
          1e-12 * (1.0 + linf_coefficient(expected)));

    const double grad = homogeneous_sobolev_norm(u, 1.0);
    CHECK(eval.grad_sq == doctest::Approx(grad * grad).epsilon(1e-12));
    CHECK(eval.dissipation ==
          doctest::Approx(damping_dissipation(u, p.damping, p.clip)).epsilon(1e-12));
    CHECK(eval.max_speed == doctest::Approx(max_speed(inverse_transform(u))).epsilon(1e-12));

    CHECK(linf_coefficient(rhs_nonlinear(SpectralField(g), p)) == 0.0);
}

TEST_CASE("shear-mode rhs is pure damping") {
    const Grid g = make_grid(8, 1.0, 8.0 / 3.0);
    SpectralField u(g);
    u.at(1, 1, 0, 0) = 0.5;
    u.at(1, 7, 0, 0) = 0.5;
    const SimParams p = tame_params();
    SpectralField sum = rhs_nonlinear(u, p);
    sum += damping_term(u, p.damping, p.clip);
    CHECK(linf_coefficient(sum) < 1e-13);
}

TEST_CASE("undamped shear mode reproduces the heat kernel exactly") {
    const Grid g = make_grid(8, 1.0, 8.0 / 3.0);
    SpectralField u(g);
    u.at(1, 1, 0, 0) = 0.5;
    u.at(1, 7, 0, 0) = 0.5;

    SimParams p;
    p.nu = 0.7;
    p.damping.a = 0.0;
    p.clip = ClipPolicy::saturate_for(DampingParams{1.0, 1.0, 4.0});
    p.dt = 1e-2;
    p.t_end = 1.0;
    for (int order : {2, 4}) {
        p.scheme_order = order;
        const RunResult result = run(u, p);
        const double expected = 0.5 * std::exp(-p.nu * 1.0 * p.t_end);
        CHECK(std::abs(result.final_state.field.at(1, 1, 0, 0).real() - expected) < 1e-13);
        CHECK(std::abs(result.final_state.field.at(1, 1, 0, 0).imag()) < 1e-15);
        CHECK(result.final_state.saturation_count == 0);
        CHECK(result.ledger.rows().back().damp_cum == 0.0);
    }
}

TEST_CASE("integrating-factor schemes converge at their nominal order") {
    const Grid g = make_grid(8, 1.0, 8.0 / 3.0);
    const SpectralField u0 = init_taylor_green(g, 1.0);
    SimParams p = tame_params();

    SimParams fine = p;
    fine.scheme_order = 4;
    fine.dt = 5e-4;
    const SpectralField reference = run(u0, fine).final_state.field;

    auto endpoint_error = [&](int order, double dt) {
        SimParams q = p;
        q.scheme_order = order;
        q.dt = dt;
        const SpectralField endpoint = run(u0, q).final_state.field;
        return l2_norm(endpoint - reference);
    };

    const double e2 = endpoint_error(2, 2e-2);
    const double e2h = endpoint_error(2, 1e-2);
    const double ratio2 = e2 / e2h;
    CHECK(ratio2 > 3.2);
    CHECK(ratio2 < 4.8);

    const double e4 = endpoint_error(4, 2e-2);
    const double e4h = endpoint_error(4, 1e-2);
    const double ratio4 = e4 / e4h;
    CHECK(ratio4 > 10.0);
    CHECK(ratio4 < 24.0);
}

TEST_CASE("runs emit ledger rows on schedule with a consistent budget") {
    const Grid g = make_grid(8, 1.0, 8.0 / 3.0);
    const SpectralField u0 = init_taylor_green(g, 1.0);
    SimParams p = tame_params();
    p.t_end = 0.1;
    p.output_every = 2;

    struct Collector : RunObserver {
        std::vector<LedgerRow> rows;
        void on_row(const LedgerRow& row) override { rows.push_back(row); }
    } collector;

    const RunResult result = run(u0, p, &collector);
    const auto& rows = result.ledger.rows();
    REQUIRE(rows.size() == 6);  // t = 0 plus every 2nd of 10 steps
    CHECK(rows.front().t == 0.0);
    CHECK(rows.back().t == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(collector.rows.size() == rows.size());

    const double e0 = rows.front().energy;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].energy < rows[i - 1].energy);
        CHECK(rows[i].visc_cum >= rows[i - 1].visc_cum);
        CHECK(rows[i].damp_cum >= rows[i - 1].damp_cum);
        CHECK(std::abs(rows[i].residual) < 1e-5 * e0);  // order-2 budget at dt = 1e-2
        CHECK(rows[i].residual ==
              doctest::Approx(e0 - rows[i].energy - rows[i].visc_cum - rows[i].damp_cum)
                  .epsilon(1e-12));
    }
    const VerifyResult verdict = verify_energy(result.ledger, 1e-4);
    CHECK(verdict.pass);
}

TEST_CASE("ledger residual shrinks under dt refinement") {
    const Grid g = make_grid(8, 1.0, 8.0 / 3.0);
    const SpectralField u0 = init_taylor_green(g, 1.0);
    SimParams p = tame_params();
    p.t_end = 0.2;
    p.output_every = 1000000;  // only t = 0 and the endpoint

    auto final_residual = [&](double dt) {
        SimParams q = p;
        q.dt = dt;
        return std::abs(run(u0, q).ledger.rows().back().residual);
    };
    const double coarse = final_residual(1e-2);
    const double fine = final_residual(5e-3);
    CHECK(coarse / fine >= 3.5);
}

TEST_CASE("snapshots are emitted on schedule") {
    const Grid g = make_grid(8, 1.0, 8.0 / 3.0);
    const SpectralField u0 = init_taylor_green(g, 1.0);
    SimParams p = tame_params();
    p.t_end = 0.1;
    p.snapshot_every = 5;
    const RunResult result = run(u0, p);
    REQUIRE(result.snapshots.size() == 3);  // t = 0, 0.05, 0.1
    CHECK(result.snapshots[0].first == 0.0);
    CHECK(result.snapshots[1].first == doctest::Approx(0.05));
    CHECK(result.snapshots[2].first == doctest::Approx(0.1));
    CHECK(max_coefficient_difference(result.snapshots.back().second, result.final_state.field) ==
          0.0);
}

TEST_CASE("run rejects invalid initial states") {
    const Grid g = make_grid(8, 1.0, 2.0);
    const SimParams p = tame_params();

    SpectralField with_mean(g);
    with_mean.at(0, 0, 0, 0) = 1.0;
    CHECK_THROWS_AS(run(with_mean, p), std::invalid_argument);

    SpectralField not_solenoidal(g);
    not_solenoidal.at(0, 1, 0, 0) = 1.0;
    not_solenoidal.at(0, 7, 0, 0) = 1.0;
    CHECK_THROWS_AS(run(not_solenoidal, p), std::invalid_argument);

    SpectralField outside(g);
    outside.at(1, 3, 0, 0) = 1.0;  // |k| = 3 > 2
    outside.at(1, 5, 0, 0) = 1.0;
    CHECK_THROWS_AS(run(outside, p), std::invalid_argument);
}

TEST_CASE("the damping guard sub-steps strong fields stably") {
    const Grid g = make_grid(8, 1.0, 8.0 / 3.0);
    SpectralField u0 = init_taylor_green(g, 1.0);
    u0 *= 1.5 / 1.0;  // max speed 1.5, expm1(b (1.5)^2) ~ 8.5 with r = 2

    SimParams p;
    p.nu = 0.05;
    p.damping = DampingParams{1.0, 1.0, 2.0};
    p.clip = ClipPolicy::saturate_for(p.damping);
    p.dt = 0.2;  // dt * rate ~ 1.7 >> the guard threshold
    p.t_end = 0.2;
    p.output_every = 1;

    const SolverState out = step(SolverState{0.0, u0, 0}, p);
    CHECK(out.time == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(all_finite(out.field));
    CHECK(l2_norm(out.field) < l2_norm(u0));

    const RunResult result = run(u0, p);
    const VerifyResult verdict = verify_energy(result.ledger, 1e-2);
    CHECK(verdict.pass);
}

TEST_CASE("non-finite states are detected") {
    const Grid g = make_grid(8, 1.0, 8.0 / 3.0);
    SpectralField u0 = init_taylor_green(g, 1.0);
    SolverState s{0.0, u0, 0};
    s.field.at(1, 1, 0, 0) = std::complex<double>(std::nan(""), 0.0);
    CHECK_THROWS_AS(step(s, tame_params()), NonFiniteState);
}
