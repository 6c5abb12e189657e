#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "dampflow/damping.hpp"
#include "dampflow/dense_reference.hpp"
#include "dampflow/errors.hpp"
#include "dampflow/initial_conditions.hpp"
#include "dampflow/norms.hpp"
#include "dampflow/operators.hpp"
#include "dampflow/transform.hpp"
#include "dampflow/transport.hpp"
#include "test_helpers.hpp"

using namespace dampflow;
using dampflow::testing::random_hermitian;

namespace {

double spectral_inner(const SpectralField& a, const SpectralField& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.raw().size(); ++i) {
        sum += (a.raw()[i] * std::conj(b.raw()[i])).real();
    }
    return a.grid().domain_volume() * sum;
}

}  // namespace

TEST_CASE("damping parameter validation") {
    CHECK_NOTHROW(validate(DampingParams{0.0, 1.0, 4.0}));
    CHECK_THROWS_AS(validate(DampingParams{-1.0, 1.0, 4.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(DampingParams{1.0, 0.0, 4.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(DampingParams{1.0, 1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("saturating clip policy caps the exponent argument at 700") {
    for (const DampingParams p : {DampingParams{1.0, 1.0, 4.0}, DampingParams{2.0, 0.5, 1.0},
                                  DampingParams{1.0, 2.0, 7.0 / 3.0}}) {
        const ClipPolicy clip = ClipPolicy::saturate_for(p);
        CHECK(p.b * std::pow(clip.v_max, p.r) == doctest::Approx(kMaxExpArgument).epsilon(1e-12));
    }
}

TEST_CASE("pointwise damping matches hand values") {
    const DampingParams p{1.0, 1.0, 4.0};
    const ClipPolicy clip = ClipPolicy::saturate_for(p);

    const auto zero = damping_pointwise({0.0, 0.0, 0.0}, p, clip);
    CHECK(zero[0] == 0.0);
    CHECK(zero[1] == 0.0);
    CHECK(zero[2] == 0.0);

    const auto unit = damping_pointwise({1.0, 0.0, 0.0}, p, clip);
    CHECK(unit[0] == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
    CHECK(unit[0] == doctest::Approx(1.718281828).epsilon(1e-9));
    CHECK(unit[1] == 0.0);
}

TEST_CASE("small-field damping follows the leading Taylor term") {
    const DampingParams p{1.0, 1.0, 4.0};
    const ClipPolicy clip = ClipPolicy::saturate_for(p);
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const auto out = damping_pointwise({eps, 0.0, 0.0}, p, clip);
        const double leading = p.a * p.b * std::pow(eps, p.r) * eps;
        CHECK(std::abs(out[0] - leading) <= 1e-3 * leading);
        if (eps <= 1e-3) CHECK(std::abs(out[0] - leading) <= 1e-6 * leading);
    }
}

TEST_CASE("damping magnitude is nondecreasing along rays") {
    const DampingParams p{0.7, 1.3, 2.0};
    const ClipPolicy clip = ClipPolicy::saturate_for(p);
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double s = 0.05 * i;
        const auto out = damping_pointwise({s, 0.0, 0.0}, p, clip);
        CHECK(out[0] >= prev);
        prev = out[0];
    }
}

TEST_CASE("clip saturates or raises per policy") {
    const DampingParams p{1.0, 1.0, 4.0};
    ClipPolicy clip = ClipPolicy::saturate_for(p);
    const double over = clip.v_max * 2.0;

    std::size_t count = 0;
    const auto capped = damping_pointwise({over, 0.0, 0.0}, p, clip, &count);
    CHECK(count == 1);
    bool saturated = false;
    CHECK(capped[0] ==
          doctest::Approx(damping_scale(clip.v_max, p, clip, &saturated) * over).epsilon(1e-12));
    CHECK(!saturated);  // exactly at the cap is not a clip event

    clip.mode = ClipPolicy::Mode::error;
    CHECK_THROWS_AS(damping_scale(over, p, clip, nullptr, 42), OverflowRisk);
    try {
        damping_scale(over, p, clip, nullptr, 42);
    } catch (const OverflowRisk& e) {
        CHECK(e.flat_index() == 42);
        CHECK(e.speed() == doctest::Approx(over));
    }
}

TEST_CASE("amplitudes at or below the disabled threshold give an exact zero term") {
    const DampingParams p{kAmplitudeDisabled, 1.0, 4.0};
    const ClipPolicy clip = ClipPolicy::saturate_for(p);
    CHECK(damping_scale(3.0, p, clip) == 0.0);

    const Grid g = make_grid(8, 1.0, 8.0 / 3.0);
    const SpectralField u = leray_project(random_hermitian(g, 3, g.trunc_radius()));
    CHECK(linf_coefficient(damping_term(u, p, clip)) == 0.0);
}

TEST_CASE("damping term of the zero field is zero") {
    const Grid g = make_grid(8, 1.0, 8.0 / 3.0);
    const DampingParams p{1.0, 1.0, 4.0};
    CHECK(linf_coefficient(damping_term(SpectralField(g), p, ClipPolicy::saturate_for(p))) == 0.0);
}

TEST_CASE("shear-mode damping matches the oversampled oracle") {
    const Grid g = make_grid(8, 1.0, 8.0 / 3.0);
    const double eps = 1e-2;
    SpectralField u(g);
    u.at(1, 1, 0, 0) = 0.5 * eps;
    u.at(1, 7, 0, 0) = 0.5 * eps;

    const DampingParams p{1.0, 1.0, 4.0};
    const ClipPolicy clip = ClipPolicy::saturate_for(p);
    const SpectralField term = damping_term(u, p, clip);

    // Leading behaviour a*b*eps^5 * cos^4(x)cos(x) = a*b*eps^5 * cos^5(x);
    // cos^5 = (10 cos x + 5 cos 3x + cos 5x)/16 and only the first harmonic
    // sits inside the truncation ball, so the kept pattern is (5/8) cos x.
    const double leading = p.a * p.b * std::pow(eps, 5.0) * 5.0 / 8.0;
    CHECK(std::abs(term.at(1, 1, 0, 0).real() - 0.5 * leading) < 1e-3 * leading);

    const auto dense = oracle::from_spectral(u, 0.0);
    const auto oversampled =
        oracle::oversampled_damping(dense, p, clip, g.n_points(), 4, g.trunc_radius());
    const auto reference = oracle::to_spectral(oversampled, g);
    double worst = 0.0;
    for (std::size_t i = 0; i < term.raw().size(); ++i) {
        worst = std::max(worst, std::abs(term.raw()[i] - reference.raw()[i]));
    }
    CHECK(worst <= 1e-6 * linf_coefficient(term));
}

TEST_CASE("dissipation is the grid quadrature and is nonnegative") {
    const Grid g = make_grid(8, 1.0, 8.0 / 3.0);
    const DampingParams p{1.0, 1.0, 4.0};
    const ClipPolicy clip = ClipPolicy::saturate_for(p);

    CHECK(damping_dissipation(SpectralField(g), p, clip) == 0.0);

    // Constant-modulus field (0, cos x, sin x): |u| = 1 at every point.
    SpectralField u(g);
    u.at(1, 1, 0, 0) = 0.5;
    u.at(1, 7, 0, 0) = 0.5;
    u.at(2, 1, 0, 0) = {0.0, -0.5};
    u.at(2, 7, 0, 0) = {0.0, 0.5};
    const double expected = g.domain_volume() * (std::exp(1.0) - 1.0);
    CHECK(damping_dissipation(u, p, clip) == doctest::Approx(expected).epsilon(1e-12));

    for (std::uint64_t seed : {5ull, 6ull}) {
        const SpectralField w = random_hermitian(g, seed, g.trunc_radius());
        CHECK(damping_dissipation(w, p, clip) >= 0.0);
    }
}

TEST_CASE("single-shear dissipation matches a high-resolution 1D quadrature") {
    const Grid g = make_grid(32, 1.0, 32.0 / 3.0);
    SpectralField u(g);
    u.at(1, 1, 0, 0) = 0.5;
    u.at(1, 31, 0, 0) = 0.5;
    const DampingParams p{1.0, 1.0, 4.0};
    const ClipPolicy clip = ClipPolicy::saturate_for(p);

    // Simpson quadrature of expm1(cos^4 x) cos^2 x over one period.
    const int m = 100000;
    const double h = 2.0 * kPi / m;
    double integral = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double c = std::cos(i * h);
        const double f = std::expm1(std::pow(c, 4.0)) * c * c;
        const double w = (i == 0 || i == m) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        integral += w * f;
    }
    integral *= h / 3.0;
    const double expected = integral * std::pow(2.0 * kPi, 2.0);
    CHECK(damping_dissipation(u, p, clip) == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("damping term and dissipation are positivity-consistent") {
    const Grid g = make_grid(16, 1.0, 16.0 / 3.0);
    const DampingParams p{0.8, 1.2, 4.0};
    const ClipPolicy clip = ClipPolicy::saturate_for(p);
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        SpectralField u = leray_project(random_hermitian(g, seed, g.trunc_radius()));
        u *= 2.0 / l2_norm(u);
        const double diss = p.a * damping_dissipation(u, p, clip);
        const double inner = spectral_inner(damping_term(u, p, clip), u);
        CHECK(diss > 0.0);
        CHECK(std::abs(diss - inner) <= 1e-10 * (1.0 + diss));
    }
}

TEST_CASE("positivity-consistency survives saturation") {
    const Grid g = make_grid(16, 1.0, 16.0 / 3.0);
    const DampingParams p{1.0, 1.0, 4.0};
    const ClipPolicy clip{0.05, ClipPolicy::Mode::saturate};
    SpectralField u = leray_project(random_hermitian(g, 14, g.trunc_radius()));
    u *= 2.0 / l2_norm(u);

    std::size_t term_sat = 0;
    std::size_t diss_sat = 0;
    const SpectralField term = damping_term(u, p, clip, &term_sat);
    const double diss = p.a * damping_dissipation(u, p, clip, &diss_sat);
    CHECK(term_sat > 0);
    CHECK(term_sat == diss_sat);
    CHECK(std::abs(diss - spectral_inner(term, u)) <= 1e-10 * (1.0 + diss));
}

TEST_CASE("damping flux and its level split") {
    const Grid g = make_grid(8, 1.0, 8.0 / 3.0);
    const DampingParams p{1.0, 1.0, 4.0};

    CHECK(damping_flux_l1(PhysicalField(g), p) == 0.0);

    for (std::uint64_t seed : {21ull, 22ull, 23ull}) {
        SpectralField u = leray_project(random_hermitian(g, seed, g.trunc_radius()));
        u *= 2.0 / l2_norm(u);
        const PhysicalField f = inverse_transform(u);
        const double flux = damping_flux_l1(f, p);
        CHECK(flux >= 0.0);
        const FluxSplit split = k1k2_split(f, p);
        CHECK(split.below >= 0.0);
        CHECK(split.above >= 0.0);
        CHECK(std::abs(split.below + split.above - flux) <= 1e-12 * (1.0 + flux));
    }

    // A field with max speed below 1 puts all flux in K1.
    SpectralField small(g);
    small.at(1, 1, 0, 0) = 0.25;
    small.at(1, 7, 0, 0) = 0.25;
    const FluxSplit split = k1k2_split(inverse_transform(small), p);
    CHECK(split.above == 0.0);
    CHECK(split.below > 0.0);
}

TEST_CASE("scalar flux bound behind the K1 estimate") {
    // (e^{b z^4} - 1) z <= b e^b z^{10/3} on [0, 1].
    for (double b : {0.5, 1.0, 2.0}) {
        const double bound_scale = b * std::exp(b);
        for (int i = 0; i <= 10000; ++i) {
            const double z = i / 10000.0;
            const double lhs = std::expm1(b * std::pow(z, 4.0)) * z;
            const double rhs = bound_scale * std::pow(z, 10.0 / 3.0);
            REQUIRE(lhs <= rhs * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("monotonicity gaps match hand values") {
    const std::array<double, 3> x{1.0, 0.0, 0.0};
    const std::array<double, 3> zero{0.0, 0.0, 0.0};
    CHECK(power_monotonicity_gap(x, zero, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(power_monotonicity_gap(x, x, 2.0) == 0.0);

    const DampingParams p{1.0, 1.0, 4.0};
    const double e1 = std::exp(1.0) - 1.0;
    CHECK(exp_monotonicity_gap(x, zero, p) == doctest::Approx(0.5 * e1).epsilon(1e-14));
    CHECK(exp_monotonicity_gap(x, x, p) == 0.0);
}

TEST_CASE("monotonicity gaps are nonnegative on random sweeps") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    for (double beta : {1.0, 2.0, 4.0}) {
        for (int trial = 0; trial < 20000; ++trial) {
            std::array<double, 3> x{gauss(rng), gauss(rng), gauss(rng)};
            std::array<double, 3> y{gauss(rng), gauss(rng), gauss(rng)};
            const double scale = std::pow(1.0 + std::hypot(x[0], x[1], x[2]) +
                                              std::hypot(y[0], y[1], y[2]),
                                          beta + 2.0);
            REQUIRE(power_monotonicity_gap(x, y, beta) >= -1e-12 * scale);
        }
    }

    for (double r : {1.0, 2.0, 4.0}) {
        for (double b : {0.5, 1.0, 2.0}) {
            const DampingParams p{1.0, b, r};
            const double cap = std::pow(8.0 / b, 1.0 / r);
            for (int trial = 0; trial < 5000; ++trial) {
                auto sample = [&]() {
                    std::array<double, 3> v{gauss(rng), gauss(rng), gauss(rng)};
                    const double len = std::hypot(v[0], v[1], v[2]);
                    const double target = cap * std::cbrt(unif(rng));
                    for (double& c : v) c *= len > 0.0 ? target / len : 0.0;
                    return v;
                };
                const auto x = sample();
                const auto y = sample();
                const double scale = std::pow(1.0 + std::hypot(x[0], x[1], x[2]) +
                                                  std::hypot(y[0], y[1], y[2]),
                                              r + 2.0);
                REQUIRE(exp_monotonicity_gap(x, y, p) >= -1e-12 * scale);
            }
        }
    }
}

TEST_CASE("transport of the zero and shear fields vanishes") {
    const Grid g = make_grid(8, 1.0, 8.0 / 3.0);
    CHECK(linf_coefficient(transport_term(SpectralField(g))) == 0.0);

    SpectralField shear(g);
    shear.at(1, 1, 0, 0) = 0.5;
    shear.at(1, 7, 0, 0) = 0.5;
    CHECK(linf_coefficient(transport_term(shear)) < 1e-14);
}

TEST_CASE("transport is skew-symmetric after dealiasing") {
    const Grid g = make_grid(32, 1.0, 32.0 / 3.0);
    const SpectralField tg = init_taylor_green(g, 1.0);
    const SpectralField t = transport_term(tg);
    CHECK(std::abs(spectral_inner(t, tg)) <= 1e-12 * l2_norm(tg) * l2_norm(tg));

    for (std::uint64_t seed : {31ull, 32ull}) {
        const SpectralField u = leray_project(random_hermitian(g, seed, g.trunc_radius()));
        const SpectralField tu = transport_term(u);
        CHECK(std::abs(spectral_inner(tu, u)) <= 1e-12 * l2_norm(u) * l2_norm(tu));
        CHECK(max_divergence(tu) < 1e-12 * (1.0 + linf_coefficient(tu)));
        CHECK(max_coefficient_outside_ball(tu, g.trunc_radius()) == 0.0);
    }
}

TEST_CASE("transport rejects energy outside the truncation ball") {
    const Grid g = make_grid(16, 1.0, 3.0);
    SpectralField u(g);
    u.at(1, 5, 0, 0) = 0.5;  // |k| = 5 > 3
    u.at(1, 11, 0, 0) = 0.5;
    CHECK_THROWS_AS(transport_term(u), std::invalid_argument);
}
