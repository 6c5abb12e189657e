#include "dampflow/damping.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dampflow/errors.hpp"
#include "dampflow/operators.hpp"
#include "dampflow/transform.hpp"

namespace dampflow {

void validate(const DampingParams& p) {
    if (!(p.a >= 0.0)) throw std::invalid_argument("damping amplitude a must be >= 0");
    if (!(p.b > 0.0)) throw std::invalid_argument("damping rate b must be > 0");
    if (!(p.r >= 1.0)) throw std::invalid_argument("damping power r must be >= 1");
}

ClipPolicy ClipPolicy::saturate_for(const DampingParams& p) {
    ClipPolicy clip;
    clip.v_max = std::pow(kMaxExpArgument / p.b, 1.0 / p.r);
    clip.mode = Mode::saturate;
    return clip;
}

namespace {

double clipped_speed(double speed, const ClipPolicy& clip, bool* saturated,
                     std::size_t point_index) {
    if (speed <= clip.v_max) return speed;
    if (clip.mode == ClipPolicy::Mode::error) throw OverflowRisk(point_index, speed, clip.v_max);
    if (saturated != nullptr) *saturated = true;
    return clip.v_max;
}

double expm1_factor(double speed, const DampingParams& p, const ClipPolicy& clip, bool* saturated,
                    std::size_t point_index) {
    const double s = clipped_speed(speed, clip, saturated, point_index);
    return std::expm1(p.b * std::pow(s, p.r));
}

}  // namespace

double damping_scale(double speed, const DampingParams& p, const ClipPolicy& clip, bool* saturated,
                     std::size_t point_index) {
    if (p.a <= kAmplitudeDisabled) return 0.0;
    return p.a * expm1_factor(speed, p, clip, saturated, point_index);
}

std::array<double, 3> damping_pointwise(const std::array<double, 3>& v, const DampingParams& p,
                                        const ClipPolicy& clip, std::size_t* saturated_count) {
    const double speed = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    bool saturated = false;
    const double scale = damping_scale(speed, p, clip, &saturated);
    if (saturated && saturated_count != nullptr) ++*saturated_count;
    return {scale * v[0], scale * v[1], scale * v[2]};
}

SpectralField damping_term(const SpectralField& u, const DampingParams& p, const ClipPolicy& clip,
                           std::size_t* saturated_count) {
    if (p.a <= kAmplitudeDisabled) return SpectralField(u.grid());
    PhysicalField f = inverse_transform(u);
    const std::size_t m = f.grid().point_count();
    for (std::size_t i = 0; i < m; ++i) {
        auto v = f.vector_at(i);
        const double speed = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        bool saturated = false;
        const double scale = p.a * expm1_factor(speed, p, clip, &saturated, i);
        if (saturated && saturated_count != nullptr) ++*saturated_count;
        for (int c = 0; c < 3; ++c) f.component(c)[i] = scale * v[c];
    }
    return galerkin_project(forward_transform(f));
}

double damping_dissipation(const SpectralField& u, const DampingParams& p, const ClipPolicy& clip,
                           std::size_t* saturated_count) {
    const PhysicalField f = inverse_transform(u);
    const std::size_t m = f.grid().point_count();
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto v = f.vector_at(i);
        const double mag2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        bool saturated = false;
        sum += expm1_factor(std::sqrt(mag2), p, clip, &saturated, i) * mag2;
        if (saturated && saturated_count != nullptr) ++*saturated_count;
    }
    return f.grid().cell_volume() * sum;
}

double damping_flux_l1(const PhysicalField& f, const DampingParams& p) {
    const std::size_t m = f.grid().point_count();
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto v = f.vector_at(i);
        const double speed = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        sum += std::expm1(p.b * std::pow(speed, p.r)) * speed;
    }
    return f.grid().cell_volume() * sum;
}

FluxSplit k1k2_split(const PhysicalField& f, const DampingParams& p) {
    const std::size_t m = f.grid().point_count();
    FluxSplit split;
    for (std::size_t i = 0; i < m; ++i) {
        const auto v = f.vector_at(i);
        const double speed = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        const double term = std::expm1(p.b * std::pow(speed, p.r)) * speed;
        if (speed <= 1.0) {
            split.below += term;
        } else {
            split.above += term;
        }
    }
    const double dv = f.grid().cell_volume();
    split.below *= dv;
    split.above *= dv;
    return split;
}

namespace {

double monotonicity_gap(std::span<const double> x, std::span<const double> y, double hx,
                        double hy, std::span<const double> fx, std::span<const double> fy) {
    double inner = 0.0;
    double dist2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        inner += (fx[i] - fy[i]) * d;
        dist2 += d * d;
    }
    return inner - 0.5 * (hx + hy) * dist2;
}

double euclidean_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

}  // namespace

double power_monotonicity_gap(std::span<const double> x, std::span<const double> y, double beta) {
    if (x.size() != y.size()) throw std::invalid_argument("gap arguments must have equal length");
    const double hx = std::pow(euclidean_norm(x), beta);
    const double hy = std::pow(euclidean_norm(y), beta);
    std::vector<double> fx(x.size()), fy(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        fx[i] = hx * x[i];
        fy[i] = hy * y[i];
    }
    return monotonicity_gap(x, y, hx, hy, fx, fy);
}

double exp_monotonicity_gap(std::span<const double> x, std::span<const double> y,
                            const DampingParams& p) {
    if (x.size() != y.size()) throw std::invalid_argument("gap arguments must have equal length");
    const double hx = std::expm1(p.b * std::pow(euclidean_norm(x), p.r));
    const double hy = std::expm1(p.b * std::pow(euclidean_norm(y), p.r));
    std::vector<double> fx(x.size()), fy(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        fx[i] = hx * x[i];
        fy[i] = hy * y[i];
    }
    return monotonicity_gap(x, y, hx, hy, fx, fy);
}

}  // namespace dampflow
