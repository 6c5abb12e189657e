#include "dampflow/dense_reference.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "dampflow/errors.hpp"

namespace dampflow::oracle {

namespace {

using Key = std::array<int, 3>;
using Amp = std::array<std::complex<double>, 3>;
using ModeMap = std::map<Key, Amp>;

ModeMap to_map(const DenseModeSet& m) {
    ModeMap map;
    for (const DenseMode& mode : m.modes) {
        Amp& amp = map[mode.index];
        for (int c = 0; c < 3; ++c) amp[c] += mode.amplitude[c];
    }
    return map;
}

DenseModeSet from_map(const ModeMap& map, double box_scale) {
    DenseModeSet out;
    out.box_scale = box_scale;
    for (const auto& [key, amp] : map) {
        if (std::abs(amp[0]) == 0.0 && std::abs(amp[1]) == 0.0 && std::abs(amp[2]) == 0.0) continue;
        out.modes.push_back(DenseMode{key, amp});
    }
    if (out.modes.size() > kMaxModes) throw std::length_error("dense mode set exceeds kMaxModes");
    return out;
}

double index_norm_sq(const Key& m) {
    return double(m[0]) * m[0] + double(m[1]) * m[1] + double(m[2]) * m[2];
}

bool inside_ball(const Key& m, double box_scale, double radius) {
    return index_norm_sq(m) / (box_scale * box_scale) <= radius * radius * (1.0 + 1e-12);
}

Amp leray_amp(const Key& m, double box_scale, const Amp& amp) {
    const double k2 = index_norm_sq(m) / (box_scale * box_scale);
    if (k2 == 0.0) return Amp{};
    const double kx = m[0] / box_scale;
    const double ky = m[1] / box_scale;
    const double kz = m[2] / box_scale;
    const std::complex<double> kdotv = (kx * amp[0] + ky * amp[1] + kz * amp[2]) / k2;
    return Amp{amp[0] - kx * kdotv, amp[1] - ky * kdotv, amp[2] - kz * kdotv};
}

// Axis twiddle row e^{2*pi*i*m*j/n} for j in [0, n).
std::vector<std::complex<double>> axis_row(int m, int n) {
    std::vector<std::complex<double>> row(n);
    for (int j = 0; j < n; ++j) {
        const double angle = 2.0 * kPi * double(((long long)m * j) % n) / n;
        row[j] = {std::cos(angle), std::sin(angle)};
    }
    return row;
}

// Collocation values of the mode sum on the n^3 lattice, one complex
// accumulator triple per point (real part is the velocity sample).
std::vector<Amp> evaluate_on_lattice(const DenseModeSet& m, int n) {
    std::vector<Amp> values(static_cast<std::size_t>(n) * n * n);
    for (const DenseMode& mode : m.modes) {
        const auto t0 = axis_row(mode.index[0], n);
        const auto t1 = axis_row(mode.index[1], n);
        const auto t2 = axis_row(mode.index[2], n);
        std::size_t p = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const std::complex<double> t01 = t0[i] * t1[j];
                for (int k = 0; k < n; ++k, ++p) {
                    const std::complex<double> phase = t01 * t2[k];
                    for (int c = 0; c < 3; ++c) values[p][c] += mode.amplitude[c] * phase;
                }
            }
        }
    }
    return values;
}

DenseModeSet damping_on_lattice(const DenseModeSet& m, const DampingParams& p,
                                const ClipPolicy& clip, int n, double radius) {
    if (m.modes.size() > kMaxModes) throw std::length_error("dense mode set exceeds kMaxModes");
    const std::vector<Amp> values = evaluate_on_lattice(m, n);
    const std::size_t count = values.size();

    std::vector<std::array<double, 3>> damped(count);
    for (std::size_t q = 0; q < count; ++q) {
        const std::array<double, 3> v{values[q][0].real(), values[q][1].real(),
                                      values[q][2].real()};
        const double speed = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        const double scale = damping_scale(speed, p, clip, nullptr, q);
        damped[q] = {scale * v[0], scale * v[1], scale * v[2]};
    }

    const int tmax = static_cast<int>(std::floor(radius * m.box_scale + 1e-9));
    ModeMap out;
    for (int a = -tmax; a <= tmax; ++a) {
        for (int b = -tmax; b <= tmax; ++b) {
            for (int c = -tmax; c <= tmax; ++c) {
                const Key key{a, b, c};
                if (key == Key{0, 0, 0}) continue;
                if (!inside_ball(key, m.box_scale, radius)) continue;
                const auto t0 = axis_row(a, n);
                const auto t1 = axis_row(b, n);
                const auto t2 = axis_row(c, n);
                Amp acc{};
                std::size_t q = 0;
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) {
                        const std::complex<double> t01 = std::conj(t0[i] * t1[j]);
                        for (int k = 0; k < n; ++k, ++q) {
                            const std::complex<double> phase = t01 * std::conj(t2[k]);
                            for (int d = 0; d < 3; ++d) acc[d] += damped[q][d] * phase;
                        }
                    }
                }
                const double inv = 1.0 / double(count);
                for (int d = 0; d < 3; ++d) acc[d] *= inv;
                out[key] = leray_amp(key, m.box_scale, acc);
            }
        }
    }
    return from_map(out, m.box_scale);
}

ModeMap add_scaled(const ModeMap& a, double scale, const ModeMap& b) {
    ModeMap out = a;
    for (const auto& [key, amp] : b) {
        Amp& dst = out[key];
        for (int c = 0; c < 3; ++c) dst[c] += scale * amp[c];
    }
    return out;
}

}  // namespace

DenseModeSet from_spectral(const SpectralField& g, double tol) {
    const Grid& grid = g.grid();
    const int n = grid.n_points();
    DenseModeSet out;
    out.box_scale = grid.box_scale();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                Amp amp{g.at(0, i, j, k), g.at(1, i, j, k), g.at(2, i, j, k)};
                double mag = 0.0;
                for (int c = 0; c < 3; ++c) mag = std::max(mag, std::abs(amp[c]));
                if (mag <= tol) continue;
                out.modes.push_back(
                    DenseMode{{fold_index(i, n), fold_index(j, n), fold_index(k, n)}, amp});
                if (out.modes.size() > kMaxModes) {
                    throw std::length_error("dense mode set exceeds kMaxModes");
                }
            }
        }
    }
    return out;
}

SpectralField to_spectral(const DenseModeSet& m, const Grid& grid) {
    SpectralField out(grid);
    const int n = grid.n_points();
    for (const DenseMode& mode : m.modes) {
        std::array<int, 3> pos{};
        for (int c = 0; c < 3; ++c) {
            const int folded = mode.index[c];
            if (folded <= -n / 2 || folded > n / 2) {
                throw std::invalid_argument("dense mode not representable on this grid");
            }
            pos[c] = (folded % n + n) % n;
        }
        for (int c = 0; c < 3; ++c) out.at(c, pos[0], pos[1], pos[2]) += mode.amplitude[c];
    }
    return out;
}

double hermitian_closure_defect(const DenseModeSet& m) {
    const ModeMap map = to_map(m);
    double worst = 0.0;
    for (const auto& [key, amp] : map) {
        const Key partner{-key[0], -key[1], -key[2]};
        Amp other{};
        if (auto it = map.find(partner); it != map.end()) other = it->second;
        for (int c = 0; c < 3; ++c) {
            worst = std::max(worst, std::abs(amp[c] - std::conj(other[c])));
        }
    }
    return worst;
}

DenseModeSet dense_transport(const DenseModeSet& m, double radius) {
    if (m.modes.size() > kMaxModes) throw std::length_error("dense mode set exceeds kMaxModes");
    ModeMap out;
    const std::complex<double> iunit(0.0, 1.0);
    for (const DenseMode& a : m.modes) {
        for (const DenseMode& b : m.modes) {
            const Key t{a.index[0] + b.index[0], a.index[1] + b.index[1],
                        a.index[2] + b.index[2]};
            if (!inside_ball(t, m.box_scale, radius)) continue;
            const double kx = t[0] / m.box_scale;
            const double ky = t[1] / m.box_scale;
            const double kz = t[2] / m.box_scale;
            const std::complex<double> kdotb =
                kx * b.amplitude[0] + ky * b.amplitude[1] + kz * b.amplitude[2];
            Amp& dst = out[t];
            for (int c = 0; c < 3; ++c) dst[c] += iunit * a.amplitude[c] * kdotb;
        }
    }
    for (auto& [key, amp] : out) amp = leray_amp(key, m.box_scale, amp);
    return from_map(out, m.box_scale);
}

DenseModeSet collocation_damping(const DenseModeSet& m, const DampingParams& p,
                                 const ClipPolicy& clip, int n_grid, double radius) {
    return damping_on_lattice(m, p, clip, n_grid, radius);
}

DenseModeSet oversampled_damping(const DenseModeSet& m, const DampingParams& p,
                                 const ClipPolicy& clip, int n_base, int oversample,
                                 double radius) {
    if (oversample < 2) throw std::invalid_argument("oversample must be >= 2");
    return damping_on_lattice(m, p, clip, n_base * oversample, radius);
}

DenseModeSet explicit_reference_run(const DenseModeSet& m0, const SimParams& p, double dt_ref,
                                    int n_grid, double radius) {
    if (!(dt_ref > 0.0)) throw std::invalid_argument("dt_ref must be > 0");
    const double L = m0.box_scale;

    auto rhs = [&](const ModeMap& state) {
        const DenseModeSet set = from_map(state, L);
        const ModeMap transport = to_map(dense_transport(set, radius));
        const ModeMap damping = to_map(collocation_damping(set, p.damping, p.clip, n_grid, radius));
        ModeMap out;
        for (const auto& [key, amp] : state) {
            const double k2 = index_norm_sq(key) / (L * L);
            Amp& dst = out[key];
            for (int c = 0; c < 3; ++c) dst[c] = -p.nu * k2 * amp[c];
        }
        out = add_scaled(out, -1.0, transport);
        out = add_scaled(out, -1.0, damping);
        return out;
    };

    ModeMap state = to_map(m0);
    double time = 0.0;
    while (time < p.t_end - 1e-12 * std::max(p.t_end, 1.0)) {
        const double h = std::min(dt_ref, p.t_end - time);
        const ModeMap k1 = rhs(state);
        const ModeMap k2 = rhs(add_scaled(state, 0.5 * h, k1));
        const ModeMap k3 = rhs(add_scaled(state, 0.5 * h, k2));
        const ModeMap k4 = rhs(add_scaled(state, h, k3));
        state = add_scaled(state, h / 6.0, k1);
        state = add_scaled(state, h / 3.0, k2);
        state = add_scaled(state, h / 3.0, k3);
        state = add_scaled(state, h / 6.0, k4);
        time += h;
        for (const auto& [key, amp] : state) {
            for (int c = 0; c < 3; ++c) {
                if (!std::isfinite(amp[c].real()) || !std::isfinite(amp[c].imag())) {
                    throw NonFiniteState(time);
                }
            }
        }
    }
    return from_map(state, L);
}

double relative_difference(const DenseModeSet& a, const DenseModeSet& b) {
    const ModeMap ma = to_map(a);
    const ModeMap mb = to_map(b);
    auto magnitude = [](const Amp& amp) {
        double s = 0.0;
        for (int c = 0; c < 3; ++c) s += std::norm(amp[c]);
        return std::sqrt(s);
    };
    double scale = 0.0;
    for (const auto& [key, amp] : ma) scale = std::max(scale, magnitude(amp));
    double worst = 0.0;
    auto visit = [&](const Key& key) {
        Amp da{};
        Amp db{};
        if (auto it = ma.find(key); it != ma.end()) da = it->second;
        if (auto it = mb.find(key); it != mb.end()) db = it->second;
        Amp diff;
        for (int c = 0; c < 3; ++c) diff[c] = da[c] - db[c];
        worst = std::max(worst, magnitude(diff));
    };
    for (const auto& [key, amp] : ma) visit(key);
    for (const auto& [key, amp] : mb) visit(key);
    if (scale == 0.0) {
        return worst == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return worst / scale;
}

}  // namespace dampflow::oracle
