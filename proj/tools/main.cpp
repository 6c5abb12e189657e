#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dampflow/config.hpp"
#include "dampflow/dense_reference.hpp"
#include "dampflow/diagnostics.hpp"
#include "dampflow/errors.hpp"
#include "dampflow/initial_conditions.hpp"
#include "dampflow/integrator.hpp"
#include "dampflow/ledger.hpp"
#include "dampflow/norms.hpp"
#include "dampflow/operators.hpp"
#include "dampflow/snapshot.hpp"
#include "dampflow/transport.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dampflow;

namespace {

// Tolerances enforced by the verifying subcommands.
constexpr double kLemmaGapTol = 1e-12;        ///< normalized monotonicity gap floor
constexpr double kStabilityMarginSlack = 1e-8;  ///< relative to ||w(0)||^2
constexpr double kTransportOracleTol = 1e-12;
constexpr double kRhsOracleTol = 1e-6;
constexpr double kEndpointOracleTol = 1e-6;

struct Options {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit_error(const std::string& type, const std::string& message, const json& extra = json::object()) {
    json err = extra;
    err["type"] = type;
    err["message"] = message;
    std::cerr << json{{"error", err}}.dump() << "\n";
}

fs::path resolve_out_dir(const Options& opt, const std::string& config_dir) {
    const fs::path dir = opt.out_dir.empty() ? fs::path(config_dir) : fs::path(opt.out_dir);
    fs::create_directories(dir);
    return dir;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

std::vector<std::string> preamble_lines(const RunConfig& cfg) {
    std::vector<std::string> out;
    for (const auto& [key, value] : cfg.echo()) out.push_back(key + " = " + value);
    return out;
}

void write_preamble(std::ostream& out, const std::vector<std::string>& lines) {
    for (const std::string& line : lines) out << "# " << line << "\n";
}

void write_summary(const fs::path& path, const json& body) {
    open_out(path) << body.dump(2) << "\n";
}

SpectralField build_initial(const RunConfig& cfg, const Grid& grid) {
    if (cfg.init.type == "taylor_green") {
        return init_taylor_green(grid, cfg.init.amplitude);
    }
    if (cfg.init.type == "random") {
        const double cutoff = cfg.init.cutoff > 0.0
                                  ? std::min(cfg.init.cutoff, grid.trunc_radius())
                                  : grid.trunc_radius();
        return init_random_divfree(grid, cfg.init.seed, cutoff, cfg.init.amplitude);
    }
    Snapshot snap = read_snapshot(cfg.init.snapshot_path);
    const Grid& g = snap.field.grid();
    if (g.n_points() != grid.n_points() || g.box_scale() != grid.box_scale()) {
        throw std::runtime_error("snapshot grid (" + std::to_string(g.n_points()) +
                                 ") does not match the configured grid");
    }
    return snap.field;
}

void write_snapshots(const RunResult& res, const RunConfig& cfg, const fs::path& dir) {
    char name[32];
    for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
        std::snprintf(name, sizeof(name), "snapshot_%06zu.snap", i);
        write_snapshot(dir / name, res.snapshots[i].second, res.snapshots[i].first,
                       {{"config", cfg.to_json()}});
    }
}

int cmd_simulate(const Options& opt) {
    const RunConfig cfg = parse_config_file(opt.config_path, opt.overrides);
    const Grid grid = cfg.make_grid();
    const SimParams params = cfg.make_sim_params();
    const fs::path dir = resolve_out_dir(opt, cfg.output.dir);

    const RunResult res = run(build_initial(cfg, grid), params);
    {
        auto out = open_out(dir / "ledger.csv");
        res.ledger.write_csv(out, preamble_lines(cfg));
    }
    write_snapshots(res, cfg, dir);

    const VerifyResult verdict = verify_energy(res.ledger, cfg.verify.tol);
    const LedgerRow& last = res.ledger.rows().back();
    write_summary(dir / "summary.json",
                  {{"config", cfg.to_json()},
                   {"rows", res.ledger.rows().size()},
                   {"snapshots", res.snapshots.size()},
                   {"final", {{"t", last.t},
                              {"energy", last.energy},
                              {"visc_cum", last.visc_cum},
                              {"damp_cum", last.damp_cum},
                              {"residual", last.residual},
                              {"saturation_count", last.saturation_count}}},
                   {"verify", {{"tol", cfg.verify.tol},
                               {"pass", verdict.pass},
                               {"worst_row", verdict.worst_row},
                               {"worst_residual", verdict.worst_residual},
                               {"max_abs_residual", verdict.max_abs_residual},
                               {"failure", verdict.failure}}}});

    std::cout << "simulate: " << res.ledger.rows().size() << " rows, final energy "
              << fmt(last.energy) << ", energy check " << (verdict.pass ? "PASS" : "FAIL") << "\n";
    if (!verdict.pass) {
        emit_error("invariant", "energy inequality violated: " + verdict.failure);
        return 1;
    }
    return 0;
}

int cmd_verify_energy(const std::string& ledger_path, double tol) {
    std::ifstream in(ledger_path);
    if (!in) throw std::runtime_error("cannot open ledger '" + ledger_path + "'");
    const EnergyLedger ledger = EnergyLedger::read_csv(in);
    const VerifyResult verdict = verify_energy(ledger, tol);
    std::cout << json{{"ledger", ledger_path},
                      {"rows", ledger.rows().size()},
                      {"tol", tol},
                      {"pass", verdict.pass},
                      {"worst_row", verdict.worst_row},
                      {"worst_residual", verdict.worst_residual},
                      {"max_abs_residual", verdict.max_abs_residual},
                      {"failure", verdict.failure}}
                     .dump(2)
              << "\n";
    if (!verdict.pass) {
        emit_error("invariant", "energy inequality violated: " + verdict.failure,
                   {{"worst_row", verdict.worst_row}});
        return 1;
    }
    return 0;
}

int cmd_stability(const Options& opt) {
    const RunConfig cfg = parse_config_file(opt.config_path, opt.overrides);
    const Grid grid = cfg.make_grid();
    const SimParams params = cfg.make_sim_params();
    const fs::path dir = resolve_out_dir(opt, cfg.output.dir);

    const SpectralField u0 = build_initial(cfg, grid);
    SpectralField delta;
    if (cfg.stability.delta_mode == "scaled") {
        delta = u0;
        delta *= cfg.stability.delta_scale;
    } else {
        delta = init_random_divfree(grid, cfg.stability.delta_seed, grid.trunc_radius(),
                                    cfg.stability.delta_scale * l2_norm(u0));
    }

    const StabilityReport report = stability_experiment(u0, delta, params);
    {
        auto out = open_out(dir / "stability.csv");
        write_preamble(out, preamble_lines(cfg));
        out << "t,w_norm_sq,bound,margin\n";
        for (std::size_t i = 0; i < report.times.size(); ++i) {
            out << fmt(report.times[i]) << ',' << fmt(report.w_norm_sq[i]) << ','
                << fmt(report.bound[i]) << ',' << fmt(report.margin[i]) << "\n";
        }
    }

    const bool pass = report.min_margin >= -kStabilityMarginSlack * report.w0_norm_sq;
    write_summary(dir / "stability.json", {{"config", cfg.to_json()},
                                           {"rows", report.times.size()},
                                           {"w0_norm_sq", report.w0_norm_sq},
                                           {"min_margin", report.min_margin},
                                           {"margin_slack", kStabilityMarginSlack},
                                           {"pass", pass}});
    std::cout << "stability: min margin " << fmt(report.min_margin) << " over "
              << report.times.size() << " rows, " << (pass ? "PASS" : "FAIL") << "\n";
    if (!pass) {
        emit_error("invariant", "separation exceeded the exponential stability bound",
                   {{"min_margin", report.min_margin}});
        return 1;
    }
    return 0;
}

int cmd_decay(const Options& opt) {
    const RunConfig cfg = parse_config_file(opt.config_path, opt.overrides);
    if (cfg.output.snapshot_every < 1) {
        throw ConfigError(0, "decay requires output.snapshot_every >= 1");
    }
    const Grid grid = cfg.make_grid();
    const SimParams params = cfg.make_sim_params();
    const fs::path dir = resolve_out_dir(opt, cfg.output.dir);

    const RunResult res = run(build_initial(cfg, grid), params);
    const DecayReport report = decay_probe(res.snapshots, cfg.decay.kappa, params.damping);
    {
        auto out = open_out(dir / "decay.csv");
        write_preamble(out, preamble_lines(cfg));
        out << "t,l2,h_neg2,w1_l2,w2_l2,lp_10_3,flux_l1,k1,k2\n";
        for (const DecayRow& row : report.rows) {
            out << fmt(row.t) << ',' << fmt(row.l2) << ',' << fmt(row.h_neg2) << ','
                << fmt(row.w1_l2) << ',' << fmt(row.w2_l2) << ',' << fmt(row.lp_10_3) << ','
                << fmt(row.damping_flux_l1) << ',' << fmt(row.k1) << ',' << fmt(row.k2) << "\n";
        }
    }
    write_snapshots(res, cfg, dir);

    const bool pass = report.split_consistent && report.low_mode_bounded &&
                      report.flux_split_additive && report.h_neg2_monotone;
    write_summary(dir / "decay.json", {{"config", cfg.to_json()},
                                       {"kappa", report.kappa},
                                       {"rows", report.rows.size()},
                                       {"split_consistent", report.split_consistent},
                                       {"low_mode_bounded", report.low_mode_bounded},
                                       {"flux_split_additive", report.flux_split_additive},
                                       {"h_neg2_monotone", report.h_neg2_monotone},
                                       {"failure", report.failure},
                                       {"pass", pass}});
    std::cout << "decay: " << report.rows.size() << " snapshots, "
              << (pass ? "PASS" : ("FAIL (" + report.failure + ")")) << "\n";
    if (!pass) {
        emit_error("invariant", "decay invariant violated: " + report.failure);
        return 1;
    }
    return 0;
}

/// Time at which the ledger energy first falls to a quarter of its initial
/// value (the half-life of the L2 norm), log-interpolated between rows;
/// -1 when not reached by t_end.
double half_life_l2(const EnergyLedger& ledger) {
    const auto& rows = ledger.rows();
    const double target = 0.25 * rows.front().energy;
    if (target <= 0.0) return -1.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].energy > target) continue;
        const double e0 = rows[i - 1].energy;
        const double e1 = rows[i].energy;
        if (e1 <= 0.0 || e0 <= target) return rows[i].t;
        const double f = std::log(e0 / target) / std::log(e0 / e1);
        return rows[i - 1].t + f * (rows[i].t - rows[i - 1].t);
    }
    return -1.0;
}

int cmd_sweep(const Options& opt) {
    const RunConfig cfg = parse_config_file(opt.config_path, opt.overrides);
    const fs::path dir = resolve_out_dir(opt, cfg.output.dir);

    std::vector<double> radii = cfg.sweep.trunc_list;
    if (radii.empty()) radii.push_back(cfg.make_grid().trunc_radius());

    struct SweepRow {
        double r = 0.0;
        double trunc = 0.0;
        double half_life = -1.0;
        double final_energy = 0.0;
        long long saturation_count = 0;
    };

    std::vector<std::future<SweepRow>> futures;
    for (double r : cfg.sweep.r_list) {
        for (double radius : radii) {
            futures.push_back(std::async(std::launch::async, [&cfg, r, radius] {
                SimParams params = cfg.make_sim_params();
                params.damping.r = r;
                if (cfg.damping.v_max <= 0.0) {
                    const auto mode = params.clip.mode;
                    params.clip = ClipPolicy::saturate_for(params.damping);
                    params.clip.mode = mode;
                }
                params.snapshot_every = 0;
                const Grid grid =
                    dampflow::make_grid(cfg.grid.n_points, cfg.grid.box_scale, radius);
                const RunResult res = run(build_initial(cfg, grid), params);
                return SweepRow{r, radius, half_life_l2(res.ledger),
                                res.ledger.rows().back().energy,
                                res.final_state.saturation_count};
            }));
        }
    }

    std::vector<SweepRow> rows;
    rows.reserve(futures.size());
    for (auto& f : futures) rows.push_back(f.get());

    {
        auto out = open_out(dir / "sweep.csv");
        write_preamble(out, preamble_lines(cfg));
        out << "r,trunc_radius,half_life_l2,final_energy,saturation_count\n";
        for (const SweepRow& row : rows) {
            out << fmt(row.r) << ',' << fmt(row.trunc) << ',' << fmt(row.half_life) << ','
                << fmt(row.final_energy) << ',' << row.saturation_count << "\n";
        }
    }
    json table = json::array();
    for (const SweepRow& row : rows) {
        table.push_back({{"r", row.r},
                         {"trunc_radius", row.trunc},
                         {"half_life_l2", row.half_life},
                         {"final_energy", row.final_energy},
                         {"saturation_count", row.saturation_count}});
    }
    write_summary(dir / "sweep.json", {{"config", cfg.to_json()}, {"table", table}});
    std::cout << "sweep: " << rows.size() << " runs (half-lives reported, not asserted)\n";
    return 0;
}

struct GapScan {
    double min_norm_gap = 0.0;  ///< min over pairs of gap / (1+|x|+|y|)^(power+2)
    double worst_x = 0.0;
    double worst_y = 0.0;
};

double vec_norm(const std::array<double, 3>& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

template <typename Sampler, typename Gap>
GapScan scan_gaps(long long samples, std::mt19937_64& rng, double power, Sampler sample, Gap gap) {
    GapScan scan;
    scan.min_norm_gap = std::numeric_limits<double>::infinity();
    for (long long i = 0; i < samples; ++i) {
        const std::array<double, 3> x = sample(rng);
        const std::array<double, 3> y = sample(rng);
        const double nx = vec_norm(x);
        const double ny = vec_norm(y);
        const double scale = std::pow(1.0 + nx + ny, power + 2.0);
        const double g = gap(x, y) / scale;
        if (g < scan.min_norm_gap) {
            scan.min_norm_gap = g;
            scan.worst_x = nx;
            scan.worst_y = ny;
        }
    }
    return scan;
}

int cmd_lemma_check(const Options& opt, long long samples, std::uint64_t seed) {
    std::vector<std::string> preamble;
    json config_json;
    std::string config_dir = ".";
    if (!opt.config_path.empty()) {
        const RunConfig cfg = parse_config_file(opt.config_path, opt.overrides);
        preamble = preamble_lines(cfg);
        config_json = cfg.to_json();
        config_dir = cfg.output.dir;
    }
    preamble.push_back("lemma.samples = " + std::to_string(samples));
    preamble.push_back("lemma.seed = " + std::to_string(seed));
    const fs::path dir = resolve_out_dir(opt, config_dir);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto gaussian_sample = [&gauss](std::mt19937_64& g) {
        return std::array<double, 3>{gauss(g), gauss(g), gauss(g)};
    };

    struct Row {
        std::string family;
        double p1 = 0.0;  ///< beta for power, r for exp
        double b = 0.0;   ///< 0 for power
        GapScan scan;
    };
    std::vector<Row> rows;

    for (double beta : {1.0, 2.0, 4.0}) {
        rows.push_back({"power", beta, 0.0,
                        scan_gaps(samples, rng, beta, gaussian_sample,
                                  [beta](const auto& x, const auto& y) {
                                      return power_monotonicity_gap(x, y, beta);
                                  })});
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double r : {1.0, 2.0, 4.0}) {
        for (double b : {0.5, 1.0, 2.0}) {
            const DampingParams p{1.0, b, r};
            // Sample inside the ball where b|x|^r <= 8 so the exponential stays
            // well-scaled and the direct gap evaluation is cancellation-safe.
            const double cap = std::pow(8.0 / b, 1.0 / r);
            auto ball_sample = [&gauss, &unit, cap](std::mt19937_64& g) {
                std::array<double, 3> v{gauss(g), gauss(g), gauss(g)};
                const double n = vec_norm(v);
                const double radius = cap * std::cbrt(unit(g));
                const double s = n > 0.0 ? radius / n : 0.0;
                return std::array<double, 3>{v[0] * s, v[1] * s, v[2] * s};
            };
            rows.push_back({"exp", r, b,
                            scan_gaps(samples, rng, r, ball_sample,
                                      [&p](const auto& x, const auto& y) {
                                          return exp_monotonicity_gap(x, y, p);
                                      })});
        }
    }

    bool pass = true;
    json table = json::array();
    {
        auto out = open_out(dir / "lemma.csv");
        write_preamble(out, preamble);
        out << "family,param,b,samples,min_norm_gap\n";
        for (const Row& row : rows) {
            pass = pass && row.scan.min_norm_gap >= -kLemmaGapTol;
            out << row.family << ',' << fmt(row.p1) << ',' << fmt(row.b) << ',' << samples << ','
                << fmt(row.scan.min_norm_gap) << "\n";
            table.push_back({{"family", row.family},
                             {"param", row.p1},
                             {"b", row.b},
                             {"min_norm_gap", row.scan.min_norm_gap},
                             {"worst_x_norm", row.scan.worst_x},
                             {"worst_y_norm", row.scan.worst_y}});
        }
    }
    json summary{{"samples", samples}, {"seed", seed},  {"gap_tol", kLemmaGapTol},
                 {"table", table},     {"pass", pass}};
    if (!config_json.is_null()) summary["config"] = config_json;
    write_summary(dir / "lemma.json", summary);

    double min_gap = std::numeric_limits<double>::infinity();
    for (const Row& row : rows) min_gap = std::min(min_gap, row.scan.min_norm_gap);
    std::cout << "lemma-check: " << rows.size() << " families x " << samples
              << " pairs, min normalized gap " << fmt(min_gap) << ", "
              << (pass ? "PASS" : "FAIL") << "\n";
    if (!pass) {
        emit_error("invariant", "monotonicity gap fell below -" + fmt(kLemmaGapTol),
                   {{"min_norm_gap", min_gap}});
        return 1;
    }
    return 0;
}

oracle::DenseModeSet combine(const oracle::DenseModeSet& a, double sa,
                             const oracle::DenseModeSet& b, double sb) {
    std::map<std::array<int, 3>, std::array<std::complex<double>, 3>> acc;
    auto add = [&acc](const oracle::DenseModeSet& s, double w) {
        for (const oracle::DenseMode& m : s.modes) {
            auto& slot = acc[m.index];
            for (int c = 0; c < 3; ++c) slot[c] += w * m.amplitude[c];
        }
    };
    add(a, sa);
    add(b, sb);
    oracle::DenseModeSet out;
    out.box_scale = a.box_scale;
    for (const auto& [index, amplitude] : acc) out.modes.push_back({index, amplitude});
    return out;
}

int cmd_oracle_compare(const Options& opt) {
    const RunConfig cfg = parse_config_file(opt.config_path, opt.overrides);
    const Grid grid = cfg.make_grid();
    SimParams params = cfg.make_sim_params();
    params.t_end = cfg.oracle.t_end;
    params.snapshot_every = 0;
    params.output_every = 1 << 20;
    const fs::path dir = resolve_out_dir(opt, cfg.output.dir);
    const double radius = grid.trunc_radius();
    const double cutoff = std::min(cfg.oracle.cutoff, radius);

    struct Row {
        int seed = 0;
        double transport_diff = 0.0;
        double rhs_diff = 0.0;
        double endpoint_diff = 0.0;
    };
    std::vector<Row> rows;
    bool pass = true;

    for (int seed = 1; seed <= cfg.oracle.seeds; ++seed) {
        const SpectralField u =
            init_random_divfree(grid, static_cast<std::uint64_t>(seed), cutoff, cfg.oracle.amplitude);
        const oracle::DenseModeSet m = oracle::from_spectral(u, 0.0);

        const oracle::DenseModeSet dense_t = oracle::dense_transport(m, radius);
        const double t_diff = oracle::relative_difference(
            oracle::from_spectral(transport_term(u), 0.0), dense_t);

        const oracle::DenseModeSet dense_d = oracle::oversampled_damping(
            m, params.damping, params.clip, grid.n_points(), cfg.oracle.oversample, radius);
        const double rhs_diff = oracle::relative_difference(
            oracle::from_spectral(rhs_nonlinear(u, params), 0.0), combine(dense_t, -1.0, dense_d, -1.0));

        const SpectralField endpoint = run(u, params).final_state.field;
        const oracle::DenseModeSet reference = oracle::explicit_reference_run(
            m, params, params.dt / 16.0, grid.n_points(), radius);
        const double e_diff =
            oracle::relative_difference(oracle::from_spectral(endpoint, 0.0), reference);

        rows.push_back({seed, t_diff, rhs_diff, e_diff});
        pass = pass && t_diff <= kTransportOracleTol && rhs_diff <= kRhsOracleTol &&
               e_diff <= kEndpointOracleTol;
    }

    json table = json::array();
    {
        auto out = open_out(dir / "oracle.csv");
        write_preamble(out, preamble_lines(cfg));
        out << "seed,transport_diff,rhs_diff,endpoint_diff\n";
        for (const Row& row : rows) {
            out << row.seed << ',' << fmt(row.transport_diff) << ',' << fmt(row.rhs_diff) << ','
                << fmt(row.endpoint_diff) << "\n";
            table.push_back({{"seed", row.seed},
                             {"transport_diff", row.transport_diff},
                             {"rhs_diff", row.rhs_diff},
                             {"endpoint_diff", row.endpoint_diff}});
        }
    }
    write_summary(dir / "oracle.json", {{"config", cfg.to_json()},
                                        {"transport_tol", kTransportOracleTol},
                                        {"rhs_tol", kRhsOracleTol},
                                        {"endpoint_tol", kEndpointOracleTol},
                                        {"table", table},
                                        {"pass", pass}});
    std::cout << "oracle-compare: " << rows.size() << " seeds, " << (pass ? "PASS" : "FAIL")
              << "\n";
    if (!pass) {
        emit_error("invariant", "production kernels diverged from the dense reference");
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dampflow: spectral Navier-Stokes with exponential damping"};
    app.require_subcommand(1);

    Options opt;
    std::string ledger_path;
    double tol = 1e-4;
    long long samples = 1000000;
    std::uint64_t seed = 42;

    auto add_common = [&opt](CLI::App* sub, bool config_required) {
        auto* config = sub->add_option("--config", opt.config_path, "config file path");
        if (config_required) config->required();
        sub->add_option("--override", opt.overrides, "key=value applied after the file (repeatable)");
        sub->add_option("--out", opt.out_dir, "output directory (default: output.dir from config)");
    };

    CLI::App* simulate = app.add_subcommand(
        "simulate", "integrate the configured run; write ledger.csv, snapshots, summary.json");
    add_common(simulate, true);

    CLI::App* verify = app.add_subcommand(
        "verify-energy", "check a ledger CSV against the discrete energy inequality");
    verify->add_option("--ledger", ledger_path, "ledger CSV path")->required();
    verify->add_option("--tol", tol, "residual tolerance relative to E(0)")->capture_default_str();

    CLI::App* stability = app.add_subcommand(
        "stability", "paired-trajectory separation vs the exponential bound; write stability.csv");
    add_common(stability, true);

    CLI::App* decay = app.add_subcommand(
        "decay", "snapshot run with frequency-split decay observables; write decay.csv");
    add_common(decay, true);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "half-life table over damping exponents and truncation radii; write sweep.csv");
    add_common(sweep, true);

    CLI::App* lemma = app.add_subcommand(
        "lemma-check", "random-pair monotonicity gap scan for the damping inequalities");
    lemma->add_option("--samples", samples, "pairs per parameter set")->capture_default_str();
    lemma->add_option("--seed", seed, "RNG seed")->capture_default_str();
    add_common(lemma, false);

    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle-compare", "production kernels vs the dense reference; write oracle.csv");
    add_common(oracle_cmd, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        emit_error("usage", e.what());
        return 2;
    }

    try {
        if (app.got_subcommand(simulate)) return cmd_simulate(opt);
        if (app.got_subcommand(verify)) return cmd_verify_energy(ledger_path, tol);
        if (app.got_subcommand(stability)) return cmd_stability(opt);
        if (app.got_subcommand(decay)) return cmd_decay(opt);
        if (app.got_subcommand(sweep)) return cmd_sweep(opt);
        if (app.got_subcommand(lemma)) return cmd_lemma_check(opt, samples, seed);
        if (app.got_subcommand(oracle_cmd)) return cmd_oracle_compare(opt);
    } catch (const ConfigError& e) {
        emit_error("config", e.what(), {{"line", e.line()}});
        return 2;
    } catch (const OverflowRisk& e) {
        emit_error("overflow_risk", e.what(), {{"flat_index", e.flat_index()}, {"speed", e.speed()}});
        return 1;
    } catch (const NonFiniteState& e) {
        emit_error("non_finite_state", e.what(), {{"time", e.time()}});
        return 1;
    } catch (const std::exception& e) {
        emit_error("runtime", e.what());
        return 1;
    }
    return 2;
}
