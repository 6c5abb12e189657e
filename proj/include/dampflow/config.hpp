#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dampflow/grid.hpp"
#include "dampflow/integrator.hpp"

namespace dampflow {

/// Validated run configuration. Parsed from a flat `section.key = value`
/// document (grammar in docs/file-formats.md); every module-level
/// precondition is checked at parse time and unknown keys are rejected with
/// the offending line number.
struct RunConfig {
    struct GridBlock {
        int n_points = 32;
        double box_scale = 1.0;
        double trunc_radius = 0.0;  ///< 0 means "use the dealiasing-safe maximum (n/3)/L"
    } grid;

    struct SimBlock {
        double nu = 1.0;
        double dt = 1e-3;
        double t_end = 1.0;
        int output_every = 10;
        int scheme_order = 2;
    } sim;

    struct DampingBlock {
        double a = 1.0;
        double b = 1.0;
        double r = 4.0;
        double v_max = 0.0;  ///< 0 means "derive from b, r via the overflow cap"
        std::string clip_mode = "saturate";
    } damping;

    struct InitBlock {
        std::string type = "taylor_green";  ///< taylor_green | random | snapshot
        double amplitude = 1.0;
        std::uint64_t seed = 1;
        double cutoff = 0.0;  ///< 0 means "use trunc_radius"
        std::string snapshot_path;
    } init;

    struct OutputBlock {
        std::string dir = ".";
        int snapshot_every = 0;
    } output;

    struct StabilityBlock {
        double delta_scale = 1e-3;
        std::string delta_mode = "scaled";  ///< scaled | random
        std::uint64_t delta_seed = 2;
    } stability;

    struct DecayBlock {
        double kappa = 1.0;
    } decay;

    struct SweepBlock {
        std::vector<double> r_list = {1.0, 2.0, 7.0 / 3.0, 3.0, 4.0};
        std::vector<double> trunc_list;  ///< empty means "just grid.trunc_radius"
    } sweep;

    struct OracleBlock {
        int seeds = 10;
        double t_end = 0.1;
        int oversample = 4;
        double amplitude = 0.2;
        double cutoff = 1.0;
    } oracle;

    struct VerifyBlock {
        double tol = 1e-4;
    } verify;

    /// Effective grid (trunc_radius default resolved).
    Grid make_grid() const;
    /// Effective solver parameters (v_max/clip defaults resolved).
    SimParams make_sim_params() const;

    /// Every key with its effective value, in documented order; the defaults
    /// are always present so artifacts are self-describing.
    std::vector<std::pair<std::string, std::string>> echo() const;
    nlohmann::json to_json() const;
};

/// Parse a config document plus `key=value` override strings (applied after
/// the file, validated identically; their ConfigError line number is 0).
/// Throws ConfigError with a line anchor on any parse or validation failure.
RunConfig parse_config(const std::string& text,
                       const std::vector<std::string>& overrides = {});
RunConfig parse_config_file(const std::filesystem::path& path,
                            const std::vector<std::string>& overrides = {});

}  // namespace dampflow
