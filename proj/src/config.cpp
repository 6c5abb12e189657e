#include "dampflow/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "dampflow/errors.hpp"

namespace dampflow {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ", ";
        out += format_double(values[i]);
    }
    return out;
}

double parse_double_value(const std::string& value, int line) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(line, "expected a number, got '" + value + "'");
    }
    return out;
}

long long parse_int_value(const std::string& value, int line) {
    long long out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(line, "expected an integer, got '" + value + "'");
    }
    return out;
}

std::uint64_t parse_uint_value(const std::string& value, int line) {
    std::uint64_t out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(line, "expected a nonnegative integer, got '" + value + "'");
    }
    return out;
}

std::string parse_string_value(const std::string& value) {
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
        return value.substr(1, value.size() - 2);
    }
    return value;
}

std::vector<double> parse_list_value(const std::string& value, int line) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const std::size_t comma = value.find(',', start);
        const std::string token = trim(value.substr(start, comma - start));
        if (!token.empty()) out.push_back(parse_double_value(token, line));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

class Binder {
  public:
    explicit Binder(RunConfig& cfg) : cfg_(cfg) {
        bind_int("grid.n_points", cfg_.grid.n_points);
        bind_double("grid.box_scale", cfg_.grid.box_scale);
        bind_double("grid.trunc_radius", cfg_.grid.trunc_radius);
        bind_double("sim.nu", cfg_.sim.nu);
        bind_double("sim.dt", cfg_.sim.dt);
        bind_double("sim.t_end", cfg_.sim.t_end);
        bind_int("sim.output_every", cfg_.sim.output_every);
        bind_int("sim.scheme_order", cfg_.sim.scheme_order);
        bind_double("damping.a", cfg_.damping.a);
        bind_double("damping.b", cfg_.damping.b);
        bind_double("damping.r", cfg_.damping.r);
        bind_double("damping.v_max", cfg_.damping.v_max);
        bind_string("damping.clip_mode", cfg_.damping.clip_mode);
        bind_string("init.type", cfg_.init.type);
        bind_double("init.amplitude", cfg_.init.amplitude);
        bind_uint("init.seed", cfg_.init.seed);
        bind_double("init.cutoff", cfg_.init.cutoff);
        bind_string("init.snapshot_path", cfg_.init.snapshot_path);
        bind_string("output.dir", cfg_.output.dir);
        bind_int("output.snapshot_every", cfg_.output.snapshot_every);
        bind_double("stability.delta_scale", cfg_.stability.delta_scale);
        bind_string("stability.delta_mode", cfg_.stability.delta_mode);
        bind_uint("stability.delta_seed", cfg_.stability.delta_seed);
        bind_double("decay.kappa", cfg_.decay.kappa);
        bind_list("sweep.r_list", cfg_.sweep.r_list);
        bind_list("sweep.trunc_list", cfg_.sweep.trunc_list);
        bind_int("oracle.seeds", cfg_.oracle.seeds);
        bind_double("oracle.t_end", cfg_.oracle.t_end);
        bind_int("oracle.oversample", cfg_.oracle.oversample);
        bind_double("oracle.amplitude", cfg_.oracle.amplitude);
        bind_double("oracle.cutoff", cfg_.oracle.cutoff);
        bind_double("verify.tol", cfg_.verify.tol);
    }

    void apply(const std::string& key, const std::string& value, int line) {
        auto it = setters_.find(key);
        if (it == setters_.end()) throw ConfigError(line, "unknown key '" + key + "'");
        it->second(value, line);
        lines_[key] = line;
    }

    /// Line that last set `key`, or 0 if it kept its default.
    int line_of(const std::string& key) const {
        auto it = lines_.find(key);
        return it == lines_.end() ? 0 : it->second;
    }

  private:
    void bind_double(const std::string& key, double& slot) {
        setters_[key] = [&slot](const std::string& v, int line) {
            slot = parse_double_value(v, line);
        };
    }
    void bind_int(const std::string& key, int& slot) {
        setters_[key] = [&slot, key](const std::string& v, int line) {
            const long long value = parse_int_value(v, line);
            if (value < INT32_MIN || value > INT32_MAX) {
                throw ConfigError(line, key + " out of range");
            }
            slot = static_cast<int>(value);
        };
    }
    void bind_uint(const std::string& key, std::uint64_t& slot) {
        setters_[key] = [&slot](const std::string& v, int line) {
            slot = parse_uint_value(v, line);
        };
    }
    void bind_string(const std::string& key, std::string& slot) {
        setters_[key] = [&slot](const std::string& v, int) { slot = parse_string_value(v); };
    }
    void bind_list(const std::string& key, std::vector<double>& slot) {
        setters_[key] = [&slot](const std::string& v, int line) {
            slot = parse_list_value(v, line);
        };
    }

    RunConfig& cfg_;
    std::map<std::string, std::function<void(const std::string&, int)>> setters_;
    std::map<std::string, int> lines_;
};

void apply_line(Binder& binder, const std::string& raw, int line) {
    std::string text = raw;
    if (const auto hash = text.find('#'); hash != std::string::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) return;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw ConfigError(line, "expected 'section.key = value', got '" + trim(raw) + "'");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "missing key before '='");
    if (value.empty()) throw ConfigError(line, "missing value for '" + key + "'");
    binder.apply(key, value, line);
}

void check(bool ok, const Binder& binder, const std::string& key, const std::string& message) {
    if (!ok) throw ConfigError(binder.line_of(key), key + ": " + message);
}

void validate_config(const RunConfig& cfg, const Binder& binder) {
    check(cfg.grid.n_points >= 8 && cfg.grid.n_points % 2 == 0, binder, "grid.n_points",
          "must be even and at least 8");
    check(cfg.grid.box_scale > 0.0, binder, "grid.box_scale", "must be > 0");
    const double max_radius = max_trunc_radius(cfg.grid.n_points, cfg.grid.box_scale);
    check(cfg.grid.trunc_radius >= 0.0 && cfg.grid.trunc_radius <= max_radius * (1.0 + 1e-12),
          binder, "grid.trunc_radius", "must lie in [0, (n/3)/L]");

    check(cfg.sim.nu > 0.0, binder, "sim.nu", "must be > 0");
    check(cfg.sim.dt > 0.0, binder, "sim.dt", "must be > 0");
    check(cfg.sim.t_end >= 0.0, binder, "sim.t_end", "must be >= 0");
    check(cfg.sim.output_every >= 1, binder, "sim.output_every", "must be >= 1");
    check(cfg.sim.scheme_order == 2 || cfg.sim.scheme_order == 4, binder, "sim.scheme_order",
          "must be 2 or 4");

    check(cfg.damping.a >= 0.0, binder, "damping.a", "must be >= 0");
    check(cfg.damping.b > 0.0, binder, "damping.b", "must be > 0");
    check(cfg.damping.r >= 1.0, binder, "damping.r", "must be >= 1");
    check(cfg.damping.v_max >= 0.0, binder, "damping.v_max", "must be >= 0");
    check(cfg.damping.clip_mode == "saturate" || cfg.damping.clip_mode == "error", binder,
          "damping.clip_mode", "must be 'saturate' or 'error'");

    check(cfg.init.type == "taylor_green" || cfg.init.type == "random" ||
              cfg.init.type == "snapshot",
          binder, "init.type", "must be 'taylor_green', 'random' or 'snapshot'");
    check(cfg.init.amplitude > 0.0, binder, "init.amplitude", "must be > 0");
    check(cfg.init.cutoff >= 0.0, binder, "init.cutoff", "must be >= 0");
    check(cfg.init.type != "snapshot" || !cfg.init.snapshot_path.empty(), binder,
          "init.snapshot_path", "required when init.type = snapshot");

    check(cfg.output.snapshot_every >= 0, binder, "output.snapshot_every", "must be >= 0");

    check(cfg.stability.delta_scale >= 0.0, binder, "stability.delta_scale", "must be >= 0");
    check(cfg.stability.delta_mode == "scaled" || cfg.stability.delta_mode == "random", binder,
          "stability.delta_mode", "must be 'scaled' or 'random'");

    check(cfg.decay.kappa > 0.0, binder, "decay.kappa", "must be > 0");

    check(!cfg.sweep.r_list.empty(), binder, "sweep.r_list", "must not be empty");
    for (double r : cfg.sweep.r_list) {
        check(r >= 1.0, binder, "sweep.r_list", "entries must be >= 1");
    }
    for (double radius : cfg.sweep.trunc_list) {
        check(radius > 0.0 && radius <= max_radius * (1.0 + 1e-12), binder, "sweep.trunc_list",
              "entries must lie in (0, (n/3)/L]");
    }

    check(cfg.oracle.seeds >= 1, binder, "oracle.seeds", "must be >= 1");
    check(cfg.oracle.t_end > 0.0, binder, "oracle.t_end", "must be > 0");
    check(cfg.oracle.oversample == 2 || cfg.oracle.oversample == 4 || cfg.oracle.oversample == 8,
          binder, "oracle.oversample", "must be 2, 4 or 8");
    check(cfg.oracle.amplitude > 0.0, binder, "oracle.amplitude", "must be > 0");
    check(cfg.oracle.cutoff > 0.0, binder, "oracle.cutoff", "must be > 0");

    check(cfg.verify.tol > 0.0, binder, "verify.tol", "must be > 0");
}

}  // namespace

Grid RunConfig::make_grid() const {
    const double radius = grid.trunc_radius > 0.0
                              ? grid.trunc_radius
                              : max_trunc_radius(grid.n_points, grid.box_scale);
    return dampflow::make_grid(grid.n_points, grid.box_scale, radius);
}

SimParams RunConfig::make_sim_params() const {
    SimParams p;
    p.nu = sim.nu;
    p.damping = DampingParams{damping.a, damping.b, damping.r};
    p.clip = ClipPolicy::saturate_for(p.damping);
    if (damping.v_max > 0.0) p.clip.v_max = damping.v_max;
    p.clip.mode = damping.clip_mode == "error" ? ClipPolicy::Mode::error : ClipPolicy::Mode::saturate;
    p.dt = sim.dt;
    p.t_end = sim.t_end;
    p.output_every = sim.output_every;
    p.scheme_order = sim.scheme_order;
    p.snapshot_every = output.snapshot_every;
    return p;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    const Grid effective_grid = make_grid();
    const SimParams effective_sim = make_sim_params();
    const double cutoff = init.cutoff > 0.0 ? init.cutoff : effective_grid.trunc_radius();

    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("grid.n_points", std::to_string(grid.n_points));
    out.emplace_back("grid.box_scale", format_double(grid.box_scale));
    out.emplace_back("grid.trunc_radius", format_double(effective_grid.trunc_radius()));
    out.emplace_back("sim.nu", format_double(sim.nu));
    out.emplace_back("sim.dt", format_double(sim.dt));
    out.emplace_back("sim.t_end", format_double(sim.t_end));
    out.emplace_back("sim.output_every", std::to_string(sim.output_every));
    out.emplace_back("sim.scheme_order", std::to_string(sim.scheme_order));
    out.emplace_back("damping.a", format_double(damping.a));
    out.emplace_back("damping.b", format_double(damping.b));
    out.emplace_back("damping.r", format_double(damping.r));
    out.emplace_back("damping.v_max", format_double(effective_sim.clip.v_max));
    out.emplace_back("damping.clip_mode", damping.clip_mode);
    out.emplace_back("init.type", init.type);
    out.emplace_back("init.amplitude", format_double(init.amplitude));
    out.emplace_back("init.seed", std::to_string(init.seed));
    out.emplace_back("init.cutoff", format_double(cutoff));
    if (!init.snapshot_path.empty()) out.emplace_back("init.snapshot_path", init.snapshot_path);
    out.emplace_back("output.dir", output.dir);
    out.emplace_back("output.snapshot_every", std::to_string(output.snapshot_every));
    out.emplace_back("stability.delta_scale", format_double(stability.delta_scale));
    out.emplace_back("stability.delta_mode", stability.delta_mode);
    out.emplace_back("stability.delta_seed", std::to_string(stability.delta_seed));
    out.emplace_back("decay.kappa", format_double(decay.kappa));
    out.emplace_back("sweep.r_list", format_list(sweep.r_list));
    if (!sweep.trunc_list.empty()) out.emplace_back("sweep.trunc_list", format_list(sweep.trunc_list));
    out.emplace_back("oracle.seeds", std::to_string(oracle.seeds));
    out.emplace_back("oracle.t_end", format_double(oracle.t_end));
    out.emplace_back("oracle.oversample", std::to_string(oracle.oversample));
    out.emplace_back("oracle.amplitude", format_double(oracle.amplitude));
    out.emplace_back("oracle.cutoff", format_double(oracle.cutoff));
    out.emplace_back("verify.tol", format_double(verify.tol));
    return out;
}

nlohmann::json RunConfig::to_json() const {
    const Grid effective_grid = make_grid();
    const SimParams effective_sim = make_sim_params();
    const double cutoff = init.cutoff > 0.0 ? init.cutoff : effective_grid.trunc_radius();
    nlohmann::json j;
    j["grid"] = {{"n_points", grid.n_points},
                 {"box_scale", grid.box_scale},
                 {"trunc_radius", effective_grid.trunc_radius()}};
    j["sim"] = {{"nu", sim.nu},
                {"dt", sim.dt},
                {"t_end", sim.t_end},
                {"output_every", sim.output_every},
                {"scheme_order", sim.scheme_order}};
    j["damping"] = {{"a", damping.a},
                    {"b", damping.b},
                    {"r", damping.r},
                    {"v_max", effective_sim.clip.v_max},
                    {"clip_mode", damping.clip_mode}};
    j["init"] = {{"type", init.type},
                 {"amplitude", init.amplitude},
                 {"seed", init.seed},
                 {"cutoff", cutoff},
                 {"snapshot_path", init.snapshot_path}};
    j["output"] = {{"dir", output.dir}, {"snapshot_every", output.snapshot_every}};
    j["stability"] = {{"delta_scale", stability.delta_scale},
                      {"delta_mode", stability.delta_mode},
                      {"delta_seed", stability.delta_seed}};
    j["decay"] = {{"kappa", decay.kappa}};
    j["sweep"] = {{"r_list", sweep.r_list}, {"trunc_list", sweep.trunc_list}};
    j["oracle"] = {{"seeds", oracle.seeds},
                   {"t_end", oracle.t_end},
                   {"oversample", oracle.oversample},
                   {"amplitude", oracle.amplitude},
                   {"cutoff", oracle.cutoff}};
    j["verify"] = {{"tol", verify.tol}};
    return j;
}

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
    RunConfig cfg;
    Binder binder(cfg);
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        apply_line(binder, line, line_no);
    }
    for (const std::string& override_text : overrides) {
        apply_line(binder, override_text, 0);
    }
    validate_config(cfg, binder);
    return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path,
                            const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), overrides);
}

}  // namespace dampflow
