#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g_cli;
fs::path g_work;

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_file = g_work / ("stdout_" + std::to_string(counter));
    const fs::path err_file = g_work / ("stderr_" + std::to_string(counter));
    ++counter;
    const std::string cmd = g_cli + " " + args + " > " + out_file.string() + " 2> " + err_file.string();
    const int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
}

json error_json(const CliResult& r) {
    return json::parse(r.err).at("error");
}

fs::path write_base_config(const std::string& name) {
    const fs::path file = g_work / name;
    spit(file,
         "grid.n_points = 8\n"
         "sim.dt = 5e-3\n"
         "sim.t_end = 0.05\n"
         "sim.output_every = 2\n"
         "init.type = random\n"
         "init.amplitude = 0.5\n"
         "init.cutoff = 1.5\n");
    return file;
}

}  // namespace

TEST_CASE("usage errors exit 2 with machine-readable JSON") {
    CHECK(run_cli("--help").exit_code == 0);

    const CliResult bare = run_cli("");
    CHECK(bare.exit_code == 2);
    CHECK(error_json(bare).at("type") == "usage");

    const CliResult missing = run_cli("simulate");
    CHECK(missing.exit_code == 2);
    CHECK(error_json(missing).at("type") == "usage");
}

TEST_CASE("config errors exit 2 and carry the offending line") {
    const fs::path file = g_work / "broken.cfg";
    spit(file, "grid.n_points = 8\nsim.step = 1\n");
    const CliResult unknown = run_cli("simulate --config " + file.string());
    CHECK(unknown.exit_code == 2);
    CHECK(error_json(unknown).at("type") == "config");
    CHECK(error_json(unknown).at("line") == 2);

    const fs::path ok = write_base_config("ok.cfg");
    const CliResult override_err =
        run_cli("simulate --config " + ok.string() + " --override sim.dt=-1");
    CHECK(override_err.exit_code == 2);
    CHECK(error_json(override_err).at("line") == 0);
}

TEST_CASE("simulate writes self-describing artifacts and verifies the ledger") {
    const fs::path cfg = write_base_config("run.cfg");
    const fs::path out = g_work / "sim_out";
    const CliResult r = run_cli("simulate --config " + cfg.string() + " --out " + out.string());
    CHECK(r.exit_code == 0);

    const std::string ledger = slurp(out / "ledger.csv");
    CHECK(ledger.find("# grid.n_points = 8") != std::string::npos);
    CHECK(ledger.find("t,energy,visc_cum,damp_cum,residual,saturation_count") != std::string::npos);

    const json summary = json::parse(slurp(out / "summary.json"));
    CHECK(summary.at("verify").at("pass") == true);
    CHECK(summary.at("config").at("grid").at("n_points") == 8);
    CHECK(summary.at("rows") == 6);
}

TEST_CASE("identical config and seed give identical artifacts") {
    const fs::path cfg = write_base_config("det.cfg");
    const fs::path out1 = g_work / "det1";
    const fs::path out2 = g_work / "det2";
    CHECK(run_cli("simulate --config " + cfg.string() + " --out " + out1.string()).exit_code == 0);
    CHECK(run_cli("simulate --config " + cfg.string() + " --out " + out2.string()).exit_code == 0);
    CHECK(slurp(out1 / "ledger.csv") == slurp(out2 / "ledger.csv"));
}

TEST_CASE("snapshots can seed a follow-up run") {
    const fs::path cfg = write_base_config("resume.cfg");
    const fs::path out = g_work / "resume1";
    CHECK(run_cli("simulate --config " + cfg.string() + " --override output.snapshot_every=5 --out " +
                  out.string())
              .exit_code == 0);
    const fs::path snap = out / "snapshot_000001.snap";
    REQUIRE(fs::exists(snap));

    const fs::path out2 = g_work / "resume2";
    const CliResult r = run_cli("simulate --config " + cfg.string() +
                                " --override init.type=snapshot --override init.snapshot_path=" +
                                snap.string() + " --out " + out2.string());
    CHECK(r.exit_code == 0);
}

TEST_CASE("verify-energy accepts the produced ledger and rejects a corrupted one") {
    const fs::path cfg = write_base_config("verify.cfg");
    const fs::path out = g_work / "verify_out";
    REQUIRE(run_cli("simulate --config " + cfg.string() + " --out " + out.string()).exit_code == 0);

    const CliResult good = run_cli("verify-energy --ledger " + (out / "ledger.csv").string());
    CHECK(good.exit_code == 0);
    CHECK(json::parse(good.out).at("pass") == true);

    const fs::path bad = g_work / "corrupt.csv";
    spit(bad,
         "t,energy,visc_cum,damp_cum,residual,saturation_count\n"
         "0,1.0,0,0,0,0\n"
         "0.1,1.5,0,0,-0.5,0\n");
    const CliResult corrupt = run_cli("verify-energy --ledger " + bad.string());
    CHECK(corrupt.exit_code == 1);
    CHECK(error_json(corrupt).at("type") == "invariant");
}

TEST_CASE("stability emits its table and passes on a perturbed pair") {
    const fs::path cfg = write_base_config("stab.cfg");
    const fs::path out = g_work / "stab_out";
    const CliResult r = run_cli("stability --config " + cfg.string() + " --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(slurp(out / "stability.csv").find("t,w_norm_sq,bound,margin") != std::string::npos);
    CHECK(json::parse(slurp(out / "stability.json")).at("pass") == true);
}

TEST_CASE("decay requires a snapshot cadence and emits observables") {
    const fs::path cfg = write_base_config("decay.cfg");
    const CliResult no_snaps = run_cli("decay --config " + cfg.string());
    CHECK(no_snaps.exit_code == 2);

    const fs::path out = g_work / "decay_out";
    const CliResult r = run_cli("decay --config " + cfg.string() +
                                " --override output.snapshot_every=4 --override decay.kappa=1.5 --out " +
                                out.string());
    CHECK(r.exit_code == 0);
    CHECK(slurp(out / "decay.csv").find("t,l2,h_neg2,w1_l2,w2_l2") != std::string::npos);
    CHECK(fs::exists(out / "snapshot_000000.snap"));
    CHECK(json::parse(slurp(out / "decay.json")).at("pass") == true);
}

TEST_CASE("sweep reports a half-life row per parameter combination") {
    const fs::path cfg = write_base_config("sweep.cfg");
    const fs::path out = g_work / "sweep_out";
    const CliResult r = run_cli("sweep --config " + cfg.string() +
                                " \"--override=sweep.r_list = 1, 4\" --override sim.t_end=0.1 --out " +
                                out.string());
    CHECK(r.exit_code == 0);
    const json table = json::parse(slurp(out / "sweep.json")).at("table");
    CHECK(table.size() == 2);
    CHECK(table[0].at("r") == 1.0);
    CHECK(table[1].at("r") == 4.0);
}

TEST_CASE("lemma-check scans the inequality matrix") {
    const fs::path out = g_work / "lemma_out";
    const CliResult r = run_cli("lemma-check --samples 2000 --seed 7 --out " + out.string());
    CHECK(r.exit_code == 0);
    const json summary = json::parse(slurp(out / "lemma.json"));
    CHECK(summary.at("pass") == true);
    CHECK(summary.at("table").size() == 12);
    for (const json& row : summary.at("table")) {
        CHECK(row.at("min_norm_gap").get<double>() >= -1e-12);
    }
}

TEST_CASE("oracle-compare matches the dense reference on tiny instances") {
    const fs::path cfg = write_base_config("oracle.cfg");
    const fs::path out = g_work / "oracle_out";
    const CliResult r = run_cli("oracle-compare --config " + cfg.string() +
                                " --override oracle.seeds=2 --override oracle.t_end=0.02 --out " +
                                out.string());
    CHECK(r.exit_code == 0);
    const json summary = json::parse(slurp(out / "oracle.json"));
    CHECK(summary.at("pass") == true);
    CHECK(summary.at("table").size() == 2);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_contract <path-to-dampflow-cli> [doctest args]\n");
        return 2;
    }
    g_cli = argv[1];
    if (!fs::exists(g_cli)) {
        std::fprintf(stderr, "cli binary not found: %s\n", g_cli.c_str());
        return 2;
    }
    g_work = fs::temp_directory_path() / ("dampflow-cli-" + std::to_string(::getpid()));
    fs::create_directories(g_work);

    doctest::Context context;
    context.applyCommandLine(argc - 1, argv + 1);
    const int rc = context.run();
    fs::remove_all(g_work);
    return rc;
}
