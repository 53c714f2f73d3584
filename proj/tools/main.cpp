#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "sojourn/config.hpp"
#include "sojourn/report.hpp"
#include "sojourn/verify_suite.hpp"

namespace {

namespace fs = std::filesystem;
using namespace sojourn;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitLocallyClosed = 2;
constexpr int kExitExhausted = 3;
constexpr int kExitVerifyFailed = 4;

struct CommonOpts {
    std::string config_path;
    std::optional<int> n_max, m_max, tail_start;
    std::optional<double> window;
    std::string out_dir = ".";
    std::uint64_t seed = 20240915;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("config", opts.config_path, "scenario config file")->required();
    cmd->add_option("--n-max", opts.n_max, "orbit index range override");
    cmd->add_option("--m-max", opts.m_max, "box family depth override");
    cmd->add_option("--tail-start", opts.tail_start, "tail estimation start override");
    cmd->add_option("--window", opts.window, "symmetric window half-length override");
    cmd->add_option("--out", opts.out_dir, "output directory for data files");
    cmd->add_option("--seed", opts.seed, "seed for oracle probe boxes");
}

Config load(const CommonOpts& opts) {
    Config cfg = load_config(opts.config_path);
    if (opts.n_max) cfg.n_max = *opts.n_max;
    if (opts.m_max) cfg.m_max = *opts.m_max;
    if (opts.tail_start) cfg.tail_start = *opts.tail_start;
    if (opts.window) cfg.window = *opts.window;
    return cfg;
}

std::string out_path(const CommonOpts& opts, const std::string& name) {
    fs::create_directories(opts.out_dir);
    return (fs::path(opts.out_dir) / name).string();
}

void print_growth_diagnostics(const Scenario& sc, const Config& cfg) {
    double T = cfg.window.value_or(1000.0);
    std::vector<double> horizons = {T / 8, T / 4, T / 2, T};
    auto rows = relative_compactness_probe(sc.z, sc.box_at, std::min(cfg.m_max, 4), horizons,
                                           sc.torus);
    fmt::print("windowed z-sojourn growth (m, horizon, measure):\n");
    for (const auto& row : rows)
        for (std::size_t i = 0; i < horizons.size(); ++i)
            fmt::print("  {}  {}  {}\n", row.m, fmt_num(horizons[i]),
                       fmt_num(row.measures[i]));
    for (const auto& row : rows)
        fmt::print("m={}: {} (growth slope {})\n", row.m,
                   row.bounded ? "bounded" : "unbounded growth", fmt_num(row.growth_slope));
}

int cmd_analyze(const CommonOpts& opts) {
    Config cfg = load(opts);
    Scenario sc = build_scenario(cfg);
    try {
        MultiplicityReport rep = multiplicity_report(sc, analysis_params(cfg));
        std::string report = render_report(sc.name, rep);
        fmt::print("{}", report);
        write_file(out_path(opts, "ratios.csv"), ratios_csv(rep.table));
        write_file(out_path(opts, "report.txt"), report);
        return kExitOk;
    } catch (const LocallyClosedViolation& e) {
        fmt::print("locally-closed violation: z-sojourn set unbounded for box m={}\n", e.m);
        print_growth_diagnostics(sc, cfg);
        return kExitLocallyClosed;
    }
}

int cmd_witness(const CommonOpts& opts, int k, bool subsequence,
                const std::string& load_path) {
    Config cfg = load(opts);
    Scenario sc = build_scenario(cfg);

    Witness w;
    if (!load_path.empty()) {
        w = parse_witness_csv(read_file(load_path));
        w.self = sc.windowed;
    } else {
        try {
            if (sc.windowed) {
                double T = cfg.window.value_or(1e5);
                w = self_convergence_witness(sc, k, {T / 1000, T / 100, T / 10, T});
            } else {
                w = construct_witness(sc, k, cfg.n_max, cfg.m_max, subsequence);
            }
        } catch (const WitnessExhausted& e) {
            fmt::print("witness exhausted: only {} picks at n={}\n", e.picks, e.n);
            return kExitExhausted;
        } catch (const HorizonTooSmall& e) {
            fmt::print("horizon too small for box m={}\n", e.m);
            return kExitExhausted;
        }
        write_file(out_path(opts, "witness.csv"), witness_csv(w));
    }

    WitnessVerdict v = verify_witness(sc, w);
    if (!v.pass) {
        fmt::print("witness verification failed: {}\n", v.message);
        return kExitVerifyFailed;
    }
    fmt::print("witness verified: k={}, {} entries, final box m={}\n", w.k, w.entries.size(),
               w.entries.back().m);
    return kExitOk;
}

int cmd_verify(const CommonOpts& opts) {
    Config cfg = load(opts);
    Scenario sc = build_scenario(cfg);
    auto items = run_verify_suite(sc, analysis_params(cfg), opts.seed);
    bool all = true;
    for (const SuiteItem& item : items) {
        fmt::print("[{}] {}{}\n", item.pass ? "pass" : "FAIL", item.name,
                   item.detail.empty() ? "" : fmt::format(": {}", item.detail));
        all = all && item.pass;
    }
    return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sojourn-measure analysis of orbit convergence strength"};
    app.require_subcommand(1);

    CommonOpts analyze_opts, witness_opts, verify_opts;
    int k = 1;
    bool subsequence = false;
    std::string load_path;

    CLI::App* analyze = app.add_subcommand("analyze", "ratio table and multiplicities");
    add_common(analyze, analyze_opts);

    CLI::App* witness = app.add_subcommand("witness", "construct and verify a witness");
    add_common(witness, witness_opts);
    witness->add_option("--k", k, "number of translate sequences")->required();
    witness->add_flag("--subsequence", subsequence, "allow passing to a subsequence");
    witness->add_option("--load", load_path, "re-verify a previously saved witness.csv");

    CLI::App* verify = app.add_subcommand("verify", "run the invariant cross-check suite");
    add_common(verify, verify_opts);

    try {
        app.parse(argc, argv);
        if (analyze->parsed()) return cmd_analyze(analyze_opts);
        if (witness->parsed()) return cmd_witness(witness_opts, k, subsequence, load_path);
        return cmd_verify(verify_opts);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    } catch (const ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitConfig;
    }
}
