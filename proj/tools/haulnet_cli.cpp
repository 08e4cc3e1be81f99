// Command-line front end: evaluate one algorithm, run a full comparison
// study, simulate, or regenerate the bundled reference tables.
#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "haulnet/errors.hpp"
#include "haulnet/flow.hpp"
#include "haulnet/pfa.hpp"
#include "haulnet/sim.hpp"
#include "haulnet/stst.hpp"
#include "haulnet/study.hpp"

namespace {

using namespace haulnet;

constexpr int kExitConfig = 2;
constexpr int kExitNonconvergence = 3;
constexpr int kExitIo = 4;

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::Nonconvergence:
        case ErrorCode::NoBracket:
            return kExitNonconvergence;
        case ErrorCode::IoError:
            return kExitIo;
        default:
            return kExitConfig;
    }
}

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format;
    double eps = 1e-9;
    std::int64_t seed = -1;
};

StudyConfig load_with_overrides(const CommonOpts& opts) {
    StudyConfig cfg = load_config(opts.config_path);
    if (opts.seed >= 0) cfg.simulation.seed = static_cast<std::uint64_t>(opts.seed);
    if (!opts.out_path.empty()) cfg.output.path = opts.out_path;
    if (opts.format == "csv") cfg.output.format = OutputFormat::Csv;
    if (opts.format == "markdown") cfg.output.format = OutputFormat::Markdown;
    return cfg;
}

void print_sim_estimate(int k, const SimEstimate& est) {
    std::printf("K=%d  idle1=%.6f  lambda1=%.6f  events=%llu  neg_draws=%llu/%llu\n", k,
                est.idle1, est.lambda_node.empty() ? 0.0 : est.lambda_node[0],
                static_cast<unsigned long long>(est.event_count),
                static_cast<unsigned long long>(est.neg_sample_count),
                static_cast<unsigned long long>(est.total_draws));
}

int run_analyze(const CommonOpts& opts, const std::string& algorithm, int k) {
    StudyConfig cfg = load_with_overrides(opts);
    const Algorithm a = parse_algorithm(algorithm);
    const double idle = idle_cell(a, cfg, k);
    std::printf("%s  K=%d  idle1=%.6f\n", algorithm_label(a).c_str(), k, idle);

    // extra detail where the backend reports more than the idle probability
    const NetworkSpec analytic = analytic_network(cfg).with_population(k);
    switch (a) {
        case Algorithm::Stst: {
            const StStReport r = stst(analytic);
            std::printf("  lambda1=%.6f  E(idle)=%.6f  mu_W=%.6f  sigma_W=%.6f  residual=%.2e\n",
                        r.lambda1, r.expected_idle, r.fixed_point.mu_w, r.fixed_point.sigma_w,
                        r.fixed_point.residual);
            break;
        }
        case Algorithm::StstM: {
            const StStmReport r = stst_m(cfg.network.with_population(k), *cfg.disturbance);
            std::printf("  psi=%.6f  p=%.6f  base_idle=%.6f  base_lambda1=%.6f\n", r.psi,
                        r.breakdown_prob, r.base.idle1, r.base.lambda1);
            break;
        }
        case Algorithm::Flow: {
            const std::array<double, 4> means = {
                analytic.nodes[0].service.mean, analytic.nodes[1].service.mean,
                analytic.nodes[2].service.mean, analytic.nodes[3].service.mean};
            const FlowReport r = flow_closed_form(means, k);
            std::printf("  lambda1=%.6f  vbar1=%.6f\n", r.lambda1, r.vbar1);
            break;
        }
        case Algorithm::Bott:
        case Algorithm::Ebott: {
            const BottResult r = a == Algorithm::Bott ? bott(analytic, opts.eps)
                                                      : ebott(analytic, opts.eps);
            std::printf("  lambda_total=%.6f  bottleneck=node %d%s  iterations=%d\n",
                        r.summary.lambda_total, r.bottleneck + 1, r.tie ? " (tie)" : "",
                        r.summary.iterations);
            break;
        }
        default:
            break;
    }
    return 0;
}

int run_compare(const CommonOpts& opts) {
    StudyConfig cfg = load_with_overrides(opts);
    const ComparisonTable table = run_study(cfg);
    std::cout << table_to_markdown(table);
    if (!table.abs_errors.empty())
        std::cout << "\nAbsolute errors against the simulation row:\n"
                  << errors_to_markdown(table);
    for (const std::string& d : table.diagnostics) std::cout << "diagnostic: " << d << "\n";
    if (!cfg.output.path.empty()) {
        emit(table, cfg.output.format, cfg.output.path);
        std::cout << "wrote " << cfg.output.path
                  << (cfg.output.format == OutputFormat::Csv ? ".csv" : ".md") << "\n";
    }
    return 0;
}

int run_simulate(const CommonOpts& opts, int k) {
    StudyConfig cfg = load_with_overrides(opts);
    SimConfig sim_cfg;
    sim_cfg.network = cfg.network;
    sim_cfg.disturbance = cfg.disturbance;
    sim_cfg.horizon = cfg.simulation.horizon;
    sim_cfg.warmup = cfg.simulation.warmup;
    sim_cfg.seed = cfg.simulation.seed;
    if (k > 0) {
        sim_cfg.network = cfg.network.with_population(k);
        sim_cfg.seed = cfg.simulation.seed ^ static_cast<std::uint64_t>(k);
        print_sim_estimate(k, simulate(sim_cfg));
    } else {
        const std::vector<SimEstimate> estimates = sweep(sim_cfg, cfg.kmin, cfg.kmax);
        for (int kk = cfg.kmin; kk <= cfg.kmax; ++kk)
            print_sim_estimate(kk, estimates[kk - cfg.kmin]);
    }
    return 0;
}

int run_tables(const std::string& out_dir, std::int64_t seed) {
    StudyConfig base = base_scenario();
    StudyConfig disturbed = disturbed_scenario();
    if (seed >= 0) {
        base.simulation.seed = static_cast<std::uint64_t>(seed);
        disturbed.simulation.seed = static_cast<std::uint64_t>(seed);
    }
    const std::string prefix = out_dir.empty() ? std::string() : out_dir + "/";

    const ComparisonTable t_base = run_study(base);
    const ComparisonTable t_dist = run_study(disturbed);
    auto write = [](const std::string& file, const std::string& text) {
        std::ofstream out(file, std::ios::binary);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + file);
        out << text;
    };
    write(prefix + "table4.csv", table_to_csv(t_base));
    write(prefix + "table5.csv", errors_to_csv(t_base, true));
    write(prefix + "table6.csv", table_to_csv(t_dist));
    write(prefix + "table7.csv", errors_to_csv(t_dist, true));
    write(prefix + "table4.md", table_to_markdown(t_base));
    write(prefix + "table5.md", errors_to_markdown(t_base));
    write(prefix + "table6.md", table_to_markdown(t_dist));
    write(prefix + "table7.md", errors_to_markdown(t_dist));
    std::cout << "wrote table{4,5,6,7}.{csv,md}" << (out_dir.empty() ? "" : " under " + out_dir)
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shovel idle probability and throughput for the closed haulage cycle"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string algorithm = "stst";
    int k = 0;
    std::string out_dir;
    bool paper = false;

    CLI::App* analyze = app.add_subcommand("analyze", "one algorithm at one population");
    analyze->add_option("--config", opts.config_path, "study config (JSON)")->required();
    analyze->add_option("--algorithm", algorithm, "algorithm id")->required();
    analyze->add_option("--k", k, "population")->required();
    analyze->add_option("--eps", opts.eps, "iteration tolerance");
    analyze->add_option("--seed", opts.seed, "simulation seed override");

    CLI::App* compare = app.add_subcommand("compare", "full algorithm x population study");
    compare->add_option("--config", opts.config_path, "study config (JSON)")->required();
    compare->add_option("--out", opts.out_path, "output base path");
    compare->add_option("--format", opts.format, "csv or markdown")
        ->check(CLI::IsMember({"csv", "markdown"}));
    compare->add_option("--eps", opts.eps, "iteration tolerance");
    compare->add_option("--seed", opts.seed, "simulation seed override");

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "simulation only");
    simulate_cmd->add_option("--config", opts.config_path, "study config (JSON)")->required();
    simulate_cmd->add_option("--k", k, "population (default: config k_range sweep)");
    simulate_cmd->add_option("--seed", opts.seed, "simulation seed override");

    CLI::App* tables = app.add_subcommand("tables", "regenerate the reference tables");
    tables->add_flag("--paper", paper, "use the bundled reference scenarios");
    tables->add_option("--out", out_dir, "output directory");
    tables->add_option("--seed", opts.seed, "simulation seed override");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return run_analyze(opts, algorithm, k);
        if (compare->parsed()) return run_compare(opts);
        if (simulate_cmd->parsed()) return run_simulate(opts, k);
        if (tables->parsed()) {
            if (!paper) {
                std::cerr << "tables: only --paper mode is available\n";
                return kExitConfig;
            }
            return run_tables(out_dir, opts.seed);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
