#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "haulnet/network.hpp"
#include "haulnet/sim.hpp"

namespace haulnet {

enum class Algorithm {
    Stst,
    StstM,
    Mva,
    Gmva,
    Sum,
    Esum,
    Bott,
    Ebott,
    Flow,
    GnExact,
    Sim,
};

std::string algorithm_id(Algorithm a);      // config token, e.g. "stst-m"
std::string algorithm_label(Algorithm a);   // table row label, e.g. "ST&ST-m"
Algorithm parse_algorithm(const std::string& id);

struct SimulationSettings {
    double horizon = 1.0e6;
    double warmup = 0.0;
    std::uint64_t seed = 20160325;
};

enum class OutputFormat { Csv, Markdown };

struct OutputSettings {
    OutputFormat format = OutputFormat::Csv;
    std::string path; // base path, extensions appended
};

/// One experiment: a network, an optional disturbance, a population sweep and
/// an algorithm roster.
struct StudyConfig {
    NetworkSpec network;                       // population field unused here
    std::optional<DisturbanceSpec> disturbance;
    int kmin = 1;
    int kmax = 1;
    std::vector<Algorithm> algorithms;
    SimulationSettings simulation;
    OutputSettings output;
};

/// Algorithm x K grid of idle probabilities, plus |algorithm - sim| error
/// rows and per-column best markers when a simulation row is present.
struct ComparisonTable {
    int kmin = 1;
    int kmax = 1;
    std::vector<std::string> row_labels;             // display order
    std::vector<std::vector<double>> values;         // full precision, NaN = failed cell
    std::optional<std::vector<double>> sim_row;
    std::vector<std::vector<double>> abs_errors;     // empty unless sim present
    std::vector<std::vector<double>> signed_errors;  // empty unless sim present
    std::vector<std::vector<bool>> best_per_k;       // minimal rounded error, ties all marked
    std::vector<std::string> diagnostics;            // failed-cell explanations
};

StudyConfig load_config(const std::string& path);
StudyConfig parse_config(const std::string& json_text);
std::string config_to_json(const StudyConfig& cfg);

/// Bundled scenario presets used by `tables --paper` and the golden tests.
StudyConfig base_scenario();      // small-disturbance parameter set
StudyConfig disturbed_scenario(); // adds the breakdown/repair process

/// The network the analytic algorithms see: with a disturbance configured,
/// node 1 carries the breakdown-modified service moments.
NetworkSpec analytic_network(const StudyConfig& cfg);

/// One cell of a study: idle probability from algorithm `a` at population k.
double idle_cell(Algorithm a, const StudyConfig& cfg, int k);

/// Full per-population report for one algorithm: throughputs always, mean
/// queues and sojourn times where the algorithm defines them. For stst-m the
/// throughput is the base rate scaled by the up-time fraction psi.
PerfReport perf_report(Algorithm a, const StudyConfig& cfg, int kmin, int kmax);

ComparisonTable run_study(const StudyConfig& cfg);

/// Writes <path>.csv (full precision) and, when error rows exist,
/// <path>_abserr.csv and <path>_signederr.csv; markdown goes to <path>.md
/// rounded to three decimals with best cells in bold.
void emit(const ComparisonTable& table, OutputFormat format, const std::string& path);

std::string table_to_csv(const ComparisonTable& table);
std::string errors_to_csv(const ComparisonTable& table, bool absolute);
std::string table_to_markdown(const ComparisonTable& table);
std::string errors_to_markdown(const ComparisonTable& table);

} // namespace haulnet
