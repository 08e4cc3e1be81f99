#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "haulnet/moments.hpp"
#include "haulnet/network.hpp"

namespace haulnet {

struct SimConfig {
    NetworkSpec network;
    std::optional<DisturbanceSpec> disturbance; // breakdown/repair at node 1
    double horizon = 1.0e6; // minutes
    double warmup = 0.0;    // statistics collected over [warmup, horizon]
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

struct SimEstimate {
    double idle1 = 0.0;                       // time-average of {node 1 empty}
    std::vector<double> lambda_node;          // departures / window
    std::vector<double> mean_queue;           // time-averaged occupancy
    std::vector<double> mean_sojourn;         // per completed visit
    std::vector<std::uint64_t> departures;    // counted inside the window
    std::vector<std::uint64_t> arrivals;      // routed arrivals, whole run
    std::vector<std::uint64_t> departures_total;
    double busy_time1 = 0.0;                  // node-1 busy time in window
    std::uint64_t neg_sample_count = 0;       // normal draws truncated at 0
    std::uint64_t total_draws = 0;
    std::uint64_t event_count = 0;
    double window = 0.0;                      // horizon - warmup
};

/// Event-driven simulation of the closed cycle. Single servers are FCFS,
/// infinite servers run all present customers in parallel, service draws are
/// normal truncated below at zero (truncations counted). With a disturbance,
/// each node-1 service draws S, X ~ exp(alpha), Y ~ exp(beta) and holds the
/// server for S + 1{X < S} Y. Starts with all customers queued at node 1.
/// Deterministic for a fixed (seed, config).
SimEstimate simulate(const SimConfig& config);

/// One independent run per population K in [kmin, kmax], with per-K seeds
/// derived as seed ^ K.
std::vector<SimEstimate> sweep(const SimConfig& base, int kmin, int kmax);

} // namespace haulnet
