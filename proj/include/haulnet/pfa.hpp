#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "haulnet/network.hpp"

namespace haulnet {

/// Exact stationary summary of the closed exponential network, computed by
/// enumerating the product-form distribution over S(J,K).
struct GnResult {
    double idle1 = 0.0;         // marginal P(n_1 = 0)
    double lambda_total = 0.0;
    std::vector<double> lambda_node;
    std::vector<double> mean_queue;
    std::uint64_t state_count = 0;
};

/// One population step of the mean-value recursion.
struct MvaStep {
    double lambda = 0.0;              // network throughput at this population
    std::vector<double> queue;        // mean customers per node
    std::vector<double> sojourn;      // mean time per visit, minutes
};

struct MvaTrace {
    std::vector<MvaStep> steps; // steps[k-1] holds population k
    double idle1 = 0.0;         // node-1 idle probability at full population
    double lambda_total = 0.0;
    std::vector<double> lambda_node;
};

/// Fixed-population summary produced by the non-recursive approximations.
struct SumResult {
    double idle1 = 0.0;
    double lambda_total = 0.0;
    std::vector<double> lambda_node;
    std::vector<double> mean_queue;
    std::vector<double> mean_sojourn;
    int iterations = 0;
};

struct BottResult {
    SumResult summary;
    int bottleneck = 0;      // node index chosen, smallest on a tie
    bool tie = false;        // multiple nodes shared the minimal capacity
};

/// Exact product-form evaluation (Gordon-Newell). Only service means are
/// used. Throws StateSpaceTooLarge when |S(J,K)| exceeds 10^6.
GnResult gn_exact(const NetworkSpec& spec);

/// Exact mean value analysis for the all-exponential network.
MvaTrace mva(const NetworkSpec& spec);

/// MVA with the stationary mean residual service correction (1 + cv^2)/2 at
/// single servers; heuristic for non-exponential service.
MvaTrace gmva(const NetworkSpec& spec);

/// Summation method: bisection on the fixed-population constraint
/// sum_i f_i(eta_i lambda) = K, no recursion in the population.
SumResult sum_method(const NetworkSpec& spec, double eps = 1e-9);

/// Summation method with the variability-corrected single-server queue-size
/// formula. Population 1 short-circuits to the exact single-customer cycle.
SumResult esum(const NetworkSpec& spec, double eps = 1e-9);

/// Bottleneck approximation: fixed-point iteration that repeatedly rescales
/// the bottleneck queue and inverts its queue-size formula.
BottResult bott(const NetworkSpec& spec, double eps = 1e-9);

/// Bottleneck approximation with the variability-corrected formulas and the
/// quadratic inversion at a single-server bottleneck. Population 1
/// short-circuits as in esum.
BottResult ebott(const NetworkSpec& spec, double eps = 1e-9);

} // namespace haulnet
