#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "haulnet/moments.hpp"

namespace haulnet {

enum class NodeKind {
    SingleServerFcfs, // one server, unlimited FCFS queue (shovel, crusher)
    InfiniteServer,   // every customer served immediately (travel legs)
};

struct NodeSpec {
    NodeKind kind = NodeKind::SingleServerFcfs;
    MomentPair service; // minutes, minutes^2
    std::string label;
};

/// Row-stochastic customer transition matrix r(i,j).
struct RoutingMatrix {
    Eigen::MatrixXd r;

    int size() const { return static_cast<int>(r.rows()); }

    /// Cyclic shift 1 -> 2 -> ... -> J -> 1.
    static RoutingMatrix cyclic(int j);

    bool is_cyclic_shift(double tol = 1e-12) const;
};

struct NetworkSpec {
    std::vector<NodeSpec> nodes;
    RoutingMatrix routing;
    int population = 1; // number of circulating customers (trucks), K >= 1

    int size() const { return static_cast<int>(nodes.size()); }

    /// Closed cycle over the given nodes with population k.
    static NetworkSpec cycle(std::vector<NodeSpec> nodes, int k);

    NetworkSpec with_population(int k) const;
    NetworkSpec with_node_service(int node, MomentPair service) const;
};

/// Stochastic solution of the traffic equations eta = eta * r.
struct VisitRatios {
    std::vector<double> eta; // positive, sums to 1
};

/// Per-algorithm, per-population performance summary assembled by studies.
struct PerfRow {
    double idle1 = 0.0;                    // stationary P(node 1 empty)
    double lambda_total = 0.0;             // network departures per minute
    std::vector<double> lambda_node;       // eta_j * lambda_total
    std::vector<double> mean_queue;        // empty when algorithm defines none
    std::vector<double> mean_sojourn;      // empty when algorithm defines none
};

struct PerfReport {
    std::string algorithm;
    std::map<int, PerfRow> per_k;
    std::vector<std::string> warnings;
};

/// Unique stochastic left fixed vector of the routing matrix. Throws
/// NonStochasticMatrix / ReducibleMatrix on malformed input.
VisitRatios solve_traffic(const RoutingMatrix& routing);

/// 1 - lambda1 * mean_service1, clamped to [0,1]. Throws
/// UtilizationExceedsOne beyond a 1e-9 slack: utilization above one means the
/// inputs are inconsistent for a single server.
double throughput_to_idle(double lambda1, double mean_service1);

/// Exact idle probability of node 1 when a single customer circulates:
/// 1 - eta_1 mu_1^-1 / sum_i eta_i mu_i^-1. Requires population == 1.
double exact_single_customer_idle(const NetworkSpec& spec);

} // namespace haulnet
