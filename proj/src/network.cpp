#include "haulnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "haulnet/errors.hpp"

namespace haulnet {

namespace {

void check_routing(const RoutingMatrix& routing) {
    const int j = routing.size();
    require(j >= 1 && routing.r.cols() == j, ErrorCode::ValidationError,
            "routing matrix must be square");
    for (int i = 0; i < j; ++i) {
        double row_sum = 0.0;
        for (int k = 0; k < j; ++k) {
            require(routing.r(i, k) >= 0.0, ErrorCode::NonStochasticMatrix,
                    "negative transition probability in row " + std::to_string(i));
            row_sum += routing.r(i, k);
        }
        require(std::abs(row_sum - 1.0) <= 1e-9, ErrorCode::NonStochasticMatrix,
                "row " + std::to_string(i) + " sums to " + std::to_string(row_sum));
    }
    // Boolean reachability closure; irreducible means every node reaches
    // every other.
    std::vector<std::vector<bool>> reach(j, std::vector<bool>(j, false));
    for (int a = 0; a < j; ++a)
        for (int b = 0; b < j; ++b) reach[a][b] = routing.r(a, b) > 0.0;
    for (int via = 0; via < j; ++via)
        for (int a = 0; a < j; ++a)
            if (reach[a][via])
                for (int b = 0; b < j; ++b)
                    if (reach[via][b]) reach[a][b] = true;
    for (int a = 0; a < j; ++a)
        for (int b = 0; b < j; ++b)
            require(reach[a][b], ErrorCode::ReducibleMatrix,
                    "node " + std::to_string(b) + " unreachable from " + std::to_string(a));
}

} // namespace

RoutingMatrix RoutingMatrix::cyclic(int j) {
    RoutingMatrix out;
    out.r = Eigen::MatrixXd::Zero(j, j);
    for (int i = 0; i < j; ++i) out.r(i, (i + 1) % j) = 1.0;
    return out;
}

bool RoutingMatrix::is_cyclic_shift(double tol) const {
    const int j = size();
    for (int a = 0; a < j; ++a)
        for (int b = 0; b < j; ++b) {
            const double want = (b == (a + 1) % j) ? 1.0 : 0.0;
            if (std::abs(r(a, b) - want) > tol) return false;
        }
    return true;
}

NetworkSpec NetworkSpec::cycle(std::vector<NodeSpec> nodes, int k) {
    NetworkSpec spec;
    spec.routing = RoutingMatrix::cyclic(static_cast<int>(nodes.size()));
    spec.nodes = std::move(nodes);
    spec.population = k;
    require(spec.size() >= 1, ErrorCode::ValidationError, "a cycle needs at least one node");
    require(k >= 1, ErrorCode::ValidationError, "population must be at least 1");
    return spec;
}

NetworkSpec NetworkSpec::with_population(int k) const {
    NetworkSpec out = *this;
    out.population = k;
    return out;
}

NetworkSpec NetworkSpec::with_node_service(int node, MomentPair service) const {
    NetworkSpec out = *this;
    out.nodes.at(static_cast<std::size_t>(node)).service = service;
    return out;
}

VisitRatios solve_traffic(const RoutingMatrix& routing) {
    check_routing(routing);
    const int j = routing.size();
    // (r^T - I) eta = 0 with the normalization row appended; J is small, so a
    // dense least-squares solve is plenty.
    Eigen::MatrixXd a(j + 1, j);
    a.topRows(j) = routing.r.transpose() - Eigen::MatrixXd::Identity(j, j);
    a.bottomRows(1).setOnes();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(j + 1);
    b(j) = 1.0;
    Eigen::VectorXd eta = a.colPivHouseholderQr().solve(b);

    VisitRatios out;
    out.eta.assign(eta.data(), eta.data() + j);
    double residual = 0.0;
    for (int col = 0; col < j; ++col) {
        double balance = -eta(col);
        for (int row = 0; row < j; ++row) balance += eta(row) * routing.r(row, col);
        residual = std::max(residual, std::abs(balance));
        require(eta(col) > 0.0, ErrorCode::ReducibleMatrix, "visit ratio not positive");
    }
    require(residual < 1e-10, ErrorCode::Nonconvergence, "traffic equations residual too large");
    return out;
}

double throughput_to_idle(double lambda1, double mean_service1) {
    require(lambda1 >= 0.0, ErrorCode::InvalidConfig, "throughput must be nonnegative");
    const double utilization = lambda1 * mean_service1;
    require(utilization <= 1.0 + 1e-9, ErrorCode::UtilizationExceedsOne,
            "lambda1 * mean service = " + std::to_string(utilization));
    return std::clamp(1.0 - utilization, 0.0, 1.0);
}

double exact_single_customer_idle(const NetworkSpec& spec) {
    require(spec.population == 1, ErrorCode::PopulationNotOne,
            "exact formula only holds for a single circulating customer");
    const VisitRatios ratios = solve_traffic(spec.routing);
    double total = 0.0;
    for (int i = 0; i < spec.size(); ++i) total += ratios.eta[i] * spec.nodes[i].service.mean;
    return 1.0 - ratios.eta[0] * spec.nodes[0].service.mean / total;
}

} // namespace haulnet
