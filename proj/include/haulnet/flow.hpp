#pragma once

#include <array>
#include <vector>

namespace haulnet {

/// Closed-form deterministic (zero-variance) performance of the 4-stage cycle.
struct FlowReport {
    double idle1 = 0.0;
    double lambda1 = 0.0;
    double vbar1 = 0.0; // asymptotic waiting time at node 1; > 0 iff idle1 = 0
};

enum class FlowRegime {
    ZeroWaits,     // node-1 waits hit zero within K services and stay zero
    PositiveWaits, // node-1 waits stay positive, settle at a constant
};

/// Exact deterministic trajectory of node-1 arrivals/departures, used to
/// verify the closed form.
struct Trajectory {
    std::vector<double> arrival;      // gamma_1(n)
    std::vector<double> departure;    // tau_1(n)
    std::vector<double> wait;         // V_1(n)
    std::vector<double> interarrival; // A_1(n) = gamma_1(n+1) - gamma_1(n)
    std::vector<double> node3_wait;   // zero once the transient has passed
    FlowRegime regime = FlowRegime::ZeroWaits;
    int transient_services = 0;       // services consumed before measuring
    FlowReport long_run;              // measured over whole post-transient cycles
};

/// Deterministic flow approximation:
///   vbar1 = max(0, K mu1^-1 - sum_i mu_i^-1),
///   idle1 = 1 - K mu1^-1 / (sum_i mu_i^-1 + vbar1).
/// Requires means[0] > means[2] (loading slower than unloading); other
/// parameter orders are outside the model and are refused.
FlowReport flow_closed_form(const std::array<double, 4>& means, int k);

/// Evolves the deterministic recursion from the all-at-node-1 start, runs at
/// least max(3K, 50) node-1 services past the setup, classifies the regime,
/// and measures long-run statistics over whole cycles. The measured values
/// match flow_closed_form to 1e-9.
Trajectory flow_trajectory(const std::array<double, 4>& means, int k, int cycles);

} // namespace haulnet
