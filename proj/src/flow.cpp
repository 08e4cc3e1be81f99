#include "haulnet/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "haulnet/errors.hpp"

namespace haulnet {

namespace {

void check_means(const std::array<double, 4>& means, int k) {
    for (double m : means)
        require(m > 0.0, ErrorCode::InvalidConfig, "service means must be positive");
    require(k >= 1, ErrorCode::InvalidConfig, "population must be at least 1");
    require(means[0] > means[2], ErrorCode::AssumptionViolated,
            "the deterministic analysis assumes loading is slower than unloading");
}

} // namespace

FlowReport flow_closed_form(const std::array<double, 4>& means, int k) {
    check_means(means, k);
    const double total = std::accumulate(means.begin(), means.end(), 0.0);
    FlowReport out;
    out.vbar1 = std::max(0.0, k * means[0] - total);
    out.idle1 = 1.0 - k * means[0] / (total + out.vbar1);
    out.lambda1 = (1.0 - out.idle1) / means[0];
    return out;
}

Trajectory flow_trajectory(const std::array<double, 4>& means, int k, int cycles) {
    check_means(means, k);
    require(cycles >= 1, ErrorCode::InvalidConfig, "need at least one cycle");

    const double m1 = means[0], m2 = means[1], m3 = means[2], m4 = means[3];
    const int settle = std::max(3 * k, 50);
    const int services = std::max(cycles * k, settle + 3 * k) + k;

    Trajectory tr;
    tr.arrival.reserve(services);
    tr.departure.reserve(services);
    tr.wait.reserve(services);
    tr.node3_wait.reserve(services);

    // All K customers queued at node 1 at time zero. Each node-1 departure
    // reaches node 3 after m2; travel order is preserved, so node 3 is FCFS
    // over the same customer sequence. The n-th node-3 departure generates
    // arrival n+K at node 1 after m4.
    double prev_tau1 = 0.0; // node-1 departure of the previous customer
    double prev_tau3 = 0.0;
    for (int n = 0; n < services; ++n) {
        double arrival;
        if (n < k) {
            arrival = 0.0;
        } else {
            arrival = tr.departure[n - k] + m2 + tr.node3_wait[n - k] + m3 + m4;
        }
        const double start1 = std::max(arrival, prev_tau1);
        const double tau1 = start1 + m1;
        tr.arrival.push_back(arrival);
        tr.wait.push_back(start1 - arrival);
        tr.departure.push_back(tau1);
        prev_tau1 = tau1;

        const double arrival3 = tau1 + m2;
        const double start3 = std::max(arrival3, prev_tau3);
        tr.node3_wait.push_back(start3 - arrival3);
        prev_tau3 = start3 + m3;
    }
    tr.interarrival.resize(services - 1);
    for (int n = 0; n + 1 < services; ++n)
        tr.interarrival[n] = tr.arrival[n + 1] - tr.arrival[n];

    tr.transient_services = settle;
    // Customers that depart back-to-back return back-to-back, so the steady
    // state contains exact event-time ties; summation order turns those into
    // +-1e-15 wobble around zero. Classify against a tolerance far above the
    // rounding noise and far below any genuine constant wait.
    constexpr double kWaitZeroTol = 1e-9;
    bool all_zero = true;
    bool all_positive = true;
    for (int n = settle; n < services; ++n) {
        if (tr.wait[n] > kWaitZeroTol) all_zero = false;
        if (tr.wait[n] <= kWaitZeroTol) all_positive = false;
    }
    require(all_zero != all_positive, ErrorCode::Nonconvergence,
            "trajectory did not settle into a regime");
    tr.regime = all_zero ? FlowRegime::ZeroWaits : FlowRegime::PositiveWaits;

    // Measure idle over whole cycles: between the service starts of customer
    // n0 and its later self, the server is busy for exactly one service per
    // departure in between.
    const int n0 = settle;
    const int whole_cycles = (services - k - n0) / k;
    const int n1 = n0 + whole_cycles * k;
    const double window_start = tr.departure[n0] - m1; // service start of n0
    const double window_end = tr.departure[n1] - m1;
    const double busy = static_cast<double>(n1 - n0) * m1;
    tr.long_run.vbar1 = tr.regime == FlowRegime::ZeroWaits ? 0.0 : tr.wait[n1];
    tr.long_run.idle1 = 1.0 - busy / (window_end - window_start);
    tr.long_run.lambda1 = (1.0 - tr.long_run.idle1) / m1;
    return tr;
}

} // namespace haulnet
