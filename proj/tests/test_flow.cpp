#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "haulnet/errors.hpp"
#include "haulnet/flow.hpp"

using namespace haulnet;

namespace {
constexpr std::array<double, 4> kMeans = {1.5, 6.0, 1.0, 4.0};
}

TEST_CASE("closed form") {
    CHECK(flow_closed_form(kMeans, 1).idle1 == doctest::Approx(0.88).epsilon(1e-14));
    CHECK(flow_closed_form(kMeans, 8).idle1 == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(flow_closed_form(kMeans, 9).idle1 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(flow_closed_form(kMeans, 10).vbar1 == doctest::Approx(2.5).epsilon(1e-14));

    SUBCASE("waiting time and idling exclude each other") {
        for (int k = 1; k <= 14; ++k) {
            const FlowReport r = flow_closed_form(kMeans, k);
            CHECK((r.vbar1 == 0.0) == (r.idle1 > 0.0));
            CHECK(r.idle1 >= 0.0);
            CHECK(r.idle1 <= 1.0);
        }
    }

    CHECK_THROWS_WITH_AS((void)flow_closed_form({1.0, 6.0, 1.5, 4.0}, 3),
                         doctest::Contains("AssumptionViolated"), Error);
}

TEST_CASE("trajectory recursion") {
    SUBCASE("eight trucks: waits die out") {
        const Trajectory tr = flow_trajectory(kMeans, 8, 40);
        CHECK(tr.regime == FlowRegime::ZeroWaits);
        CHECK(tr.long_run.vbar1 == 0.0);
    }

    SUBCASE("ten trucks: waits settle at the closed-form constant") {
        const Trajectory tr = flow_trajectory(kMeans, 10, 40);
        CHECK(tr.regime == FlowRegime::PositiveWaits);
        CHECK(std::abs(tr.long_run.vbar1 - 2.5) < 1e-9);
        CHECK(std::abs(tr.long_run.idle1 - 0.0) < 1e-9);
    }

    SUBCASE("a single truck never waits at all") {
        const Trajectory tr = flow_trajectory(kMeans, 1, 60);
        for (double v : tr.wait) CHECK(v == 0.0);
    }

    SUBCASE("long-run statistics match the closed form") {
        for (int k = 1; k <= 12; ++k) {
            const Trajectory tr = flow_trajectory(kMeans, k, 60);
            const FlowReport cf = flow_closed_form(kMeans, k);
            CHECK(std::abs(tr.long_run.idle1 - cf.idle1) < 1e-9);
            CHECK(std::abs(tr.long_run.vbar1 - cf.vbar1) < 1e-9);
            CHECK(std::abs(tr.long_run.lambda1 - cf.lambda1) < 1e-9);
        }
    }

    SUBCASE("node 3 never queues once the transient has passed") {
        for (int k : {1, 4, 8, 10, 12}) {
            const Trajectory tr = flow_trajectory(kMeans, k, 50);
            for (std::size_t n = tr.transient_services; n < tr.node3_wait.size(); ++n)
                CHECK(tr.node3_wait[n] == 0.0);
        }
    }

    SUBCASE("interarrival sums balance the waiting time") {
        for (int k : {3, 9, 11}) {
            const Trajectory tr = flow_trajectory(kMeans, k, 50);
            const double total = 12.5;
            for (int n = tr.transient_services;
                 n + k < static_cast<int>(tr.arrival.size()); ++n) {
                double acc = 0.0;
                for (int i = n; i < n + k; ++i) acc += tr.interarrival[i];
                CHECK(std::abs(acc - (tr.wait[n] + total)) < 1e-9);
            }
        }
    }
}

TEST_CASE("regime classification matches the load threshold") {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> mean_d(0.5, 6.0);
    int checked = 0;
    while (checked < 50) {
        std::array<double, 4> means{};
        for (double& m : means) m = mean_d(rng);
        if (means[0] <= means[2]) continue;
        const double total = means[0] + means[1] + means[2] + means[3];
        const int k_below = std::max(1, static_cast<int>(std::floor(total / means[0])));
        const int k_above = static_cast<int>(std::floor(total / means[0])) + 1;

        if (k_below * means[0] <= total) {
            const Trajectory tr = flow_trajectory(means, k_below, 40);
            CHECK(tr.regime == FlowRegime::ZeroWaits);
        }
        const Trajectory tr = flow_trajectory(means, k_above, 40);
        CHECK(tr.regime == FlowRegime::PositiveWaits);
        ++checked;
    }
}
