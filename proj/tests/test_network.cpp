#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "haulnet/errors.hpp"
#include "haulnet/network.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace haulnet;

TEST_CASE("traffic equations on the cycle") {
    const VisitRatios ratios = solve_traffic(RoutingMatrix::cyclic(4));
    for (double eta : ratios.eta) CHECK(eta == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("doubly stochastic routing has the uniform solution") {
    RoutingMatrix routing = RoutingMatrix::cyclic(5);
    routing.r = 0.5 * routing.r + 0.5 * Eigen::MatrixXd::Identity(5, 5);
    const VisitRatios ratios = solve_traffic(routing);
    for (double eta : ratios.eta) CHECK(eta == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("three-node routing matches power iteration") {
    RoutingMatrix routing;
    routing.r = Eigen::MatrixXd{{0.0, 1.0, 0.0}, {0.5, 0.0, 0.5}, {1.0, 0.0, 0.0}};
    const VisitRatios ratios = solve_traffic(routing);
    const std::vector<double> oracle = oracles::traffic_power_iteration(routing.r);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(ratios.eta[i] - oracle[i]) < 1e-10);
    CHECK(ratios.eta[0] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(ratios.eta[2] == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("traffic solutions are probability vectors with tiny residuals") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const int j = 2 + static_cast<int>(rng() % 5);
        RoutingMatrix routing;
        routing.r = Eigen::MatrixXd::Zero(j, j);
        for (int a = 0; a < j; ++a) {
            double row_sum = 0.0;
            for (int b = 0; b < j; ++b) row_sum += routing.r(a, b) = unit(rng);
            routing.r.row(a) /= row_sum; // dense positive rows: irreducible
        }
        const VisitRatios ratios = solve_traffic(routing);
        double sum = 0.0;
        for (double eta : ratios.eta) {
            CHECK(eta > 0.0);
            sum += eta;
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
        for (int b = 0; b < j; ++b) {
            double balance = -ratios.eta[b];
            for (int a = 0; a < j; ++a) balance += ratios.eta[a] * routing.r(a, b);
            CHECK(std::abs(balance) < 1e-10);
        }
    }
}

TEST_CASE("malformed routing is rejected") {
    RoutingMatrix bad = RoutingMatrix::cyclic(3);
    bad.r(0, 1) = 0.9; // row no longer sums to one
    CHECK_THROWS_WITH_AS((void)solve_traffic(bad), doctest::Contains("NonStochasticMatrix"),
                         Error);

    RoutingMatrix reducible;
    reducible.r = Eigen::MatrixXd::Identity(2, 2);
    CHECK_THROWS_WITH_AS((void)solve_traffic(reducible), doctest::Contains("ReducibleMatrix"),
                         Error);
}

TEST_CASE("throughput to idle conversion") {
    CHECK(throughput_to_idle(0.08, 1.5) == doctest::Approx(0.88).epsilon(1e-14));
    CHECK(throughput_to_idle(0.0, 123.0) == 1.0);
    CHECK(throughput_to_idle(1.0 / 1.5, 1.5) == 0.0);
    CHECK_THROWS_AS((void)throughput_to_idle(0.7, 1.5), Error);

    // inverse roundtrip: idle -> lambda -> idle
    for (double idle : {0.0, 0.13, 0.5, 0.88, 1.0}) {
        const double lambda = (1.0 - idle) / 1.5;
        CHECK(std::abs(throughput_to_idle(lambda, 1.5) - idle) < 1e-15);
    }
}

TEST_CASE("exact single-customer idle probability") {
    CHECK(exact_single_customer_idle(fixtures::mining_cycle(1)) ==
          doctest::Approx(0.880).epsilon(1e-12));
    CHECK(std::abs(exact_single_customer_idle(fixtures::disturbed_cycle(1)) -
                   fixtures::kExactIdleDisturbed) < 1e-7);

    const NetworkSpec equal = fixtures::mining_cycle_means({2, 2, 2, 2}, {0, 0, 0, 0}, 1);
    CHECK(exact_single_customer_idle(equal) == doctest::Approx(0.75).epsilon(1e-14));

    CHECK_THROWS_WITH_AS((void)exact_single_customer_idle(fixtures::mining_cycle(2)),
                         doctest::Contains("PopulationNotOne"), Error);
}
