#pragma once

#include "haulnet/moments.hpp"
#include "haulnet/network.hpp"

namespace haulnet {

/// Root of the mean-idle fixed-point equation for the two-stage reduction.
struct FixedPointResult {
    double mu_w = 0.0;    // mean of the slack variable W, may be negative
    double sigma_w = 0.0; // sqrt(varT + (K-1) varS), fixed during the solve
    double residual = 0.0;
    int iterations = 0;
};

struct StStReport {
    double idle1 = 0.0;         // i(mu_w) / (i(mu_w) + ES)
    double lambda1 = 0.0;       // (1 - idle1) / ES
    double expected_idle = 0.0; // i(mu_w)
    FixedPointResult fixed_point;
};

struct StStmReport {
    double idle1 = 0.0;          // base idle1 * psi
    double psi = 0.0;            // up-time fraction from the regeneration cycle
    double breakdown_prob = 0.0; // p, computed on the undisturbed moments
    bool zero_throughput = false;
    StStReport base;
};

/// E max{0, W} for W ~ N(mu_w, sigma_w^2). Nonnegative, >= mu_w.
double expected_idle(double mu_w, double sigma_w);

/// Unique root mu_w of  g(m) = ET - (K-1)(ES + i(m)) - m  with
/// sigma_w = sqrt(varT + (K-1) varS) held fixed. g is strictly decreasing, so
/// the bracketed bisection always converges; |g(mu_w)| < 1e-10 on return.
/// Throws DegenerateVariance when sigma_w = 0 (use the flow module instead).
FixedPointResult solve_fixed_point(double es, double var_s, double et, double var_t, int k);

/// Idle probability and throughput of node 1 via the two-stage reduction:
/// nodes 2..J collapse into one infinite-server backcycle stage. Requires a
/// cyclic network whose first node is a single server.
StStReport stst(const NetworkSpec& spec);

/// Large-disturbance correction: runs stst on the undisturbed spec and scales
/// its idle probability by the regeneration factor
/// psi = beta / (beta + lambda1 * p).
StStmReport stst_m(const NetworkSpec& spec, const DisturbanceSpec& dist);

} // namespace haulnet
