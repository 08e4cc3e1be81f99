#include "haulnet/stst.hpp"

#include <cmath>

#include "haulnet/errors.hpp"

namespace haulnet {

double expected_idle(double mu_w, double sigma_w) {
    return positive_part_mean_normal(mu_w, sigma_w);
}

FixedPointResult solve_fixed_point(double es, double var_s, double et, double var_t, int k) {
    require(k >= 1, ErrorCode::InvalidConfig, "population must be at least 1");
    require(es > 0.0, ErrorCode::InvalidConfig, "service mean must be positive");
    require(var_s >= 0.0 && var_t >= 0.0, ErrorCode::InvalidConfig, "variances must be nonnegative");

    FixedPointResult out;
    out.sigma_w = std::sqrt(var_t + (k - 1) * var_s);
    require(out.sigma_w > 0.0, ErrorCode::DegenerateVariance,
            "sigma_w = 0; the deterministic flow model covers this case");

    if (k == 1) { // g(m) = et - m, root is exact
        out.mu_w = et;
        return out;
    }

    const double sigma_w = out.sigma_w;
    auto g = [&](double m) {
        return et - (k - 1) * (es + expected_idle(m, sigma_w)) - m;
    };

    // g is strictly decreasing with g(-inf) = +inf, g(+inf) = -inf. g(et) < 0
    // already, so only the lower end needs expanding.
    double hi = et;
    double lo = et - (k - 1) * es - 10.0 * (et + k * sigma_w);
    double g_lo = g(lo);
    int expansions = 0;
    while (g_lo < 0.0) {
        require(++expansions <= 200, ErrorCode::NoBracket, "bracket expansion exhausted");
        lo -= 2.0 * (hi - lo);
        g_lo = g(lo);
    }

    double mid = lo;
    double g_mid = g_lo;
    while (std::abs(g_mid) > 1e-12) {
        require(out.iterations++ < 500, ErrorCode::Nonconvergence, "bisection stalled");
        mid = 0.5 * (lo + hi);
        g_mid = g(mid);
        if (g_mid > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    out.mu_w = mid;
    out.residual = g_mid;
    return out;
}

StStReport stst(const NetworkSpec& spec) {
    require(spec.size() >= 2, ErrorCode::InvalidConfig, "need a cycle of at least two nodes");
    require(spec.routing.is_cyclic_shift(), ErrorCode::InvalidConfig,
            "the two-stage reduction assumes cyclic routing");
    require(spec.nodes[0].kind == NodeKind::SingleServerFcfs, ErrorCode::InvalidConfig,
            "node 1 must be the single-server station");

    std::vector<MomentPair> stages;
    for (int j = 1; j < spec.size(); ++j) stages.push_back(spec.nodes[j].service);
    const MomentPair backcycle = backcycle_moments(stages);
    const MomentPair& loading = spec.nodes[0].service;

    StStReport out;
    out.fixed_point = solve_fixed_point(loading.mean, loading.variance, backcycle.mean,
                                        backcycle.variance, spec.population);
    out.expected_idle = expected_idle(out.fixed_point.mu_w, out.fixed_point.sigma_w);
    out.idle1 = out.expected_idle / (out.expected_idle + loading.mean);
    out.lambda1 = (1.0 - out.idle1) / loading.mean;
    return out;
}

StStmReport stst_m(const NetworkSpec& spec, const DisturbanceSpec& dist) {
    require(dist.alpha > 0.0 && dist.beta > 0.0, ErrorCode::InvalidConfig,
            "disturbance rates must be positive");
    StStmReport out;
    // p comes from the undisturbed loading moments; the base algorithm runs
    // on the undisturbed system as well.
    out.breakdown_prob = breakdown_probability(spec.nodes.at(0).service, dist.alpha);
    out.base = stst(spec);
    if (out.base.lambda1 <= 0.0) {
        out.zero_throughput = true; // no loads ever complete; nothing to correct
        out.psi = 1.0;
    } else {
        out.psi = dist.beta / (dist.beta + out.base.lambda1 * out.breakdown_prob);
    }
    out.idle1 = out.base.idle1 * out.psi;
    return out;
}

} // namespace haulnet
