#include "haulnet/moments.hpp"

#include <algorithm>
#include <cmath>

#include "haulnet/errors.hpp"

namespace haulnet {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794; // 1/sqrt(2 pi)
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrtPi = 0.56418958354775628695;

// Scaled complementary error function exp(x^2) erfc(x) for x >= 0. The
// direct product is exact while exp(x^2) stays representable; beyond that an
// asymptotic expansion takes over.
double erfcx_pos(double x) {
    if (x < 25.0) return std::exp(x * x) * std::erfc(x);
    const double inv2x2 = 1.0 / (2.0 * x * x);
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1; n <= 6; ++n) {
        term *= -static_cast<double>(2 * n - 1) * inv2x2;
        sum += term;
    }
    return sum * kInvSqrtPi / x;
}

// exp(t^2/2 - m t) * Phi(m - t) for m, t >= 0, without overflow: for
// m - t < 0 the identity t^2/2 - m t - (m-t)^2/2 = -m^2/2 turns the product
// into 0.5 exp(-m^2/2) erfcx((t - m)/sqrt(2)).
double scaled_normal_cdf(double m, double t) {
    const double v = m - t;
    if (v >= 0.0) return std::exp(t * t / 2.0 - m * t) * std_normal_cdf(v);
    return 0.5 * std::exp(-m * m / 2.0) * erfcx_pos(-v * kInvSqrt2);
}

void check_service(const MomentPair& service) {
    require(service.mean > 0.0, ErrorCode::InvalidConfig, "service mean must be positive");
    require(service.variance >= 0.0, ErrorCode::InvalidConfig, "service variance must be nonnegative");
    require(std::isfinite(service.mean) && std::isfinite(service.variance),
            ErrorCode::InvalidConfig, "service moments must be finite");
}

} // namespace

double MomentPair::sd() const { return std::sqrt(variance); }

double MomentPair::cv2() const { return variance / (mean * mean); }

double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-x * x / 2.0); }

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double positive_part_mean_normal(double y, double sigma) {
    require(sigma > 0.0, ErrorCode::DegenerateVariance, "positive_part_mean_normal needs sigma > 0");
    const double z = y / sigma;
    return std_normal_cdf(z) * y + std_normal_pdf(z) * sigma;
}

double negative_mass(const MomentPair& service) {
    if (service.variance == 0.0) return service.mean < 0.0 ? 1.0 : 0.0;
    return std_normal_cdf(-service.mean / service.sd());
}

double breakdown_probability(const MomentPair& service, double alpha) {
    check_service(service);
    require(alpha >= 0.0 && std::isfinite(alpha), ErrorCode::InvalidConfig,
            "breakdown rate must be nonnegative");
    if (service.variance == 0.0) return 1.0 - std::exp(-alpha * service.mean);
    const double sigma = service.sd();
    const double m = service.mean / sigma;
    const double t = alpha * sigma;
    const double p = std_normal_cdf(m) - scaled_normal_cdf(m, t);
    return std::clamp(p, 0.0, 1.0);
}

double cross_moment(const MomentPair& service, double alpha) {
    check_service(service);
    require(alpha >= 0.0 && std::isfinite(alpha), ErrorCode::InvalidConfig,
            "breakdown rate must be nonnegative");
    if (service.variance == 0.0) return service.mean * (1.0 - std::exp(-alpha * service.mean));
    const double sigma = service.sd();
    const double m = service.mean / sigma;
    const double t = alpha * sigma;
    const double y = service.mean - alpha * service.variance;
    // E(S 1{X<S}) = [Phi(m) mu + phi(m) sigma]
    //             - exp(a^2 s^2/2 - a mu) [Phi(y/s) y + phi(y/s) s];
    // exp(a^2 s^2/2 - a mu) phi(y/s) = phi(m) exactly, so the density terms
    // cancel and only the scaled-CDF part survives.
    return std_normal_cdf(m) * service.mean - scaled_normal_cdf(m, t) * y;
}

ModifiedServiceMoments modified_service_moments(const MomentPair& service,
                                                const DisturbanceSpec& dist) {
    check_service(service);
    require(dist.beta > 0.0, ErrorCode::InvalidConfig, "repair rate must be positive");
    ModifiedServiceMoments out;
    out.base = service;
    out.breakdown_prob = breakdown_probability(service, dist.alpha);
    out.cross_moment = cross_moment(service, dist.alpha);
    const double p = out.breakdown_prob;
    const double ib = 1.0 / dist.beta;
    out.modified.mean = service.mean + p * ib;
    out.modified.variance = service.variance + 2.0 * out.cross_moment * ib +
                            p * (2.0 * ib * ib - 2.0 * service.mean * ib - p * ib * ib);
    return out;
}

MomentPair backcycle_moments(std::span<const MomentPair> stages) {
    require(!stages.empty(), ErrorCode::InvalidConfig, "backcycle needs at least one stage");
    MomentPair total;
    for (const MomentPair& stage : stages) {
        total.mean += stage.mean;
        total.variance += stage.variance;
    }
    return total;
}

} // namespace haulnet
