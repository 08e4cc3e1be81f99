#pragma once

#include <span>

namespace haulnet {

/// (mean, variance) of a nonnegative duration in minutes. The two-parameter
/// description is the currency of all analytic algorithms in this library.
struct MomentPair {
    double mean = 0.0;     // minutes
    double variance = 0.0; // minutes^2

    double sd() const;
    double cv2() const; // squared coefficient of variation, variance / mean^2
};

/// Breakdown/repair process at the loading server: breakdowns arrive during
/// work with rate alpha, a repair completes with rate beta (both per minute).
struct DisturbanceSpec {
    double alpha = 0.0; // breakdown intensity while serving
    double beta = 0.0;  // repair completion rate
};

/// Output of modified_service_moments.
struct ModifiedServiceMoments {
    MomentPair base;
    double breakdown_prob = 0.0; // P(X < S), one breakdown during a service
    double cross_moment = 0.0;   // E(S 1{X < S})
    MomentPair modified;         // moments of S + 1{X < S} Y
};

double std_normal_pdf(double x);
double std_normal_cdf(double x); // absolute error <= 1e-12 over the real line

/// Phi(y/sigma)*y + phi(y/sigma)*sigma, the mean of the positive part of a
/// N(y, sigma^2) variable. Requires sigma > 0.
double positive_part_mean_normal(double y, double sigma);

/// P(S < 0) for S ~ N(mean, variance): diagnostic for how far the normal
/// service-time model strays into negative durations.
double negative_mass(const MomentPair& service);

/// Probability that an exp(alpha) breakdown clock rings before a normal
/// service S completes. sigma = 0 falls back to the deterministic limit
/// 1 - exp(-alpha*mean).
double breakdown_probability(const MomentPair& service, double alpha);

/// E(S 1{X < S}) for S ~ N(mean, variance), X ~ exp(alpha) independent.
/// sigma = 0 falls back to mean * (1 - exp(-alpha*mean)).
double cross_moment(const MomentPair& service, double alpha);

/// Mean and variance of the breakdown-modified service time S + 1{X < S} Y
/// with X ~ exp(alpha), Y ~ exp(beta). The modified mean always equals
/// base.mean + breakdown_prob / beta.
ModifiedServiceMoments modified_service_moments(const MomentPair& service,
                                                const DisturbanceSpec& dist);

/// Moments of the sum of independent stage durations (the backcycle: travel
/// loaded + unload + travel empty). Means and variances add.
MomentPair backcycle_moments(std::span<const MomentPair> stages);

} // namespace haulnet
