// Test-only oracles, independent of the library's closed forms: adaptive
// quadrature, power iteration for the traffic equations, and Monte-Carlo
// estimation of the breakdown-modified service time.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

inline double simpson(const std::function<double(double)>& f, double a, double b) {
    return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = simpson(f, a, m);
    const double right = simpson(f, m, b);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, left, tol / 2.0, depth - 1) +
           adaptive_simpson_rec(f, m, b, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
    return adaptive_simpson_rec(f, a, b, simpson(f, a, b), tol, 48);
}

inline double normal_density(double t, double mu, double sigma) {
    const double z = (t - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * 3.14159265358979323846));
}

// Phi(x) by quadrature of the density over (-inf, x], truncated where the
// tail is below 1e-40.
inline double normal_cdf_quadrature(double x) {
    const double lo = x - 40.0 < -40.0 ? -40.0 : x - 40.0;
    return integrate([](double t) { return normal_density(t, 0.0, 1.0); }, lo, x);
}

// E max(0, N(y, sigma^2)) = integral of t * density over [0, inf).
inline double positive_part_quadrature(double y, double sigma) {
    const double hi = y + 14.0 * sigma;
    if (hi <= 0.0) return 0.0;
    return integrate([=](double t) { return t * normal_density(t, y, sigma); }, 0.0, hi);
}

// P(X < S) for X ~ exp(alpha): E[(1 - e^{-alpha S}) 1{S > 0}].
inline double breakdown_quadrature(double mu, double sigma, double alpha) {
    const double hi = mu + 14.0 * sigma;
    if (hi <= 0.0) return 0.0;
    return integrate(
        [=](double t) { return (1.0 - std::exp(-alpha * t)) * normal_density(t, mu, sigma); }, 0.0,
        hi);
}

// E(S 1{X < S}) by the same route.
inline double cross_moment_quadrature(double mu, double sigma, double alpha) {
    const double hi = mu + 14.0 * sigma;
    if (hi <= 0.0) return 0.0;
    return integrate(
        [=](double t) { return t * (1.0 - std::exp(-alpha * t)) * normal_density(t, mu, sigma); },
        0.0, hi);
}

// Left fixed vector of a stochastic matrix by power iteration on r^T,
// normalized to sum one.
inline std::vector<double> traffic_power_iteration(const Eigen::MatrixXd& r, double tol = 1e-14) {
    const int j = static_cast<int>(r.rows());
    Eigen::VectorXd v = Eigen::VectorXd::Constant(j, 1.0 / j);
    for (int it = 0; it < 1000000; ++it) {
        Eigen::VectorXd next = r.transpose() * v;
        next /= next.sum();
        const double delta = (next - v).cwiseAbs().maxCoeff();
        v = next;
        if (delta < tol) break;
    }
    return {v.data(), v.data() + j};
}

// Sample statistics of the modified service time S + 1{X < S} Y.
struct McModified {
    double p = 0.0, p_se = 0.0;
    double cross = 0.0, cross_se = 0.0;
    double mean = 0.0, mean_se = 0.0;
    double variance = 0.0, variance_se = 0.0;
};

inline McModified mc_modified_service(double mu, double sigma, double alpha, double beta,
                                      std::uint64_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(mu, sigma);
    std::exponential_distribution<double> up(alpha);
    std::exponential_distribution<double> repair(beta);

    double p_sum = 0.0;
    double cross_sum = 0.0, cross_sq = 0.0;
    double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0; // raw moments of the modified time
    for (std::uint64_t i = 0; i < n; ++i) {
        const double s = normal(rng);
        const double x = up(rng);
        const double y = repair(rng);
        const bool broke = x < s;
        const double modified = s + (broke ? y : 0.0);
        const double cross = broke ? s : 0.0;
        p_sum += broke ? 1.0 : 0.0;
        cross_sum += cross;
        cross_sq += cross * cross;
        const double sq = modified * modified;
        m1 += modified;
        m2 += sq;
        m3 += sq * modified;
        m4 += sq * sq;
    }
    const double dn = static_cast<double>(n);
    m1 /= dn;
    m2 /= dn;
    m3 /= dn;
    m4 /= dn;
    McModified out;
    out.p = p_sum / dn;
    out.p_se = std::sqrt(out.p * (1.0 - out.p) / dn);
    out.cross = cross_sum / dn;
    out.cross_se = std::sqrt((cross_sq / dn - out.cross * out.cross) / dn);
    out.mean = m1;
    const double var = m2 - m1 * m1;
    out.variance = var;
    out.mean_se = std::sqrt(var / dn);
    // SE of the sample variance needs the fourth central moment
    const double c4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1;
    out.variance_se = std::sqrt(std::max(0.0, c4 - var * var) / dn);
    return out;
}

} // namespace oracles
