#include "haulnet/pfa.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "haulnet/errors.hpp"

namespace haulnet {

namespace {

constexpr std::uint64_t kMaxStates = 1'000'000;

struct Prepared {
    int j = 0;
    int k = 0;
    std::vector<double> eta;
    std::vector<double> mean;
    std::vector<double> a; // stationary mean residual service factor (1+cv^2)/2
    std::vector<bool> single;
};

Prepared prepare(const NetworkSpec& spec, bool need_single_first) {
    require(spec.population >= 1, ErrorCode::InvalidConfig, "population must be at least 1");
    Prepared p;
    p.j = spec.size();
    p.k = spec.population;
    p.eta = solve_traffic(spec.routing).eta;
    for (const NodeSpec& node : spec.nodes) {
        require(node.service.mean > 0.0, ErrorCode::InvalidConfig, "service mean must be positive");
        p.mean.push_back(node.service.mean);
        p.a.push_back((1.0 + node.service.cv2()) / 2.0);
        p.single.push_back(node.kind == NodeKind::SingleServerFcfs);
    }
    if (need_single_first)
        require(p.single[0], ErrorCode::InvalidConfig,
                "idle probability reporting expects a single server at node 1");
    return p;
}

std::uint64_t composition_count(int j, int k) {
    // C(k + j - 1, j - 1), saturating above kMaxStates
    double c = 1.0;
    for (int i = 1; i <= j - 1; ++i) {
        c *= static_cast<double>(k + i) / static_cast<double>(i);
        if (c > 2.0 * static_cast<double>(kMaxStates)) return 2 * kMaxStates;
    }
    return static_cast<std::uint64_t>(c + 0.5);
}

// Idle probability from a throughput that may slightly exceed the server
// capacity (the variability-corrected recursions are not capacity-aware).
double clamped_idle(double lambda1, double mean1) {
    return std::clamp(1.0 - lambda1 * mean1, 0.0, 1.0);
}

MvaTrace mva_recursion(const NetworkSpec& spec, bool corrected) {
    const Prepared p = prepare(spec, true);
    MvaTrace trace;
    std::vector<double> queue(p.j, 0.0);
    for (int k = 1; k <= p.k; ++k) {
        MvaStep step;
        step.sojourn.resize(p.j);
        double denom = 0.0;
        for (int i = 0; i < p.j; ++i) {
            if (p.single[i]) {
                const double residual = corrected ? p.a[i] : 1.0;
                step.sojourn[i] = p.mean[i] * (residual + queue[i]);
            } else {
                step.sojourn[i] = p.mean[i];
            }
            denom += p.eta[i] * step.sojourn[i];
        }
        step.lambda = k / denom;
        step.queue.resize(p.j);
        for (int i = 0; i < p.j; ++i) step.queue[i] = p.eta[i] * step.lambda * step.sojourn[i];
        queue = step.queue;
        trace.steps.push_back(std::move(step));
    }
    trace.lambda_total = trace.steps.back().lambda;
    trace.lambda_node.resize(p.j);
    for (int i = 0; i < p.j; ++i) trace.lambda_node[i] = p.eta[i] * trace.lambda_total;
    trace.idle1 = clamped_idle(trace.lambda_node[0], p.mean[0]);
    return trace;
}

// Shared bisection of the summation method. f_single(i, rho) is the mean
// queue-size formula for a busy single server.
SumResult run_summation(const Prepared& p, double eps,
                        const std::function<double(int, double)>& f_single) {
    double hi = std::numeric_limits<double>::infinity();
    for (int i = 0; i < p.j; ++i) {
        const double servers = p.single[i] ? 1.0 : static_cast<double>(p.k);
        hi = std::min(hi, servers / (p.mean[i] * p.eta[i]));
    }
    auto g = [&](double lambda) {
        double total = 0.0;
        for (int i = 0; i < p.j; ++i) {
            const double rho = lambda * p.eta[i] * p.mean[i];
            total += p.single[i] ? f_single(i, rho) : rho;
        }
        return total;
    };

    SumResult out;
    double lo = 0.0;
    double lambda = 0.0;
    double balance = g(lambda);
    while (std::abs(balance - p.k) > eps) {
        require(out.iterations++ < 100'000, ErrorCode::Nonconvergence,
                "summation bisection did not reach tolerance");
        lambda = 0.5 * (lo + hi);
        balance = g(lambda);
        if (balance > p.k)
            hi = lambda;
        else
            lo = lambda;
    }

    out.lambda_total = lambda;
    out.lambda_node.resize(p.j);
    out.mean_queue.resize(p.j);
    out.mean_sojourn.resize(p.j);
    for (int i = 0; i < p.j; ++i) {
        out.lambda_node[i] = p.eta[i] * lambda;
        const double rho = out.lambda_node[i] * p.mean[i];
        out.mean_queue[i] = p.single[i] ? f_single(i, rho) : rho;
        out.mean_sojourn[i] = out.lambda_node[i] > 0.0 ? out.mean_queue[i] / out.lambda_node[i] : 0.0;
    }
    out.idle1 = throughput_to_idle(out.lambda_node[0], p.mean[0]);
    return out;
}

SumResult exact_single_customer_summary(const NetworkSpec& spec) {
    const Prepared p = prepare(spec, true);
    SumResult out;
    double denom = 0.0;
    for (int i = 0; i < p.j; ++i) denom += p.eta[i] * p.mean[i];
    out.lambda_total = 1.0 / denom;
    out.lambda_node.resize(p.j);
    out.mean_queue.resize(p.j);
    out.mean_sojourn.resize(p.j);
    for (int i = 0; i < p.j; ++i) {
        out.lambda_node[i] = p.eta[i] * out.lambda_total;
        out.mean_sojourn[i] = p.mean[i];
        out.mean_queue[i] = out.lambda_node[i] * p.mean[i];
    }
    out.idle1 = throughput_to_idle(out.lambda_node[0], p.mean[0]);
    return out;
}

// Fixed-point skeleton shared by bott and ebott.
BottResult run_bottleneck(const Prepared& p, double eps,
                          const std::function<double(int, double)>& f_single,
                          const std::function<double(int, double)>& h_single) {
    std::vector<double> servers(p.j);
    std::vector<double> capacity(p.j);
    for (int i = 0; i < p.j; ++i) {
        servers[i] = p.single[i] ? 1.0 : static_cast<double>(p.k);
        capacity[i] = servers[i] / (p.mean[i] * p.eta[i]);
    }
    BottResult out;
    out.bottleneck = static_cast<int>(
        std::min_element(capacity.begin(), capacity.end()) - capacity.begin());
    for (int i = 0; i < p.j; ++i)
        if (i != out.bottleneck &&
            std::abs(capacity[i] - capacity[out.bottleneck]) <= 1e-12 * capacity[out.bottleneck])
            out.tie = true;

    const int b = out.bottleneck;
    double lambda = capacity[b];
    std::vector<double> queue(p.j, 0.0);
    double ratio = 0.0; // K / g(lambda)
    SumResult& s = out.summary;
    for (;;) {
        require(s.iterations++ < 100'000, ErrorCode::Nonconvergence,
                "bottleneck iteration did not reach tolerance");
        double g = 0.0;
        for (int i = 0; i < p.j; ++i) {
            const double rho = lambda * p.eta[i] * p.mean[i];
            queue[i] = p.single[i] ? f_single(i, rho) : rho;
            g += queue[i];
        }
        ratio = p.k / g;
        const double queue_b = queue[b] * ratio;
        const double rho_b = p.single[b] ? h_single(b, queue_b) : queue_b / p.k;
        lambda = rho_b * capacity[b];
        if (std::abs(ratio - 1.0) <= eps) break;
    }

    s.lambda_total = lambda;
    s.lambda_node.resize(p.j);
    s.mean_queue.resize(p.j);
    s.mean_sojourn.resize(p.j);
    for (int i = 0; i < p.j; ++i) {
        s.lambda_node[i] = p.eta[i] * lambda;
        s.mean_queue[i] = queue[i] * std::abs(ratio); // rescale to sum to K
        s.mean_sojourn[i] = s.lambda_node[i] > 0.0 ? s.mean_queue[i] / s.lambda_node[i] : 0.0;
    }
    s.idle1 = throughput_to_idle(s.lambda_node[0], p.mean[0]);
    return out;
}

} // namespace

GnResult gn_exact(const NetworkSpec& spec) {
    const Prepared p = prepare(spec, false);
    require(composition_count(p.j, p.k) <= kMaxStates, ErrorCode::StateSpaceTooLarge,
            "state space exceeds 10^6 states");

    // Log-weights avoid overflow of the normalizing constant. n_j customers
    // contribute n_j log(eta_j mean_j) at a single server and the same minus
    // log(n_j!) at an infinite server.
    std::vector<double> log_visit(p.j);
    for (int i = 0; i < p.j; ++i) log_visit[i] = std::log(p.eta[i] * p.mean[i]);

    std::vector<int> state(p.j, 0);
    double max_logw = -std::numeric_limits<double>::infinity();
    double norm = 0.0;          // sum exp(logw - max)
    double norm_idle = 0.0;     // restricted to n_1 = 0
    std::vector<double> queue_weight(p.j, 0.0);
    double lambda1_weight = 0.0; // sum over states of mu_1(n_1) weight
    std::uint64_t states = 0;

    auto visit = [&](auto&& self, int node, int left, double logw, bool scan) -> void {
        if (node == p.j - 1) {
            const double lw =
                logw + left * log_visit[node] -
                (p.single[node] ? 0.0 : std::lgamma(static_cast<double>(left) + 1.0));
            state[node] = left;
            if (scan) {
                max_logw = std::max(max_logw, lw);
                return;
            }
            const double w = std::exp(lw - max_logw);
            ++states;
            norm += w;
            if (state[0] == 0) norm_idle += w;
            for (int i = 0; i < p.j; ++i) queue_weight[i] += state[i] * w;
            const double rate1 =
                p.single[0] ? (state[0] > 0 ? 1.0 : 0.0) : static_cast<double>(state[0]);
            lambda1_weight += rate1 * w;
            return;
        }
        for (int n = 0; n <= left; ++n) {
            state[node] = n;
            const double lw =
                logw + n * log_visit[node] -
                (p.single[node] ? 0.0 : std::lgamma(static_cast<double>(n) + 1.0));
            self(self, node + 1, left - n, lw, scan);
        }
    };
    visit(visit, 0, p.k, 0.0, true);
    visit(visit, 0, p.k, 0.0, false);

    GnResult out;
    out.state_count = states;
    out.idle1 = norm_idle / norm;
    const double lambda1 = (lambda1_weight / norm) / p.mean[0];
    out.lambda_total = lambda1 / p.eta[0];
    out.lambda_node.resize(p.j);
    out.mean_queue.resize(p.j);
    for (int i = 0; i < p.j; ++i) {
        out.lambda_node[i] = p.eta[i] * out.lambda_total;
        out.mean_queue[i] = queue_weight[i] / norm;
    }
    return out;
}

MvaTrace mva(const NetworkSpec& spec) { return mva_recursion(spec, false); }

MvaTrace gmva(const NetworkSpec& spec) { return mva_recursion(spec, true); }

SumResult sum_method(const NetworkSpec& spec, double eps) {
    const Prepared p = prepare(spec, true);
    const double shrink = static_cast<double>(p.k - 1) / p.k;
    return run_summation(p, eps, [shrink](int, double rho) {
        return rho / (1.0 - shrink * rho);
    });
}

SumResult esum(const NetworkSpec& spec, double eps) {
    if (spec.population == 1) return exact_single_customer_summary(spec);
    const Prepared p = prepare(spec, true);
    const std::vector<double> a = p.a;
    const int k = p.k;
    return run_summation(p, eps, [a, k](int i, double rho) {
        const double b = (k - 1 - a[i]) / (k - 1);
        return rho + rho * rho * a[i] / (1.0 - b * rho);
    });
}

BottResult bott(const NetworkSpec& spec, double eps) {
    const Prepared p = prepare(spec, true);
    const double shrink = static_cast<double>(p.k - 1) / p.k;
    return run_bottleneck(
        p, eps,
        [shrink](int, double rho) { return rho / (1.0 - shrink * rho); },
        [shrink](int, double queue) { return queue / (1.0 + shrink * queue); });
}

BottResult ebott(const NetworkSpec& spec, double eps) {
    if (spec.population == 1) {
        BottResult out;
        out.summary = exact_single_customer_summary(spec);
        return out;
    }
    const Prepared p = prepare(spec, true);
    const std::vector<double> a = p.a;
    const int k = p.k;
    auto f = [a, k](int i, double rho) {
        const double b = (k - 1 - a[i]) / (k - 1);
        return rho + rho * rho * a[i] / (1.0 - b * rho);
    };
    auto h = [a, k](int i, double queue) {
        const double b = (k - 1 - a[i]) / (k - 1);
        if (std::abs(a[i] - b) < 1e-12) return queue / (1.0 + b * queue); // quadratic degenerates
        const double lin = 1.0 + b * queue;
        return (-lin + std::sqrt(lin * lin + 4.0 * queue * (a[i] - b))) / (2.0 * (a[i] - b));
    };
    return run_bottleneck(p, eps, f, h);
}

} // namespace haulnet
