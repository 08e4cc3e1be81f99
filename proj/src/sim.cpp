#include "haulnet/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <random>
#include <vector>

#include "haulnet/errors.hpp"

namespace haulnet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Event {
    double time = 0.0;
    std::uint64_t seq = 0; // insertion order breaks time ties deterministically
    int node = 0;
    int customer = 0;
};

struct EventLater {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.seq > b.seq;
    }
};

struct NodeState {
    std::deque<int> queue;   // waiting + in service (single server only)
    long occupancy = 0;
    double empty_time = 0.0; // accumulated inside the window
    double busy_time = 0.0;
    double queue_area = 0.0; // integral of occupancy
    double sojourn_sum = 0.0;
    std::uint64_t completed = 0;
    std::uint64_t departures_window = 0;
    std::uint64_t departures_total = 0;
    std::uint64_t arrivals = 0;
};

class Engine {
  public:
    explicit Engine(const SimConfig& config) : cfg_(config) {
        const int j = cfg_.network.size();
        require(j >= 2, ErrorCode::InvalidConfig, "need at least two nodes");
        require(cfg_.network.population >= 1, ErrorCode::InvalidConfig, "population must be >= 1");
        require(cfg_.horizon > cfg_.warmup && cfg_.warmup >= 0.0, ErrorCode::InvalidConfig,
                "horizon must exceed warmup");
        for (const NodeSpec& node : cfg_.network.nodes)
            require(node.service.mean > 0.0 && node.service.variance >= 0.0,
                    ErrorCode::InvalidConfig, "invalid service moments");
        if (cfg_.disturbance) {
            require(cfg_.disturbance->alpha > 0.0 && cfg_.disturbance->beta > 0.0,
                    ErrorCode::InvalidConfig, "disturbance rates must be positive");
            require(cfg_.network.nodes[0].kind == NodeKind::SingleServerFcfs,
                    ErrorCode::InvalidConfig, "breakdowns act on the single-server node 1");
        }
        nodes_.resize(j);
        arrival_time_.assign(static_cast<std::size_t>(cfg_.network.population), 0.0);
        for (int i = 0; i < j; ++i) {
            node_rng_.emplace_back(splitmix64(cfg_.seed ^ (0x100ULL + static_cast<std::uint64_t>(i))));
            node_normal_.emplace_back(0.0, 1.0);
        }
        routing_rng_.seed(splitmix64(cfg_.seed ^ 0xabcdULL));
        cyclic_ = cfg_.network.routing.is_cyclic_shift();
    }

    SimEstimate run() {
        const int k = cfg_.network.population;
        // full node 1 at time zero
        nodes_[0].occupancy = k;
        for (int c = 0; c < k; ++c) nodes_[0].queue.push_back(c);
        start_service(0);

        while (!events_.empty() && events_.top().time <= cfg_.horizon) {
            const Event ev = events_.top();
            events_.pop();
            advance(ev.time);
            depart(ev);
        }
        advance(cfg_.horizon);
        return collect();
    }

  private:
    void advance(double t) {
        const double from = std::max(clock_, cfg_.warmup);
        const double to = std::min(t, cfg_.horizon);
        if (to > from) {
            const double dt = to - from;
            for (NodeState& node : nodes_) {
                node.queue_area += dt * static_cast<double>(node.occupancy);
                if (node.occupancy == 0)
                    node.empty_time += dt;
                else
                    node.busy_time += dt;
            }
        }
        clock_ = t;
    }

    double draw_service(int node) {
        const MomentPair& service = cfg_.network.nodes[node].service;
        double s;
        ++total_draws_;
        if (service.variance == 0.0) {
            s = service.mean;
        } else {
            s = node_normal_[node](node_rng_[node]) * service.sd() + service.mean;
            if (s < 0.0) {
                ++neg_samples_;
                s = 0.0;
            }
        }
        if (node == 0 && cfg_.disturbance) {
            // one uptime clock and one repair draw per service; the repair
            // extends the occupation only when the clock rings mid-service
            std::exponential_distribution<double> exp_up(cfg_.disturbance->alpha);
            std::exponential_distribution<double> exp_repair(cfg_.disturbance->beta);
            const double x = exp_up(node_rng_[node]);
            const double y = exp_repair(node_rng_[node]);
            if (x < s) s += y;
        }
        return s;
    }

    void schedule(int node, int customer, double when) {
        events_.push(Event{when, next_seq_++, node, customer});
    }

    // begin service for the head-of-line customer at a single-server node
    void start_service(int node) {
        NodeState& st = nodes_[node];
        if (st.queue.empty()) return;
        schedule(node, st.queue.front(), clock_ + draw_service(node));
    }

    void arrive(int node, int customer) {
        NodeState& st = nodes_[node];
        ++st.arrivals;
        ++st.occupancy;
        arrival_time_[customer] = clock_;
        if (cfg_.network.nodes[node].kind == NodeKind::SingleServerFcfs) {
            st.queue.push_back(customer);
            if (st.occupancy == 1) start_service(node);
        } else {
            schedule(node, customer, clock_ + draw_service(node));
        }
    }

    void depart(const Event& ev) {
        ++event_count_;
        NodeState& st = nodes_[ev.node];
        --st.occupancy;
        ++st.departures_total;
        if (ev.time > cfg_.warmup) {
            ++st.departures_window;
            st.sojourn_sum += ev.time - arrival_time_[ev.customer];
            ++st.completed;
        }
        if (cfg_.network.nodes[ev.node].kind == NodeKind::SingleServerFcfs) {
            st.queue.pop_front();
            start_service(ev.node);
        }
        arrive(next_node(ev.node), ev.customer);
    }

    int next_node(int from) {
        if (cyclic_) return (from + 1) % cfg_.network.size();
        const auto& row = cfg_.network.routing.r;
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        double u = uniform(routing_rng_);
        for (int to = 0; to < cfg_.network.size(); ++to) {
            u -= row(from, to);
            if (u <= 0.0) return to;
        }
        return cfg_.network.size() - 1;
    }

    SimEstimate collect() const {
        const int j = cfg_.network.size();
        const double window = cfg_.horizon - cfg_.warmup;
        SimEstimate est;
        est.window = window;
        est.idle1 = nodes_[0].empty_time / window;
        est.busy_time1 = nodes_[0].busy_time;
        est.neg_sample_count = neg_samples_;
        est.total_draws = total_draws_;
        est.event_count = event_count_;
        for (int i = 0; i < j; ++i) {
            const NodeState& st = nodes_[i];
            est.lambda_node.push_back(static_cast<double>(st.departures_window) / window);
            est.mean_queue.push_back(st.queue_area / window);
            est.mean_sojourn.push_back(
                st.completed > 0 ? st.sojourn_sum / static_cast<double>(st.completed) : 0.0);
            est.departures.push_back(st.departures_window);
            est.departures_total.push_back(st.departures_total);
            est.arrivals.push_back(st.arrivals);
        }
        return est;
    }

    SimConfig cfg_;
    std::vector<NodeState> nodes_;
    std::vector<double> arrival_time_;
    std::vector<std::mt19937_64> node_rng_;
    std::vector<std::normal_distribution<double>> node_normal_;
    std::mt19937_64 routing_rng_;
    bool cyclic_ = false;
    std::priority_queue<Event, std::vector<Event>, EventLater> events_;
    double clock_ = 0.0;
    std::uint64_t next_seq_ = 0;
    std::uint64_t event_count_ = 0;
    std::uint64_t neg_samples_ = 0;
    std::uint64_t total_draws_ = 0;
};

} // namespace

SimEstimate simulate(const SimConfig& config) { return Engine(config).run(); }

std::vector<SimEstimate> sweep(const SimConfig& base, int kmin, int kmax) {
    require(kmin >= 1 && kmax >= kmin, ErrorCode::InvalidConfig, "invalid population range");
    std::vector<SimEstimate> out;
    for (int k = kmin; k <= kmax; ++k) {
        SimConfig cfg = base;
        cfg.network = base.network.with_population(k);
        cfg.seed = base.seed ^ static_cast<std::uint64_t>(k);
        out.push_back(simulate(cfg));
    }
    return out;
}

} // namespace haulnet
