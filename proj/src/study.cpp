#include "haulnet/study.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "haulnet/errors.hpp"
#include "haulnet/flow.hpp"
#include "haulnet/pfa.hpp"
#include "haulnet/stst.hpp"

namespace haulnet {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct AlgorithmInfo {
    Algorithm algorithm;
    const char* id;
    const char* label;
};

constexpr AlgorithmInfo kAlgorithms[] = {
    {Algorithm::Stst, "stst", "ST&ST"},
    {Algorithm::StstM, "stst-m", "ST&ST-m"},
    {Algorithm::Mva, "mva", "MVA"},
    {Algorithm::Gmva, "gmva", "GMVA"},
    {Algorithm::Sum, "sum", "SUM"},
    {Algorithm::Esum, "esum", "ESUM"},
    {Algorithm::Bott, "bott", "BOTT"},
    {Algorithm::Ebott, "ebott", "EBOTT"},
    {Algorithm::Flow, "flow", "FLOW"},
    {Algorithm::GnExact, "gn-exact", "GN-exact"},
    {Algorithm::Sim, "sim", "simulation"},
};

const AlgorithmInfo& info_for(Algorithm a) {
    for (const AlgorithmInfo& info : kAlgorithms)
        if (info.algorithm == a) return info;
    throw Error(ErrorCode::InvalidConfig, "unknown algorithm");
}

double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

std::string fmt_full(double x) {
    if (std::isnan(x)) return "ERR";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt3(double x) {
    if (std::isnan(x)) return "ERR";
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.3f", round3(x));
    return buf;
}

json require_field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key))
        throw Error(ErrorCode::ValidationError, "missing field " + path + key);
    return obj.at(key);
}

double positive_number(const json& value, const std::string& path) {
    if (!value.is_number() || value.get<double>() <= 0.0)
        throw Error(ErrorCode::ValidationError, path + " must be a positive number");
    return value.get<double>();
}

std::array<double, 4> cycle_means(const NetworkSpec& spec) {
    require(spec.size() == 4, ErrorCode::InvalidConfig,
            "the flow approximation covers the 4-stage cycle only");
    return {spec.nodes[0].service.mean, spec.nodes[1].service.mean, spec.nodes[2].service.mean,
            spec.nodes[3].service.mean};
}

} // namespace

std::string algorithm_id(Algorithm a) { return info_for(a).id; }

std::string algorithm_label(Algorithm a) { return info_for(a).label; }

Algorithm parse_algorithm(const std::string& id) {
    for (const AlgorithmInfo& info : kAlgorithms)
        if (id == info.id) return info.algorithm;
    throw Error(ErrorCode::ValidationError, "unknown algorithm id '" + id + "'");
}

StudyConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }

    StudyConfig cfg;
    const json network = require_field(root, "network", "");
    const json nodes = require_field(network, "nodes", "network.");
    if (!nodes.is_array() || nodes.empty())
        throw Error(ErrorCode::ValidationError, "network.nodes must be a non-empty array");

    std::vector<NodeSpec> specs;
    int index = 0;
    for (const json& node : nodes) {
        const std::string path = "network.nodes[" + std::to_string(index) + "].";
        NodeSpec ns;
        const std::string kind = require_field(node, "kind", path).get<std::string>();
        if (kind == "single")
            ns.kind = NodeKind::SingleServerFcfs;
        else if (kind == "infinite")
            ns.kind = NodeKind::InfiniteServer;
        else
            throw Error(ErrorCode::ValidationError, path + "kind must be 'single' or 'infinite'");
        ns.service.mean = positive_number(require_field(node, "mean", path), path + "mean");
        const json cv = require_field(node, "cv", path);
        if (!cv.is_number() || cv.get<double>() < 0.0)
            throw Error(ErrorCode::ValidationError, path + "cv must be nonnegative");
        const double sd = ns.service.mean * cv.get<double>();
        ns.service.variance = sd * sd;
        if (node.contains("label")) ns.label = node.at("label").get<std::string>();
        specs.push_back(std::move(ns));
        ++index;
    }
    cfg.network = NetworkSpec::cycle(std::move(specs), 1);

    if (root.contains("disturbance") && !root.at("disturbance").is_null()) {
        const json dist = root.at("disturbance");
        DisturbanceSpec d;
        d.alpha = 1.0 / positive_number(require_field(dist, "mean_uptime", "disturbance."),
                                        "disturbance.mean_uptime");
        d.beta = 1.0 / positive_number(require_field(dist, "mean_repair", "disturbance."),
                                       "disturbance.mean_repair");
        cfg.disturbance = d;
    }

    const json krange = require_field(root, "k_range", "");
    if (!krange.is_array() || krange.size() != 2 || !krange[0].is_number_integer() ||
        !krange[1].is_number_integer())
        throw Error(ErrorCode::ValidationError, "k_range must be [kmin, kmax]");
    cfg.kmin = krange[0].get<int>();
    cfg.kmax = krange[1].get<int>();
    if (cfg.kmin < 1 || cfg.kmax < cfg.kmin)
        throw Error(ErrorCode::ValidationError, "k_range must satisfy 1 <= kmin <= kmax");

    const json algorithms = require_field(root, "algorithms", "");
    if (!algorithms.is_array() || algorithms.empty())
        throw Error(ErrorCode::ValidationError, "algorithms must be a non-empty array");
    for (const json& a : algorithms) cfg.algorithms.push_back(parse_algorithm(a.get<std::string>()));

    for (Algorithm a : cfg.algorithms) {
        if (a == Algorithm::StstM && !cfg.disturbance)
            throw Error(ErrorCode::ValidationError,
                        "algorithms: stst-m requires a disturbance block");
        if (a == Algorithm::GnExact) {
            double states = 1.0; // C(kmax + J - 1, J - 1)
            const int j = static_cast<int>(cfg.network.nodes.size());
            for (int i = 1; i <= j - 1; ++i)
                states *= static_cast<double>(cfg.kmax + i) / static_cast<double>(i);
            if (states > 1.0e6)
                throw Error(ErrorCode::ValidationError,
                            "algorithms: gn-exact state space exceeds 10^6 at kmax");
        }
    }

    if (root.contains("simulation")) {
        const json sim = root.at("simulation");
        if (sim.contains("horizon"))
            cfg.simulation.horizon = positive_number(sim.at("horizon"), "simulation.horizon");
        if (sim.contains("warmup")) {
            cfg.simulation.warmup = sim.at("warmup").get<double>();
            if (cfg.simulation.warmup < 0.0 || cfg.simulation.warmup >= cfg.simulation.horizon)
                throw Error(ErrorCode::ValidationError,
                            "simulation.warmup must lie in [0, horizon)");
        }
        if (sim.contains("seed")) cfg.simulation.seed = sim.at("seed").get<std::uint64_t>();
    }

    if (root.contains("output")) {
        const json output = root.at("output");
        if (output.contains("format")) {
            const std::string format = output.at("format").get<std::string>();
            if (format == "csv")
                cfg.output.format = OutputFormat::Csv;
            else if (format == "markdown")
                cfg.output.format = OutputFormat::Markdown;
            else
                throw Error(ErrorCode::ValidationError, "output.format must be csv or markdown");
        }
        if (output.contains("path")) cfg.output.path = output.at("path").get<std::string>();
    }
    return cfg;
}

StudyConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open config file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string config_to_json(const StudyConfig& cfg) {
    json root;
    json nodes = json::array();
    for (const NodeSpec& node : cfg.network.nodes) {
        json n;
        n["kind"] = node.kind == NodeKind::SingleServerFcfs ? "single" : "infinite";
        n["mean"] = node.service.mean;
        n["cv"] = node.service.mean > 0.0 ? node.service.sd() / node.service.mean : 0.0;
        if (!node.label.empty()) n["label"] = node.label;
        nodes.push_back(n);
    }
    root["network"]["nodes"] = nodes;
    if (cfg.disturbance) {
        root["disturbance"]["mean_uptime"] = 1.0 / cfg.disturbance->alpha;
        root["disturbance"]["mean_repair"] = 1.0 / cfg.disturbance->beta;
    }
    root["k_range"] = {cfg.kmin, cfg.kmax};
    json algorithms = json::array();
    for (Algorithm a : cfg.algorithms) algorithms.push_back(algorithm_id(a));
    root["algorithms"] = algorithms;
    root["simulation"]["horizon"] = cfg.simulation.horizon;
    root["simulation"]["warmup"] = cfg.simulation.warmup;
    root["simulation"]["seed"] = cfg.simulation.seed;
    root["output"]["format"] = cfg.output.format == OutputFormat::Csv ? "csv" : "markdown";
    root["output"]["path"] = cfg.output.path;
    return root.dump(2) + "\n";
}

StudyConfig base_scenario() {
    StudyConfig cfg;
    cfg.network = NetworkSpec::cycle(
        {
            {NodeKind::SingleServerFcfs, {1.5, 0.140625}, "loading"},
            {NodeKind::InfiniteServer, {6.0, 1.44}, "travel loaded"},
            {NodeKind::SingleServerFcfs, {1.0, 0.01}, "unloading"},
            {NodeKind::InfiniteServer, {4.0, 0.64}, "travel empty"},
        },
        1);
    cfg.kmin = 1;
    cfg.kmax = 10;
    cfg.algorithms = {Algorithm::Sim,  Algorithm::Flow, Algorithm::Mva,  Algorithm::Stst,
                      Algorithm::Gmva, Algorithm::Esum, Algorithm::Ebott};
    cfg.output.path = "table_base";
    return cfg;
}

StudyConfig disturbed_scenario() {
    StudyConfig cfg = base_scenario();
    cfg.disturbance = DisturbanceSpec{1.0 / 300.0, 1.0 / 30.0};
    cfg.algorithms.push_back(Algorithm::StstM);
    cfg.output.path = "table_disturbed";
    return cfg;
}

NetworkSpec analytic_network(const StudyConfig& cfg) {
    if (!cfg.disturbance) return cfg.network;
    const ModifiedServiceMoments mod =
        modified_service_moments(cfg.network.nodes.at(0).service, *cfg.disturbance);
    return cfg.network.with_node_service(0, mod.modified);
}

double idle_cell(Algorithm a, const StudyConfig& cfg, int k) {
    // In a disturbance study the general-purpose algorithms run on the
    // breakdown-modified moments; stst-m runs on the undisturbed moments plus
    // the rates; the simulator applies the mechanism itself.
    const NetworkSpec analytic = analytic_network(cfg).with_population(k);
    switch (a) {
        case Algorithm::Stst: return stst(analytic).idle1;
        case Algorithm::StstM:
            require(cfg.disturbance.has_value(), ErrorCode::InvalidConfig,
                    "stst-m requires a disturbance");
            return stst_m(cfg.network.with_population(k), *cfg.disturbance).idle1;
        case Algorithm::Mva: return mva(analytic).idle1;
        case Algorithm::Gmva: return gmva(analytic).idle1;
        case Algorithm::Sum: return sum_method(analytic).idle1;
        case Algorithm::Esum: return esum(analytic).idle1;
        case Algorithm::Bott: return bott(analytic).summary.idle1;
        case Algorithm::Ebott: return ebott(analytic).summary.idle1;
        case Algorithm::Flow: return flow_closed_form(cycle_means(analytic), k).idle1;
        case Algorithm::GnExact: return gn_exact(analytic).idle1;
        case Algorithm::Sim: {
            SimConfig sim_cfg;
            sim_cfg.network = cfg.network.with_population(k);
            sim_cfg.disturbance = cfg.disturbance;
            sim_cfg.horizon = cfg.simulation.horizon;
            sim_cfg.warmup = cfg.simulation.warmup;
            sim_cfg.seed = cfg.simulation.seed ^ static_cast<std::uint64_t>(k);
            return simulate(sim_cfg).idle1;
        }
    }
    throw Error(ErrorCode::InvalidConfig, "unknown algorithm");
}

namespace {

PerfRow perf_row(Algorithm a, const StudyConfig& cfg, int k) {
    const NetworkSpec analytic = analytic_network(cfg).with_population(k);
    const int j = analytic.size();
    PerfRow row;
    auto from_lambda1 = [&](double idle, double lambda1) {
        row.idle1 = idle;
        row.lambda_total = lambda1 * j; // cyclic network: equal visit ratios
        row.lambda_node.assign(j, lambda1);
    };
    auto from_summary = [&](const SumResult& s) {
        row.idle1 = s.idle1;
        row.lambda_total = s.lambda_total;
        row.lambda_node = s.lambda_node;
        row.mean_queue = s.mean_queue;
        row.mean_sojourn = s.mean_sojourn;
    };
    switch (a) {
        case Algorithm::Stst: {
            const StStReport r = stst(analytic);
            from_lambda1(r.idle1, r.lambda1);
            break;
        }
        case Algorithm::StstM: {
            const StStmReport r = stst_m(cfg.network.with_population(k), *cfg.disturbance);
            from_lambda1(r.idle1, r.base.lambda1 * r.psi);
            break;
        }
        case Algorithm::Mva:
        case Algorithm::Gmva: {
            const MvaTrace trace = a == Algorithm::Mva ? mva(analytic) : gmva(analytic);
            row.idle1 = trace.idle1;
            row.lambda_total = trace.lambda_total;
            row.lambda_node = trace.lambda_node;
            row.mean_queue = trace.steps.back().queue;
            row.mean_sojourn = trace.steps.back().sojourn;
            break;
        }
        case Algorithm::Sum: from_summary(sum_method(analytic)); break;
        case Algorithm::Esum: from_summary(esum(analytic)); break;
        case Algorithm::Bott: from_summary(bott(analytic).summary); break;
        case Algorithm::Ebott: from_summary(ebott(analytic).summary); break;
        case Algorithm::Flow: {
            const FlowReport r = flow_closed_form(cycle_means(analytic), k);
            from_lambda1(r.idle1, r.lambda1);
            break;
        }
        case Algorithm::GnExact: {
            const GnResult r = gn_exact(analytic);
            row.idle1 = r.idle1;
            row.lambda_total = r.lambda_total;
            row.lambda_node = r.lambda_node;
            row.mean_queue = r.mean_queue;
            row.mean_sojourn.resize(j);
            for (int i = 0; i < j; ++i)
                row.mean_sojourn[i] =
                    r.lambda_node[i] > 0.0 ? r.mean_queue[i] / r.lambda_node[i] : 0.0;
            break;
        }
        case Algorithm::Sim: {
            SimConfig sim_cfg;
            sim_cfg.network = cfg.network.with_population(k);
            sim_cfg.disturbance = cfg.disturbance;
            sim_cfg.horizon = cfg.simulation.horizon;
            sim_cfg.warmup = cfg.simulation.warmup;
            sim_cfg.seed = cfg.simulation.seed ^ static_cast<std::uint64_t>(k);
            const SimEstimate est = simulate(sim_cfg);
            row.idle1 = est.idle1;
            row.lambda_node = est.lambda_node; // empirical, not rescaled
            row.lambda_total = 0.0;
            for (double l : est.lambda_node) row.lambda_total += l;
            row.mean_queue = est.mean_queue;
            row.mean_sojourn = est.mean_sojourn;
            break;
        }
    }
    return row;
}

} // namespace

PerfReport perf_report(Algorithm a, const StudyConfig& cfg, int kmin, int kmax) {
    require(kmin >= 1 && kmax >= kmin, ErrorCode::InvalidConfig, "invalid population range");
    PerfReport report;
    report.algorithm = algorithm_id(a);
    for (int k = kmin; k <= kmax; ++k) report.per_k.emplace(k, perf_row(a, cfg, k));
    return report;
}

ComparisonTable run_study(const StudyConfig& cfg) {
    ComparisonTable table;
    table.kmin = cfg.kmin;
    table.kmax = cfg.kmax;
    const int cols = cfg.kmax - cfg.kmin + 1;

    for (Algorithm a : cfg.algorithms) {
        table.row_labels.push_back(algorithm_label(a));
        std::vector<double> row(cols, kNaN);
        for (int k = cfg.kmin; k <= cfg.kmax; ++k) {
            try {
                row[k - cfg.kmin] = idle_cell(a, cfg, k);
            } catch (const Error& e) {
                table.diagnostics.push_back(algorithm_label(a) + " K=" + std::to_string(k) +
                                            ": " + e.what());
            }
        }
        if (a == Algorithm::Sim) table.sim_row = row;
        table.values.push_back(std::move(row));
    }

    if (table.sim_row) {
        const std::vector<double>& sim = *table.sim_row;
        for (std::size_t i = 0; i < table.values.size(); ++i) {
            const bool is_sim = table.row_labels[i] == algorithm_label(Algorithm::Sim);
            std::vector<double> abs_err, signed_err;
            if (!is_sim) {
                for (int c = 0; c < cols; ++c) {
                    const double d = table.values[i][c] - sim[c];
                    signed_err.push_back(d);
                    abs_err.push_back(std::abs(d));
                }
            }
            table.abs_errors.push_back(std::move(abs_err));
            table.signed_errors.push_back(std::move(signed_err));
        }
        // best marker = minimal rounded error per column, ties all marked
        table.best_per_k.assign(table.values.size(), std::vector<bool>(cols, false));
        for (int c = 0; c < cols; ++c) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < table.values.size(); ++i)
                if (!table.abs_errors[i].empty() && !std::isnan(table.abs_errors[i][c]))
                    best = std::min(best, round3(table.abs_errors[i][c]));
            if (!std::isfinite(best)) continue;
            for (std::size_t i = 0; i < table.values.size(); ++i)
                if (!table.abs_errors[i].empty() && !std::isnan(table.abs_errors[i][c]) &&
                    round3(table.abs_errors[i][c]) == best)
                    table.best_per_k[i][c] = true;
        }
    }
    return table;
}

namespace {

std::string csv_header(const ComparisonTable& table) {
    std::string line = "algorithm";
    for (int k = table.kmin; k <= table.kmax; ++k) line += ",K=" + std::to_string(k);
    return line + "\n";
}

} // namespace

std::string table_to_csv(const ComparisonTable& table) {
    std::string out = csv_header(table);
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        out += table.row_labels[i];
        for (double v : table.values[i]) out += "," + fmt_full(v);
        out += "\n";
    }
    return out;
}

std::string errors_to_csv(const ComparisonTable& table, bool absolute) {
    std::string out = csv_header(table);
    const auto& rows = absolute ? table.abs_errors : table.signed_errors;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].empty()) continue;
        out += table.row_labels[i];
        for (double v : rows[i]) out += "," + fmt_full(v);
        out += "\n";
    }
    return out;
}

std::string table_to_markdown(const ComparisonTable& table) {
    std::string out = "| |";
    for (int k = table.kmin; k <= table.kmax; ++k) out += " K=" + std::to_string(k) + " |";
    out += "\n|---|";
    for (int k = table.kmin; k <= table.kmax; ++k) out += "---|";
    out += "\n";
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        out += "| " + table.row_labels[i] + " |";
        for (double v : table.values[i]) out += " " + fmt3(v) + " |";
        out += "\n";
    }
    return out;
}

std::string errors_to_markdown(const ComparisonTable& table) {
    std::string out = "| |";
    for (int k = table.kmin; k <= table.kmax; ++k) out += " K=" + std::to_string(k) + " |";
    out += "\n|---|";
    for (int k = table.kmin; k <= table.kmax; ++k) out += "---|";
    out += "\n";
    for (std::size_t i = 0; i < table.abs_errors.size(); ++i) {
        if (table.abs_errors[i].empty()) continue;
        out += "| " + table.row_labels[i] + " |";
        for (std::size_t c = 0; c < table.abs_errors[i].size(); ++c) {
            const std::string cell = fmt3(table.abs_errors[i][c]);
            out += table.best_per_k[i][c] ? " **" + cell + "** |" : " " + cell + " |";
        }
        out += "\n";
    }
    return out;
}

void emit(const ComparisonTable& table, OutputFormat format, const std::string& path) {
    auto write = [](const std::string& file, const std::string& text) {
        std::ofstream out(file, std::ios::binary);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + file);
        out << text;
        if (!out) throw Error(ErrorCode::IoError, "failed writing " + file);
    };
    if (format == OutputFormat::Csv) {
        write(path + ".csv", table_to_csv(table));
        if (!table.abs_errors.empty()) {
            write(path + "_abserr.csv", errors_to_csv(table, true));
            write(path + "_signederr.csv", errors_to_csv(table, false));
        }
    } else {
        std::string text = table_to_markdown(table);
        if (!table.abs_errors.empty())
            text += "\nAbsolute errors against the simulation row:\n\n" + errors_to_markdown(table);
        write(path + ".md", text);
    }
}

} // namespace haulnet
