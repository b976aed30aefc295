// Copyright 2026 The AWQV Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Batch experiment harness: instance suites, per-method runners with the
 * default optimization settings, metric rows, CSV output and summaries.
 *
 * Output layout of run_suite():
 *   <out>/instances/<id>.json        graph files
 *   <out>/traces/<id>__<tag>.jsonl   one trace per quantum run
 *   <out>/metrics.csv                one row per (instance, method)
 *   <out>/timings.csv                wall-clock per run (not deterministic)
 *   <out>/summary.json               mean/min p_gs and failure counts
 */
#pragma once

#include "ansatz.hpp"
#include "awqv.hpp"
#include "error.hpp"
#include "gw.hpp"
#include "io.hpp"
#include "metrics.hpp"
#include "optimize.hpp"
#include "problem.hpp"
#include "qite.hpp"
#include "statevec.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace awqv {

namespace fs = std::filesystem;

/**
 * @brief Stable 64-bit seed from (global seed, suite, index, tag).
 *
 * FNV-1a over "<global>|<suite>|<index>|<tag>" followed by the splitmix64
 * finalizer. The derivation is part of the file-format contract: changing it
 * changes every generated instance.
 */
inline std::uint64_t derive_seed(std::uint64_t global, const std::string &suite,
                                 std::size_t index, const std::string &tag) {
    const std::string key = std::to_string(global) + "|" + suite + "|" +
                            std::to_string(index) + "|" + tag;
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : key) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    h += 0x9e3779b97f4a7c15ULL;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    return h ^ (h >> 31);
}

enum class MethodKind { Awqv, Qiv, Vqe, Cqite, Qite, Gw };

inline std::string to_string(MethodKind m) {
    switch (m) {
    case MethodKind::Awqv:
        return "awqv";
    case MethodKind::Qiv:
        return "qiv";
    case MethodKind::Vqe:
        return "vqe";
    case MethodKind::Cqite:
        return "cqite";
    case MethodKind::Qite:
        return "qite";
    case MethodKind::Gw:
        break;
    }
    return "gw";
}

inline MethodKind parse_method_kind(std::string_view s) {
    for (auto m : {MethodKind::Awqv, MethodKind::Qiv, MethodKind::Vqe,
                   MethodKind::Cqite, MethodKind::Qite, MethodKind::Gw}) {
        if (s == to_string(m)) {
            return m;
        }
    }
    throw InputError("unknown method: " + std::string(s));
}

enum class InitialState { Plus, ZeroPlus };

inline StateVector make_initial_state(InitialState s, std::size_t n) {
    return s == InitialState::Plus ? plus_state(n) : zero_plus_state(n);
}

/// Fully resolved settings for one method of a suite.
struct MethodSpec {
    std::string tag;
    MethodKind kind{MethodKind::Awqv};
    AnsatzVariant ansatz{AnsatzVariant::P2A};
    double eta{0.05}; ///< learning rate or imaginary time step
    std::size_t iters{50};
    double mu{0.9};
    double lambda{1.0};
    std::size_t samples{10};
    OptimizerKind optimizer{OptimizerKind::GD};
    VqeInit init{VqeInit::SingleQiteStep};
    InitialState initial{InitialState::Plus};
    GradientMethod gradient{GradientMethod::Adjoint};
    GwOptions gw{};
};

/**
 * @brief Resolves "<method>-<ansatz>" (or "gw") to default settings.
 *
 * Defaults: eta = dtau = 0.05 and 50 iterations, except cqite-p1a which uses
 * dtau = 0.10 from |0>|+>^(n-1); mu = 0.9 on unweighted graphs and 0.8 on
 * weighted ones; lambda = 1; VQE starts from a single QITE step.
 */
inline MethodSpec default_method(const std::string &tag, bool weighted) {
    MethodSpec m;
    m.tag = tag;
    const auto dash = tag.find('-');
    m.kind = parse_method_kind(tag.substr(0, dash));
    if (m.kind == MethodKind::Gw) {
        detail::require(dash == std::string::npos, "gw takes no ansatz suffix");
        return m;
    }
    detail::require(dash != std::string::npos,
                    "method tag needs an ansatz suffix: " + tag);
    m.ansatz = parse_ansatz_variant(tag.substr(dash + 1));
    detail::require(m.ansatz != AnsatzVariant::Custom,
                    "custom ansatz is not available from a method tag");
    m.mu = weighted ? 0.8 : 0.9;
    if (m.kind == MethodKind::Cqite && m.ansatz == AnsatzVariant::P1A) {
        m.eta = 0.10;
        m.initial = InitialState::ZeroPlus;
    }
    return m;
}

/// Applies optional overrides from a method object in a config file.
inline void apply_overrides(MethodSpec &m, const json &j) {
    m.eta = j.value("eta", m.eta);
    m.iters = j.value("iters", m.iters);
    m.mu = j.value("mu", m.mu);
    m.lambda = j.value("lambda", m.lambda);
    m.samples = j.value("samples", m.samples);
    if (j.contains("optimizer")) {
        m.optimizer = parse_optimizer(j.at("optimizer").get<std::string>());
    }
    if (j.contains("init")) {
        const auto s = j.at("init").get<std::string>();
        detail::require(s == "zero" || s == "qite", "init must be zero or qite");
        m.init = s == "zero" ? VqeInit::Zero : VqeInit::SingleQiteStep;
    }
    if (j.contains("initial_state")) {
        const auto s = j.at("initial_state").get<std::string>();
        detail::require(s == "plus" || s == "zero-plus",
                        "initial_state must be plus or zero-plus");
        m.initial = s == "plus" ? InitialState::Plus : InitialState::ZeroPlus;
    }
    if (j.contains("gradient")) {
        m.gradient = parse_gradient_method(j.at("gradient").get<std::string>());
    }
    m.gw.rank = j.value("rank", m.gw.rank);
    m.gw.restarts = j.value("restarts", m.gw.restarts);
    m.gw.iters = j.value("gw_iters", m.gw.iters);
}

struct GraphFamily {
    GraphModel model{GraphModel::Regular};
    std::size_t n{12};
    std::size_t d{3};
    double p{0.5};
    std::size_t count{1};
    std::vector<std::string> paths; ///< explicit graph files ("files" family)

    [[nodiscard]] bool from_files() const { return !paths.empty(); }
};

struct ExperimentConfig {
    std::string suite{"suite"};
    GraphFamily graphs{};
    std::vector<json> methods; ///< tag strings or objects with "tag"
    std::uint64_t seed{0};
    std::string out{"results"};
    std::size_t workers{1};
    std::vector<std::size_t> alpha_m{1, 2, 3, 5, 10};
    std::vector<std::size_t> failure_m{5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
};

inline ExperimentConfig config_from_json(const json &j) {
    try {
        ExperimentConfig c;
        c.suite = j.value("suite", c.suite);
        c.seed = j.value("seed", c.seed);
        c.out = j.value("out", c.out);
        c.workers = j.value("workers", c.workers);
        c.alpha_m = j.value("alpha_m", c.alpha_m);
        c.failure_m = j.value("failure_m", c.failure_m);
        const auto &g = j.at("graphs");
        const auto model = g.at("model").get<std::string>();
        if (model == "files") {
            c.graphs.paths = g.at("paths").get<std::vector<std::string>>();
            c.graphs.count = c.graphs.paths.size();
            c.graphs.model = GraphModel::Manual;
        } else {
            c.graphs.model = parse_graph_model(model);
            c.graphs.n = g.at("n").get<std::size_t>();
            c.graphs.count = g.value("count", std::size_t{1});
            if (c.graphs.model == GraphModel::Regular) {
                c.graphs.d = g.at("d").get<std::size_t>();
            } else if (c.graphs.model == GraphModel::ErdosRenyi) {
                c.graphs.p = g.at("p").get<double>();
            } else {
                throw InputError("graph model must be regular, er or files");
            }
        }
        for (const auto &m : j.at("methods")) {
            c.methods.push_back(m);
        }
        detail::require(!c.methods.empty(), "config lists no methods");
        for (auto m : c.alpha_m) {
            detail::require(m >= 1, "alpha_m entries must be positive");
        }
        for (auto m : c.failure_m) {
            detail::require(m >= 1, "failure_m entries must be positive");
        }
        return c;
    } catch (const json::exception &ex) {
        throw FormatError(std::string("invalid experiment config: ") + ex.what());
    }
}

inline ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open config: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception &ex) {
        throw FormatError("cannot parse " + path + ": " + ex.what());
    }
    return config_from_json(j);
}

inline MethodSpec resolve_method(const json &entry, bool weighted) {
    if (entry.is_string()) {
        return default_method(entry.get<std::string>(), weighted);
    }
    MethodSpec m = default_method(entry.at("tag").get<std::string>(), weighted);
    apply_overrides(m, entry);
    return m;
}

inline std::string family_label(const GraphFamily &g) {
    std::ostringstream s;
    if (g.from_files()) {
        s << "files";
    } else if (g.model == GraphModel::Regular) {
        s << "regular-n" << g.n << "-d" << g.d;
    } else {
        s << "er-n" << g.n << "-p" << g.p;
    }
    return s.str();
}

/// One line of metrics.csv. Empty optionals are written as empty cells.
struct MetricRow {
    std::string instance;
    std::string family;
    std::size_t n{0};
    std::size_t edges{0};
    std::string method;
    std::string status{"ok"};
    std::optional<double> p_gs;
    std::optional<double> energy_best;
    double optimum{0.0};
    std::optional<double> solution_cost;
    std::vector<std::optional<double>> alpha;   ///< per alpha_m
    std::optional<double> relaxation;
    std::vector<std::optional<bool>> failures;  ///< per failure_m
    std::optional<std::size_t> switch_step;
    std::string error;
    double seconds{0.0};
    std::size_t iterations{0};
};

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string cell(const std::optional<double> &v) {
    return v ? fmt_double(*v) : std::string{};
}

inline std::string sanitize(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

} // namespace detail

inline std::vector<std::string> metric_header(const ExperimentConfig &c) {
    std::vector<std::string> h{"instance", "family",     "n",        "edges",
                               "method",   "status",     "p_gs",     "energy_best",
                               "optimum",  "solution_cost"};
    for (auto m : c.alpha_m) {
        h.push_back("alpha_M" + std::to_string(m));
    }
    h.push_back("relaxation");
    for (auto m : c.failure_m) {
        h.push_back("fail_M" + std::to_string(m));
    }
    h.push_back("switch_step");
    h.push_back("error");
    return h;
}

inline std::string metric_line(const MetricRow &r) {
    std::vector<std::string> cells{r.instance,
                                   r.family,
                                   std::to_string(r.n),
                                   std::to_string(r.edges),
                                   r.method,
                                   r.status,
                                   detail::cell(r.p_gs),
                                   detail::cell(r.energy_best),
                                   detail::fmt_double(r.optimum),
                                   detail::cell(r.solution_cost)};
    for (const auto &a : r.alpha) {
        cells.push_back(detail::cell(a));
    }
    cells.push_back(detail::cell(r.relaxation));
    for (const auto &f : r.failures) {
        cells.push_back(f ? (*f ? "1" : "0") : "");
    }
    cells.push_back(r.switch_step ? std::to_string(*r.switch_step) : "");
    cells.push_back(detail::sanitize(r.error));
    std::string line;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        line += (k ? "," : "") + cells[k];
    }
    return line;
}

/// Output of one (instance, method) execution.
struct RunOutcome {
    MetricRow row;
    std::optional<RunTrace> trace;
};

/// Quantum metrics of the state prepared at the best-energy point.
inline void fill_state_metrics(const PreparedProblem &prob, const StateVector &psi,
                               const ExperimentConfig &c, MetricRow &row) {
    row.p_gs = ground_state_probability(psi, prob.spectrum);
    const auto dist = level_distribution(psi, prob.spectrum);
    for (auto m : c.alpha_m) {
        row.alpha.emplace_back(expected_best_alpha(dist, m));
    }
    for (auto m : c.failure_m) {
        row.failures.emplace_back(failure_predicate_awqv(*row.p_gs, m));
    }
}

inline RunOutcome execute_method(const PreparedProblem &prob, const MethodSpec &m,
                                 std::uint64_t run_seed,
                                 const ExperimentConfig &c) {
    RunOutcome out;
    auto &row = out.row;
    row.n = prob.n();
    row.edges = prob.instance.edges().size();
    row.method = m.tag;
    row.optimum = prob.spectrum.best();

    if (m.kind == MethodKind::Gw) {
        GwOptions opts = m.gw;
        opts.seed = run_seed;
        const auto emb = gw_solve(prob.instance, opts);
        const std::size_t max_m =
            c.failure_m.empty() ? m.samples
                                : *std::max_element(c.failure_m.begin(), c.failure_m.end());
        const auto rounding = hyperplane_round(emb, prob.instance, max_m,
                                               derive_seed(run_seed, "gw", 0, "round"));
        row.relaxation = emb.objective;
        row.solution_cost = rounding.best_cost;
        row.alpha.assign(c.alpha_m.size(), std::nullopt);
        for (auto mm : c.failure_m) {
            row.failures.emplace_back(
                failure_predicate_gw(rounding.prefix_best[mm - 1], prob.spectrum));
        }
        return out;
    }

    const StateVector psi0 = make_initial_state(m.initial, prob.n());
    const AnsatzSpec spec = build_ansatz(prob.n(), m.ansatz);
    SolverOptions solver;
    solver.gradient = m.gradient;
    const std::uint64_t sample_seed = derive_seed(run_seed, "sample", 0, m.tag);

    std::optional<StateVector> best_state;
    RunTrace trace;
    switch (m.kind) {
    case MethodKind::Awqv: {
        AwqvOptions o{m.eta, m.mu, m.lambda, m.iters, m.samples, sample_seed,
                      std::nullopt, solver};
        auto res = awqv_run(prob, spec, psi0, o);
        row.solution_cost = res.solution_cost;
        trace = std::move(res.trace);
        break;
    }
    case MethodKind::Qiv: {
        QivOptions o{m.eta, m.iters, m.samples, sample_seed, solver};
        auto res = qiv_run(prob, spec, psi0, o);
        row.solution_cost = res.solution_cost;
        row.switch_step = res.trace.switch_step();
        trace = std::move(res.trace);
        break;
    }
    case MethodKind::Vqe: {
        VqeOptions o;
        o.optimizer = m.optimizer;
        o.eta = m.eta;
        o.iters = m.iters;
        o.init = m.init;
        o.solver = solver;
        trace = vqe_run(prob, spec, psi0, o);
        break;
    }
    case MethodKind::Cqite:
        trace = cqite_run(prob, spec, psi0, m.eta, m.iters, solver);
        break;
    case MethodKind::Qite: {
        StateVector best = psi0;
        trace = qite_run(prob, spec.strings(), psi0, m.eta, m.iters, solver, &best);
        best_state = std::move(best);
        break;
    }
    case MethodKind::Gw:
        break;
    }
    if (!best_state) {
        best_state = apply_ansatz(spec, trace.best_theta(), psi0);
    }
    if (!row.solution_cost) {
        const auto draws = sample(*best_state, m.samples, sample_seed);
        double best = prob.instance.cost_of_index(draws.front().bits);
        for (const auto &x : draws) {
            best = std::min(best, prob.instance.cost_of_index(x.bits));
        }
        row.solution_cost = best;
    }
    row.energy_best = trace.best_energy();
    row.iterations = trace.records().size() - 1;
    fill_state_metrics(prob, *best_state, c, row);
    out.trace = std::move(trace);
    return out;
}

/// Mean/min p_gs per (family, method) and failure counts per (method, M).
struct SummaryTables {
    struct Group {
        std::string family;
        std::string method;
        std::size_t runs{0};
        std::size_t ok{0};
        double mean_p_gs{0.0};
        double min_p_gs{0.0};
    };
    struct Failures {
        std::string method;
        std::size_t M{0};
        std::size_t failures{0};
        std::size_t runs{0};
    };
    std::vector<Group> groups;
    std::vector<Failures> failures;
};

namespace detail {

inline std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace detail

/// Aggregates rows given as header + cell vectors (metrics.csv layout).
inline SummaryTables
summarize_rows(const std::vector<std::string> &header,
               const std::vector<std::vector<std::string>> &rows) {
    auto col = [&](const std::string &name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw FormatError("metrics table lacks column: " + name);
        }
        return static_cast<std::size_t>(std::distance(header.begin(), it));
    };
    const auto c_family = col("family");
    const auto c_method = col("method");
    const auto c_status = col("status");
    const auto c_pgs = col("p_gs");
    std::vector<std::pair<std::size_t, std::size_t>> fail_cols;
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (header[k].rfind("fail_M", 0) == 0) {
            fail_cols.emplace_back(k, std::stoul(header[k].substr(6)));
        }
    }

    SummaryTables t;
    std::map<std::pair<std::string, std::string>, std::size_t> gidx;
    std::map<std::pair<std::string, std::size_t>, std::size_t> fidx;
    std::map<std::pair<std::string, std::string>, double> sums;
    std::vector<std::string> method_order;
    for (const auto &r : rows) {
        if (r.size() != header.size()) {
            throw FormatError("metrics row has " + std::to_string(r.size()) +
                              " cells, header has " + std::to_string(header.size()));
        }
        const std::pair key{r[c_family], r[c_method]};
        auto [it, fresh] = gidx.try_emplace(key, t.groups.size());
        if (fresh) {
            t.groups.push_back({key.first, key.second, 0, 0, 0.0, 0.0});
        }
        auto &g = t.groups[it->second];
        ++g.runs;
        if (r[c_status] == "ok" && !r[c_pgs].empty()) {
            const double p = std::stod(r[c_pgs]);
            g.min_p_gs = g.ok == 0 ? p : std::min(g.min_p_gs, p);
            ++g.ok;
            sums[key] += p;
        }
        for (const auto &[k, M] : fail_cols) {
            if (r[k].empty()) {
                continue;
            }
            auto [fit, ffresh] = fidx.try_emplace({r[c_method], M}, t.failures.size());
            if (ffresh) {
                t.failures.push_back({r[c_method], M, 0, 0});
            }
            auto &f = t.failures[fit->second];
            ++f.runs;
            f.failures += r[k] == "1" ? 1 : 0;
        }
    }
    for (auto &g : t.groups) {
        if (g.ok > 0) {
            g.mean_p_gs = sums[{g.family, g.method}] / static_cast<double>(g.ok);
        }
    }
    return t;
}

/// Reads <dir>/metrics.csv (or a CSV path) and aggregates it.
inline SummaryTables summarize(const std::string &path) {
    fs::path p(path);
    if (fs::is_directory(p)) {
        p /= "metrics.csv";
    }
    std::ifstream in(p);
    if (!in) {
        throw FormatError("cannot open metrics table: " + p.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("metrics table is empty: " + p.string());
    }
    const auto header = detail::split_csv(line);
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            rows.push_back(detail::split_csv(line));
        }
    }
    return summarize_rows(header, rows);
}

inline json summary_to_json(const SummaryTables &t) {
    json groups = json::array();
    for (const auto &g : t.groups) {
        groups.push_back({{"family", g.family},
                          {"method", g.method},
                          {"runs", g.runs},
                          {"ok", g.ok},
                          {"mean_p_gs", g.ok ? json(g.mean_p_gs) : json(nullptr)},
                          {"min_p_gs", g.ok ? json(g.min_p_gs) : json(nullptr)}});
    }
    json failures = json::array();
    for (const auto &f : t.failures) {
        failures.push_back({{"method", f.method},
                            {"M", f.M},
                            {"failures", f.failures},
                            {"runs", f.runs}});
    }
    return {{"p_gs", std::move(groups)}, {"failures", std::move(failures)}};
}

/// Plain-text rendering of both tables.
inline std::string summary_to_text(const SummaryTables &t) {
    std::ostringstream s;
    s << "family,method,runs,ok,mean_p_gs,min_p_gs\n";
    for (const auto &g : t.groups) {
        s << g.family << ',' << g.method << ',' << g.runs << ',' << g.ok << ','
          << (g.ok ? detail::fmt_double(g.mean_p_gs) : "") << ','
          << (g.ok ? detail::fmt_double(g.min_p_gs) : "") << '\n';
    }
    s << "\nmethod,M,failures,runs\n";
    for (const auto &f : t.failures) {
        s << f.method << ',' << f.M << ',' << f.failures << ',' << f.runs << '\n';
    }
    return s.str();
}

struct SuiteResult {
    std::vector<MetricRow> rows;
    SummaryTables summary;
    fs::path out_dir;
};

/// Worker count: explicit value if non-zero, else AWQV_WORKERS, else fallback.
inline std::size_t resolve_workers(std::size_t explicit_workers,
                                   std::size_t fallback) {
    if (explicit_workers > 0) {
        return explicit_workers;
    }
    if (const char *env = std::getenv("AWQV_WORKERS")) {
        try {
            const auto v = std::stoul(env);
            if (v > 0) {
                return v;
            }
        } catch (const std::exception &) {
            throw InputError(std::string("AWQV_WORKERS is not a positive integer: ") + env);
        }
    }
    return std::max<std::size_t>(1, fallback);
}

/**
 * @brief Generates or loads the instances, runs every method on every
 * instance and writes the outputs listed in the file comment.
 *
 * Instances run concurrently on `workers` threads; a run that throws is
 * recorded with status "error" and does not stop the suite.
 */
inline SuiteResult run_suite(const ExperimentConfig &cfg, std::size_t workers = 1,
                             std::ostream *log = nullptr) {
    const fs::path out(cfg.out);
    fs::create_directories(out / "instances");
    fs::create_directories(out / "traces");

    // Defaults depend on whether an instance is weighted (mu in particular).
    std::vector<MethodSpec> methods_unweighted;
    std::vector<MethodSpec> methods_weighted;
    for (const auto &entry : cfg.methods) {
        methods_unweighted.push_back(resolve_method(entry, false));
        methods_weighted.push_back(resolve_method(entry, true));
    }

    std::vector<MaxCutInstance> instances;
    std::vector<std::string> ids;
    for (std::size_t k = 0; k < cfg.graphs.count; ++k) {
        char id[32];
        std::snprintf(id, sizeof(id), "g%03zu", k);
        ids.emplace_back(cfg.suite + "-" + id);
        if (cfg.graphs.from_files()) {
            instances.push_back(load_graph(cfg.graphs.paths[k]));
            continue;
        }
        const auto seed = derive_seed(cfg.seed, cfg.suite, k, "graph");
        instances.push_back(cfg.graphs.model == GraphModel::Regular
                                ? generate_regular(cfg.graphs.n, cfg.graphs.d, seed)
                                : generate_er_weighted(cfg.graphs.n, cfg.graphs.p, seed));
        save_graph(instances.back(), (out / "instances" / (ids.back() + ".json")).string());
    }
    const std::string family = family_label(cfg.graphs);

    std::vector<std::vector<MetricRow>> per_instance(instances.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= instances.size()) {
                return;
            }
            std::optional<PreparedProblem> prob;
            std::string prep_error;
            try {
                prob.emplace(instances[k]);
            } catch (const std::exception &ex) {
                prep_error = ex.what();
            }
            const auto &methods =
                instances[k].unweighted() ? methods_unweighted : methods_weighted;
            for (const auto &m : methods) {
                MetricRow row;
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    if (!prob) {
                        throw CapacityError(prep_error);
                    }
                    auto res = execute_method(
                        *prob, m, derive_seed(cfg.seed, cfg.suite, k, m.tag), cfg);
                    row = std::move(res.row);
                    if (res.trace) {
                        std::ofstream tf(out / "traces" / (ids[k] + "__" + m.tag + ".jsonl"));
                        write_trace_jsonl(*res.trace, tf);
                    }
                } catch (const std::exception &ex) {
                    row = MetricRow{};
                    row.n = instances[k].n();
                    row.edges = instances[k].edges().size();
                    row.method = m.tag;
                    row.status = "error";
                    row.error = ex.what();
                    row.alpha.assign(cfg.alpha_m.size(), std::nullopt);
                    row.failures.assign(cfg.failure_m.size(), std::nullopt);
                }
                row.instance = ids[k];
                row.family = family;
                row.seconds = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
                if (log) {
                    std::lock_guard lock(log_mutex);
                    *log << ids[k] << ' ' << m.tag << ' ' << row.status;
                    if (row.p_gs) {
                        *log << " p_gs=" << detail::fmt_double(*row.p_gs);
                    }
                    *log << " (" << detail::fmt_double(row.seconds) << " s)\n";
                }
                per_instance[k].push_back(std::move(row));
            }
        }
    };
    const std::size_t nthreads =
        std::min<std::size_t>(std::max<std::size_t>(1, workers), instances.size());
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < nthreads; ++t) {
            pool.emplace_back(worker);
        }
    }

    SuiteResult result;
    result.out_dir = out;
    for (auto &rows : per_instance) {
        for (auto &r : rows) {
            result.rows.push_back(std::move(r));
        }
    }
    const auto header = metric_header(cfg);
    {
        std::ofstream csv(out / "metrics.csv");
        std::vector<std::vector<std::string>> cells;
        for (std::size_t k = 0; k < header.size(); ++k) {
            csv << (k ? "," : "") << header[k];
        }
        csv << '\n';
        for (const auto &r : result.rows) {
            const auto line = metric_line(r);
            csv << line << '\n';
            cells.push_back(detail::split_csv(line));
        }
        result.summary = summarize_rows(header, cells);
    }
    {
        std::ofstream tcsv(out / "timings.csv");
        tcsv << "instance,method,seconds,iterations\n";
        for (const auto &r : result.rows) {
            tcsv << r.instance << ',' << r.method << ',' << detail::fmt_double(r.seconds)
                 << ',' << r.iterations << '\n';
        }
    }
    {
        std::ofstream sj(out / "summary.json");
        json j = summary_to_json(result.summary);
        j["suite"] = cfg.suite;
        j["family"] = family;
        j["seed"] = cfg.seed;
        sj << j.dump(2) << '\n';
    }
    return result;
}

/**
 * @brief Single run described by {method, ansatz, eta, mu, lambda, iters,
 * samples, seed, graph_path}; missing fields take the method defaults.
 */
struct SingleRunResult {
    MetricRow row;
    std::optional<RunTrace> trace;
    MethodSpec method;
};

inline SingleRunResult run_single(const json &cfg) {
    try {
        const auto g = load_graph(cfg.at("graph_path").get<std::string>());
        const auto method = cfg.at("method").get<std::string>();
        std::string tag = method;
        if (method != "gw") {
            tag += "-" + cfg.value("ansatz", std::string{"p2a"});
        }
        std::transform(tag.begin(), tag.end(), tag.begin(), [](unsigned char c) {
            return static_cast<char>(std::tolower(c));
        });
        MethodSpec m = default_method(tag, !g.unweighted());
        apply_overrides(m, cfg);
        ExperimentConfig ec;
        const PreparedProblem prob(g);
        auto res = execute_method(prob, m, cfg.value("seed", std::uint64_t{0}), ec);
        return {std::move(res.row), std::move(res.trace), m};
    } catch (const json::exception &ex) {
        throw FormatError(std::string("invalid run config: ") + ex.what());
    }
}

} // namespace awqv
