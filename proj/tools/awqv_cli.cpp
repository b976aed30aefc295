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
// Command-line front end: gen, run, summarize, spectrum, gw, ansatz.

#include <awqv/awqv_all.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using awqv::json;

namespace {

json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw awqv::FormatError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::exception &ex) {
        throw awqv::FormatError("cannot parse " + path + ": " + ex.what());
    }
}

json row_to_json(const awqv::MetricRow &r) {
    auto opt = [](const std::optional<double> &v) { return v ? json(*v) : json(nullptr); };
    return {{"method", r.method},
            {"status", r.status},
            {"p_gs", opt(r.p_gs)},
            {"energy_best", opt(r.energy_best)},
            {"optimum", r.optimum},
            {"solution_cost", opt(r.solution_cost)},
            {"relaxation", opt(r.relaxation)},
            {"iterations", r.iterations},
            {"seconds", r.seconds}};
}

struct GenArgs {
    std::string model{"regular"};
    std::size_t n{12};
    std::size_t d{3};
    double p{0.5};
    std::size_t count{1};
    std::uint64_t seed{0};
    std::string out{"graphs"};
    std::string suite{"graphs"};
};

int cmd_gen(const GenArgs &a) {
    fs::create_directories(a.out);
    const auto model = awqv::parse_graph_model(a.model);
    for (std::size_t k = 0; k < a.count; ++k) {
        const auto seed = awqv::derive_seed(a.seed, a.suite, k, "graph");
        const auto g = model == awqv::GraphModel::ErdosRenyi
                           ? awqv::generate_er_weighted(a.n, a.p, seed)
                           : awqv::generate_regular(a.n, a.d, seed);
        char name[64];
        std::snprintf(name, sizeof(name), "%s-g%03zu.json", a.suite.c_str(), k);
        const auto path = fs::path(a.out) / name;
        awqv::save_graph(g, path.string());
        std::cout << path.string() << '\n';
    }
    return 0;
}

int cmd_run(const std::string &config, std::optional<std::uint64_t> seed,
            std::size_t workers, const std::string &out) {
    const json j = read_json(config);
    if (j.contains("graph_path")) {
        json cfg = j;
        if (seed) {
            cfg["seed"] = *seed;
        }
        const auto res = awqv::run_single(cfg);
        json report = row_to_json(res.row);
        report["tag"] = res.method.tag;
        if (!out.empty() && res.trace) {
            fs::create_directories(fs::path(out).parent_path().empty()
                                       ? fs::path(".")
                                       : fs::path(out).parent_path());
            std::ofstream tf(out);
            awqv::write_trace_jsonl(*res.trace, tf);
            report["trace"] = out;
        }
        std::cout << report.dump(2) << '\n';
        return 0;
    }
    auto cfg = awqv::config_from_json(j);
    if (seed) {
        cfg.seed = *seed;
    }
    if (!out.empty()) {
        cfg.out = out;
    }
    const auto n_workers = awqv::resolve_workers(workers, cfg.workers);
    const auto res = awqv::run_suite(cfg, n_workers, &std::cerr);
    std::cout << awqv::summary_to_text(res.summary);
    std::size_t errors = 0;
    for (const auto &r : res.rows) {
        errors += r.status == "ok" ? 0 : 1;
    }
    std::cerr << res.rows.size() << " runs, " << errors << " errors, results in "
              << res.out_dir.string() << '\n';
    return 0;
}

int cmd_spectrum(const std::string &path, std::size_t max_listed) {
    const auto g = awqv::load_graph(path);
    const auto s = awqv::brute_force_spectrum(g);
    json optimal = json::array();
    for (std::size_t k = 0; k < s.optimal_set().size() && k < max_listed; ++k) {
        optimal.push_back(awqv::Bitstring{g.n(), s.optimal_set()[k]}.to_string());
    }
    std::vector<std::size_t> counts(s.K(), 0);
    for (auto l : s.levels()) {
        ++counts[l];
    }
    std::cout << json{{"n", g.n()},
                      {"edges", g.edges().size()},
                      {"K", s.K()},
                      {"best", s.best()},
                      {"worst", s.worst()},
                      {"levels", s.costs()},
                      {"level_counts", counts},
                      {"optimal_count", s.optimal_set().size()},
                      {"optimal", optimal}}
                     .dump(2)
              << '\n';
    return 0;
}

int cmd_gw(const std::string &path, std::size_t M, std::uint64_t seed,
           const awqv::GwOptions &base) {
    const auto g = awqv::load_graph(path);
    awqv::GwOptions opts = base;
    opts.seed = seed;
    const auto emb = awqv::gw_solve(g, opts);
    const auto r = awqv::hyperplane_round(emb, g, M,
                                          awqv::derive_seed(seed, "gw", 0, "round"));
    json report{{"n", g.n()},
                {"rank", emb.rank()},
                {"relaxation", emb.objective},
                {"roundings", M},
                {"best_cost", r.best_cost},
                {"best_cut", -r.best_cost},
                {"best", r.best.to_string()}};
    if (g.n() <= awqv::kDenseQubitLimit) {
        const auto s = awqv::brute_force_spectrum(g);
        report["optimum"] = s.best();
        report["failure"] = awqv::failure_predicate_gw(r.best_cost, s);
    }
    std::cout << report.dump(2) << '\n';
    return 0;
}

int cmd_ansatz(std::size_t n, const std::string &variant) {
    std::cout << awqv::ansatz_to_json(awqv::build_ansatz(n, awqv::parse_ansatz_variant(variant)))
                     .dump(2)
              << '\n';
    return 0;
}

int cmd_summarize(const std::string &dir, bool as_json) {
    const auto t = awqv::summarize(dir);
    if (as_json) {
        std::cout << awqv::summary_to_json(t).dump(2) << '\n';
    } else {
        std::cout << awqv::summary_to_text(t);
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"AWQV: adaptive weighted QITE-VQE and baselines for MaxCut"};
    app.require_subcommand(1);

    GenArgs gen;
    auto *gen_cmd = app.add_subcommand("gen", "generate random graph files");
    gen_cmd->add_option("--model", gen.model, "regular or er")
        ->check(CLI::IsMember({"regular", "er"}));
    gen_cmd->add_option("-n,--vertices", gen.n, "vertex count");
    gen_cmd->add_option("-d,--degree", gen.d, "degree (regular)");
    gen_cmd->add_option("-p,--prob", gen.p, "edge probability (er)");
    gen_cmd->add_option("--count", gen.count, "number of graphs");
    gen_cmd->add_option("--seed", gen.seed, "global seed");
    gen_cmd->add_option("--suite", gen.suite, "name used in seeds and file names");
    gen_cmd->add_option("--out", gen.out, "output directory");

    std::string config;
    std::optional<std::uint64_t> run_seed;
    std::size_t workers = 0;
    std::string run_out;
    auto *run_cmd = app.add_subcommand("run", "run a suite or a single-run config");
    run_cmd->add_option("--config", config, "experiment or run config JSON")->required();
    run_cmd->add_option("--seed", run_seed, "override the global seed");
    run_cmd->add_option("--workers", workers,
                        "worker threads (default: AWQV_WORKERS, then config)");
    run_cmd->add_option("--out", run_out,
                        "results directory (suite) or trace file (single run)");

    std::string sum_dir;
    bool sum_json = false;
    auto *sum_cmd = app.add_subcommand("summarize", "aggregate a results directory");
    sum_cmd->add_option("dir", sum_dir, "results directory or metrics.csv")->required();
    sum_cmd->add_flag("--json", sum_json, "emit JSON instead of CSV tables");

    std::string spec_graph;
    std::size_t max_listed = 64;
    auto *spec_cmd = app.add_subcommand("spectrum", "brute-force the spectrum of a graph");
    spec_cmd->add_option("graph", spec_graph, "graph JSON file")->required();
    spec_cmd->add_option("--max-listed", max_listed, "optimal bitstrings to print");

    std::string gw_graph;
    std::size_t gw_m = 50;
    std::uint64_t gw_seed = 0;
    awqv::GwOptions gw_opts;
    auto *gw_cmd = app.add_subcommand("gw", "Goemans-Williamson baseline on one graph");
    gw_cmd->add_option("graph", gw_graph, "graph JSON file")->required();
    gw_cmd->add_option("-M,--roundings", gw_m, "random hyperplanes");
    gw_cmd->add_option("--seed", gw_seed, "seed");
    gw_cmd->add_option("--rank", gw_opts.rank, "embedding rank (0 = automatic)");
    gw_cmd->add_option("--restarts", gw_opts.restarts, "random restarts");

    std::size_t an_n = 4;
    std::string an_variant = "P2A";
    auto *an_cmd = app.add_subcommand("ansatz", "print the ordered gate list of an ansatz");
    an_cmd->add_option("-n,--qubits", an_n, "qubit count");
    an_cmd->add_option("--variant", an_variant, "P1A, P2A, P2A-ZY or P2A-XY");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_cmd->parsed()) {
            return cmd_gen(gen);
        }
        if (run_cmd->parsed()) {
            return cmd_run(config, run_seed, workers, run_out);
        }
        if (sum_cmd->parsed()) {
            return cmd_summarize(sum_dir, sum_json);
        }
        if (spec_cmd->parsed()) {
            return cmd_spectrum(spec_graph, max_listed);
        }
        if (gw_cmd->parsed()) {
            return cmd_gw(gw_graph, gw_m, gw_seed, gw_opts);
        }
        if (an_cmd->parsed()) {
            return cmd_ansatz(an_n, an_variant);
        }
    } catch (const awqv::Error &ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    } catch (const std::exception &ex) {
        std::cerr << "unexpected error: " << ex.what() << '\n';
        return 1;
    }
    return 0;
}
