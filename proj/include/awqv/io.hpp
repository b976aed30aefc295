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
 * JSON encodings: graph files, JSON-lines run traces, optimizer state and
 * debug dumps.
 */
#pragma once

#include "ansatz.hpp"
#include "error.hpp"
#include "optimize.hpp"
#include "problem.hpp"
#include "statevec.hpp"
#include "trace.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace awqv {

using nlohmann::json;

// Graph files: {"n", "edges": [[i, j, w], ...], "seed", "model"} with 1-based
// vertex indices. "weights" names the weight law and is optional on read.

inline json graph_to_json(const MaxCutInstance &g) {
    json edges = json::array();
    for (const auto &e : g.edges()) {
        edges.push_back(json::array({e.i + 1, e.j + 1, e.w}));
    }
    json j{{"n", g.n()},
           {"edges", std::move(edges)},
           {"seed", g.seed()},
           {"model", to_string(g.model())}};
    if (g.weight_law() != "unit") {
        j["weights"] = g.weight_law();
    }
    return j;
}

inline MaxCutInstance graph_from_json(const json &j) {
    try {
        const auto n = j.at("n").get<std::size_t>();
        std::vector<Edge> edges;
        for (const auto &e : j.at("edges")) {
            if (!e.is_array() || e.size() != 3) {
                throw FormatError("edge entries must be [i, j, w]");
            }
            const auto i = e[0].get<std::size_t>();
            const auto k = e[1].get<std::size_t>();
            if (i < 1 || k < 1) {
                throw FormatError("vertex indices are 1-based");
            }
            edges.push_back({i - 1, k - 1, e[2].get<double>()});
        }
        const auto seed = j.value("seed", std::uint64_t{0});
        const auto model = parse_graph_model(j.value("model", std::string{"manual"}));
        const auto law = j.value("weights", std::string{
                                     model == GraphModel::ErdosRenyi ? "normal" : "unit"});
        return {n, std::move(edges), seed, model, law};
    } catch (const json::exception &ex) {
        throw FormatError(std::string("invalid graph JSON: ") + ex.what());
    } catch (const InputError &ex) {
        throw FormatError(std::string("invalid graph: ") + ex.what());
    }
}

inline MaxCutInstance load_graph(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open graph file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception &ex) {
        throw FormatError("cannot parse " + path + ": " + ex.what());
    }
    return graph_from_json(j);
}

inline void save_graph(const MaxCutInstance &g, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw FormatError("cannot write graph file: " + path);
    }
    out << graph_to_json(g).dump() << '\n';
}

namespace detail {

inline json number_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

inline json vector_to_json(const Eigen::VectorXd &v) {
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

inline Eigen::VectorXd vector_from_json(const json &j) {
    const auto xs = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(xs.data(),
                                             static_cast<Eigen::Index>(xs.size()));
}

} // namespace detail

/**
 * @brief One JSON object per record: step, energy, p_gs, w, delta,
 * theta_norm, residual (plus grad_norm, phi_norm). The best and the final
 * records also carry the full "theta".
 */
inline void write_trace_jsonl(const RunTrace &trace, std::ostream &out) {
    const auto &recs = trace.records();
    for (std::size_t k = 0; k < recs.size(); ++k) {
        const auto &r = recs[k];
        json j{{"step", r.step},
               {"energy", detail::number_or_null(r.energy)},
               {"p_gs", detail::number_or_null(r.p_gs)},
               {"w", detail::number_or_null(r.w)},
               {"delta", detail::number_or_null(r.delta)},
               {"theta_norm", detail::number_or_null(r.theta_norm)},
               {"residual", detail::number_or_null(r.residual)},
               {"grad_norm", detail::number_or_null(r.grad_norm)},
               {"phi_norm", detail::number_or_null(r.phi_norm)}};
        if (k == trace.best_step()) {
            j["best"] = true;
            j["theta"] = detail::vector_to_json(trace.best_theta());
        }
        if (k + 1 == recs.size()) {
            j["final"] = true;
            j["theta"] = detail::vector_to_json(trace.final_theta());
        }
        out << j.dump() << '\n';
    }
}

inline json adam_to_json(const AdamState &s) {
    return {{"eta", s.eta},
            {"beta1", s.beta1},
            {"beta2", s.beta2},
            {"eps", s.eps},
            {"t", s.t},
            {"m", detail::vector_to_json(s.m)},
            {"v", detail::vector_to_json(s.v)}};
}

inline AdamState adam_from_json(const json &j) {
    AdamState s;
    s.eta = j.at("eta").get<double>();
    s.beta1 = j.at("beta1").get<double>();
    s.beta2 = j.at("beta2").get<double>();
    s.eps = j.at("eps").get<double>();
    s.t = j.at("t").get<std::size_t>();
    s.m = detail::vector_from_json(j.at("m"));
    s.v = detail::vector_from_json(j.at("v"));
    return s;
}

/// Ordered gate labels plus the pair schedule (1-based qubits).
inline json ansatz_to_json(const AnsatzSpec &spec) {
    json rounds = json::array();
    for (const auto &round : spec.schedule()) {
        json r = json::array();
        for (const auto &[i, j] : round) {
            r.push_back(json::array({i + 1, j + 1}));
        }
        rounds.push_back(std::move(r));
    }
    return {{"n", spec.n()},
            {"variant", to_string(spec.variant())},
            {"num_params", spec.num_params()},
            {"strings", spec.labels()},
            {"schedule", std::move(rounds)}};
}

/// Debug dump of amplitudes as [[re, im], ...].
inline json amplitudes_to_json(const StateVector &psi) {
    json out = json::array();
    for (const auto &a : psi.amplitudes()) {
        out.push_back(json::array({a.real(), a.imag()}));
    }
    return out;
}

} // namespace awqv
