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
 * Goemans-Williamson baseline: low-rank SDP relaxation and random-hyperplane
 * rounding.
 */
#pragma once

#include "error.hpp"
#include "problem.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace awqv {

/// Unit vectors v_i in R^k stored as the columns of `vectors`.
struct Embedding {
    Eigen::MatrixXd vectors;
    double objective{0.0}; ///< sum w_ij (1 - v_i.v_j) / 2

    [[nodiscard]] std::size_t n() const {
        return static_cast<std::size_t>(vectors.cols());
    }
    [[nodiscard]] std::size_t rank() const {
        return static_cast<std::size_t>(vectors.rows());
    }
};

struct GwOptions {
    std::size_t rank{0}; ///< 0 selects ceil(sqrt(2n)), at least 2
    std::size_t restarts{10};
    std::size_t iters{1000}; ///< sweeps per restart
    double tol{1e-12};       ///< relative objective change that stops a restart
    std::uint64_t seed{0};
};

inline std::size_t default_gw_rank(std::size_t n) {
    return std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * static_cast<double>(n)))));
}

inline double relaxation_objective(const MaxCutInstance &g,
                                   const Eigen::MatrixXd &V) {
    double f = 0.0;
    for (const auto &e : g.edges()) {
        const auto i = static_cast<Eigen::Index>(e.i);
        const auto j = static_cast<Eigen::Index>(e.j);
        f += e.w * (1.0 - V.col(i).dot(V.col(j))) / 2.0;
    }
    return f;
}

/**
 * @brief Burer-Monteiro maximization of the MaxCut SDP over unit vectors.
 *
 * Projected block ascent: each sweep replaces v_i by the unit vector along
 * -sum_j w_ij v_j, the exact maximizer of the objective in v_i with the
 * others fixed. The best of `restarts` random starts is returned.
 */
inline Embedding gw_solve(const MaxCutInstance &g, const GwOptions &opts = {}) {
    const std::size_t k = opts.rank == 0 ? default_gw_rank(g.n()) : opts.rank;
    detail::require(k >= 2, "embedding rank must be at least 2");
    detail::require(opts.restarts >= 1, "at least one restart is needed");
    const auto n = static_cast<Eigen::Index>(g.n());
    const auto r = static_cast<Eigen::Index>(k);

    std::vector<std::vector<std::pair<Eigen::Index, double>>> adj(g.n());
    for (const auto &e : g.edges()) {
        adj[e.i].push_back({static_cast<Eigen::Index>(e.j), e.w});
        adj[e.j].push_back({static_cast<Eigen::Index>(e.i), e.w});
    }

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Embedding best;
    best.objective = -std::numeric_limits<double>::infinity();
    for (std::size_t restart = 0; restart < opts.restarts; ++restart) {
        Eigen::MatrixXd V(r, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index d = 0; d < r; ++d) {
                V(d, i) = normal(rng);
            }
            V.col(i).normalize();
        }
        double f = relaxation_objective(g, V);
        for (std::size_t sweep = 0; sweep < opts.iters; ++sweep) {
            for (Eigen::Index i = 0; i < n; ++i) {
                Eigen::VectorXd field = Eigen::VectorXd::Zero(r);
                for (const auto &[j, w] : adj[static_cast<std::size_t>(i)]) {
                    field += w * V.col(j);
                }
                const double norm = field.norm();
                if (norm > 0.0) {
                    V.col(i) = -field / norm;
                }
            }
            const double next = relaxation_objective(g, V);
            const bool done = next - f <= opts.tol * std::max(1.0, std::abs(next));
            f = next;
            if (done) {
                break;
            }
        }
        if (f > best.objective) {
            best.vectors = V;
            best.objective = f;
        }
    }
    return best;
}

struct RoundingResult {
    Bitstring best;
    double best_cost{0.0};
    /// prefix_best[m-1]: best cost among the first m hyperplanes.
    std::vector<double> prefix_best;
};

/**
 * @brief Best of M random-hyperplane roundings, x_i = [r . v_i >= 0].
 */
inline RoundingResult hyperplane_round(const Embedding &emb,
                                       const MaxCutInstance &g, std::size_t M,
                                       std::uint64_t seed) {
    detail::require(M >= 1, "rounding count must be positive");
    detail::require(emb.n() == g.n(), "embedding and instance sizes differ");
    const auto k = static_cast<Eigen::Index>(emb.rank());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    RoundingResult out;
    out.prefix_best.reserve(M);
    Eigen::VectorXd r(k);
    for (std::size_t m = 0; m < M; ++m) {
        for (Eigen::Index d = 0; d < k; ++d) {
            r[d] = normal(rng);
        }
        const Eigen::VectorXd proj = emb.vectors.transpose() * r;
        Bitstring x{g.n(), 0};
        for (std::size_t i = 0; i < g.n(); ++i) {
            if (proj[static_cast<Eigen::Index>(i)] >= 0.0) {
                x.bits |= std::uint64_t{1} << i;
            }
        }
        const double c = g.cost_of_index(x.bits);
        if (m == 0 || c < out.best_cost) {
            out.best = x;
            out.best_cost = c;
        }
        out.prefix_best.push_back(out.best_cost);
    }
    return out;
}

} // namespace awqv
