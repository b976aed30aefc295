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
 * MaxCut instances, cost evaluation, the diagonal cost Hamiltonian and
 * exhaustive spectrum enumeration.
 *
 * Bit convention used throughout the library: vertex v (0-based) is bit v of
 * a basis-state index, i.e. vertex 1 in 1-based file notation is the least
 * significant bit.
 */
#pragma once

#include "error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace awqv {

/// Assignment of n binary variables packed into an integer.
struct Bitstring {
    std::size_t n{0};
    std::uint64_t bits{0};

    [[nodiscard]] bool operator[](std::size_t v) const {
        return ((bits >> v) & 1U) != 0;
    }

    [[nodiscard]] Bitstring complement() const {
        const std::uint64_t mask =
            n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
        return {n, ~bits & mask};
    }

    /// Written as x_1 x_2 ... x_n, vertex 1 first.
    [[nodiscard]] std::string to_string() const {
        std::string s(n, '0');
        for (std::size_t v = 0; v < n; ++v) {
            s[v] = (*this)[v] ? '1' : '0';
        }
        return s;
    }

    static Bitstring parse(std::string_view s) {
        detail::require(s.size() <= 64, "bitstring longer than 64 bits");
        Bitstring b{s.size(), 0};
        for (std::size_t v = 0; v < s.size(); ++v) {
            detail::require(s[v] == '0' || s[v] == '1',
                            "bitstring characters must be 0 or 1");
            if (s[v] == '1') {
                b.bits |= std::uint64_t{1} << v;
            }
        }
        return b;
    }

    friend bool operator==(const Bitstring &, const Bitstring &) = default;
};

struct Edge {
    std::size_t i; ///< 0-based, i < j
    std::size_t j;
    double w;

    friend bool operator==(const Edge &, const Edge &) = default;
};

enum class GraphModel { Manual, Regular, ErdosRenyi };

inline std::string to_string(GraphModel m) {
    switch (m) {
    case GraphModel::Regular:
        return "regular";
    case GraphModel::ErdosRenyi:
        return "er";
    case GraphModel::Manual:
        break;
    }
    return "manual";
}

inline GraphModel parse_graph_model(std::string_view s) {
    if (s == "regular") {
        return GraphModel::Regular;
    }
    if (s == "er") {
        return GraphModel::ErdosRenyi;
    }
    if (s == "manual") {
        return GraphModel::Manual;
    }
    throw InputError("unknown graph model: " + std::string(s));
}

/**
 * @brief Weighted undirected simple graph defining C(x) = -sum w_ij (x_i-x_j)^2.
 *
 * Immutable after construction. Edges are stored with 0-based endpoints,
 * i < j, sorted, no duplicates.
 */
class MaxCutInstance {
  public:
    MaxCutInstance() = default;

    MaxCutInstance(std::size_t n, std::vector<Edge> edges,
                   std::uint64_t seed = 0,
                   GraphModel model = GraphModel::Manual,
                   std::string weight_law = "unit")
        : n_{n}, edges_{std::move(edges)}, seed_{seed}, model_{model},
          weight_law_{std::move(weight_law)} {
        detail::require(n_ >= 1 && n_ <= 64, "vertex count must be in [1,64]");
        for (auto &e : edges_) {
            if (e.i > e.j) {
                std::swap(e.i, e.j);
            }
            detail::require(e.i < e.j, "self-loops are not allowed");
            detail::require(e.j < n_, "edge endpoint out of range");
            detail::require(std::isfinite(e.w), "edge weight must be finite");
        }
        std::sort(edges_.begin(), edges_.end(),
                  [](const Edge &a, const Edge &b) {
                      return std::pair{a.i, a.j} < std::pair{b.i, b.j};
                  });
        for (std::size_t k = 1; k < edges_.size(); ++k) {
            detail::require(edges_[k - 1].i != edges_[k].i ||
                                edges_[k - 1].j != edges_[k].j,
                            "duplicate edge");
        }
    }

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] const std::vector<Edge> &edges() const { return edges_; }
    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] GraphModel model() const { return model_; }
    [[nodiscard]] const std::string &weight_law() const { return weight_law_; }

    [[nodiscard]] bool unweighted() const {
        return std::all_of(edges_.begin(), edges_.end(),
                           [](const Edge &e) { return e.w == 1.0; });
    }

    [[nodiscard]] std::vector<std::size_t> degrees() const {
        std::vector<std::size_t> deg(n_, 0);
        for (const auto &e : edges_) {
            ++deg[e.i];
            ++deg[e.j];
        }
        return deg;
    }

    /// Cost of the basis state with the given index (no length check).
    [[nodiscard]] double cost_of_index(std::uint64_t x) const {
        double c = 0.0;
        for (const auto &e : edges_) {
            if (((x >> e.i) ^ (x >> e.j)) & 1U) {
                c -= e.w;
            }
        }
        return c;
    }

  private:
    std::size_t n_{0};
    std::vector<Edge> edges_;
    std::uint64_t seed_{0};
    GraphModel model_{GraphModel::Manual};
    std::string weight_law_{"unit"};
};

/// C(x) = -sum_{(i,j) in E} w_ij (x_i - x_j)^2; lower is better.
inline double maxcut_cost(const MaxCutInstance &g, const Bitstring &x) {
    if (x.n != g.n()) {
        throw InputError("bitstring length " + std::to_string(x.n) +
                         " does not match vertex count " +
                         std::to_string(g.n()));
    }
    return g.cost_of_index(x.bits);
}

/// Diagonal of the cost Hamiltonian: entry x equals maxcut_cost(g, x).
inline std::vector<double>
hamiltonian_diagonal(const MaxCutInstance &g,
                     std::size_t dense_limit = kDenseQubitLimit) {
    detail::require_dense(g.n(), dense_limit);
    const std::size_t dim = std::size_t{1} << g.n();
    std::vector<double> h(dim, 0.0);
    // Same accumulation order as cost_of_index, so entries are bit-identical.
    for (const auto &e : g.edges()) {
        for (std::size_t x = 0; x < dim; ++x) {
            if (((x >> e.i) ^ (x >> e.j)) & 1U) {
                h[x] -= e.w;
            }
        }
    }
    return h;
}

/**
 * @brief Distinct cost levels C_1 < ... < C_K over all 2^n assignments.
 *
 * Costs closer than a small relative tolerance are merged into one level so
 * that rounding noise in weighted sums does not split a level.
 */
class Spectrum {
  public:
    Spectrum() = default;
    Spectrum(std::size_t n, std::vector<double> costs,
             std::vector<std::uint32_t> level,
             std::vector<std::uint64_t> optimal)
        : n_{n}, costs_{std::move(costs)}, level_{std::move(level)},
          optimal_{std::move(optimal)} {}

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] std::size_t K() const { return costs_.size(); }
    [[nodiscard]] double best() const { return costs_.front(); }
    [[nodiscard]] double worst() const { return costs_.back(); }
    [[nodiscard]] const std::vector<double> &costs() const { return costs_; }
    [[nodiscard]] std::uint32_t level_of(std::uint64_t x) const {
        return level_[x];
    }
    [[nodiscard]] const std::vector<std::uint32_t> &levels() const {
        return level_;
    }
    [[nodiscard]] const std::vector<std::uint64_t> &optimal_set() const {
        return optimal_;
    }
    [[nodiscard]] double tolerance() const {
        return 1e-9 * std::max(1.0, std::max(std::abs(best()),
                                              std::abs(worst())));
    }
    [[nodiscard]] bool is_optimal_cost(double c) const {
        return c <= best() + tolerance();
    }

  private:
    std::size_t n_{0};
    std::vector<double> costs_;
    std::vector<std::uint32_t> level_;
    std::vector<std::uint64_t> optimal_;
};

inline Spectrum spectrum_from_diagonal(std::size_t n,
                                       const std::vector<double> &h) {
    std::vector<double> sorted = h;
    std::sort(sorted.begin(), sorted.end());
    const double tol =
        1e-9 * std::max(1.0, std::max(std::abs(sorted.front()),
                                      std::abs(sorted.back())));
    std::vector<double> costs;
    for (double c : sorted) {
        if (costs.empty() || c - costs.back() > tol) {
            costs.push_back(c);
        }
    }
    std::vector<std::uint32_t> level(h.size());
    std::vector<std::uint64_t> optimal;
    for (std::size_t x = 0; x < h.size(); ++x) {
        // Last level whose representative is <= h[x] + tol.
        auto it = std::upper_bound(costs.begin(), costs.end(), h[x] + tol);
        const auto k = static_cast<std::uint32_t>(
            std::distance(costs.begin(), it) - 1);
        level[x] = k;
        if (k == 0) {
            optimal.push_back(x);
        }
    }
    return {n, std::move(costs), std::move(level), std::move(optimal)};
}

inline Spectrum brute_force_spectrum(const MaxCutInstance &g,
                                     std::size_t dense_limit = kDenseQubitLimit) {
    return spectrum_from_diagonal(g.n(), hamiltonian_diagonal(g, dense_limit));
}

/// Instance bundled with its dense diagonal and exact spectrum, shared by runs.
struct PreparedProblem {
    MaxCutInstance instance;
    std::vector<double> h;
    Spectrum spectrum;

    explicit PreparedProblem(MaxCutInstance g,
                             std::size_t dense_limit = kDenseQubitLimit)
        : instance{std::move(g)}, h{hamiltonian_diagonal(instance, dense_limit)},
          spectrum{spectrum_from_diagonal(instance.n(), h)} {}

    [[nodiscard]] std::size_t n() const { return instance.n(); }
};

/**
 * @brief Random d-regular simple graph.
 *
 * Pairing model: stubs are matched one random pair at a time, a pair that
 * would create a loop or a multi-edge is redrawn, and the whole pairing is
 * restarted when no valid pair remains.
 */
inline MaxCutInstance generate_regular(std::size_t n, std::size_t d,
                                       std::uint64_t seed) {
    detail::require(n >= 1 && n <= 64, "vertex count must be in [1,64]");
    detail::require(d < n, "degree must be smaller than the vertex count");
    detail::require((n * d) % 2 == 0, "n*d must be even");

    std::mt19937_64 rng(seed);
    for (;;) {
        std::vector<std::size_t> stubs;
        stubs.reserve(n * d);
        for (std::size_t v = 0; v < n; ++v) {
            stubs.insert(stubs.end(), d, v);
        }
        std::set<std::pair<std::size_t, std::size_t>> edges;
        auto usable = [&](std::size_t u, std::size_t v) {
            return u != v && !edges.contains(std::minmax(u, v));
        };
        bool stuck = false;
        while (!stubs.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, stubs.size() - 1);
            const std::size_t a = pick(rng);
            const std::size_t b = pick(rng);
            if (a != b && usable(stubs[a], stubs[b])) {
                edges.insert(std::minmax(stubs[a], stubs[b]));
                const auto hi = std::max(a, b);
                const auto lo = std::min(a, b);
                stubs[hi] = stubs.back();
                stubs.pop_back();
                stubs[lo] = stubs.back();
                stubs.pop_back();
                continue;
            }
            bool any = false;
            for (std::size_t p = 0; p < stubs.size() && !any; ++p) {
                for (std::size_t q = p + 1; q < stubs.size() && !any; ++q) {
                    any = usable(stubs[p], stubs[q]);
                }
            }
            if (!any) {
                stuck = true;
                break;
            }
        }
        if (stuck) {
            continue;
        }
        std::vector<Edge> out;
        out.reserve(edges.size());
        for (const auto &[u, v] : edges) {
            out.push_back({u, v, 1.0});
        }
        return {n, std::move(out), seed, GraphModel::Regular, "unit"};
    }
}

/// G(n,p) with standard-normal edge weights.
inline MaxCutInstance generate_er_weighted(std::size_t n, double p,
                                           std::uint64_t seed) {
    detail::require(n >= 1 && n <= 64, "vertex count must be in [1,64]");
    detail::require(p >= 0.0 && p <= 1.0, "edge probability must be in [0,1]");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::normal_distribution<double> weight(0.0, 1.0);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double u = coin(rng);
            if (p >= 1.0 || u < p) {
                edges.push_back({i, j, weight(rng)});
            }
        }
    }
    return {n, std::move(edges), seed, GraphModel::ErdosRenyi, "normal"};
}

} // namespace awqv
