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
 * Solution-quality metrics computed exactly from a statevector and the
 * brute-forced spectrum.
 */
#pragma once

#include "error.hpp"
#include "problem.hpp"
#include "statevec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace awqv {

/// Probability mass on the optimal set.
inline double ground_state_probability(const StateVector &psi,
                                       const Spectrum &spec) {
    detail::require(psi.n() == spec.n(), "state and spectrum sizes differ");
    double p = 0.0;
    for (auto x : spec.optimal_set()) {
        p += std::norm(psi[x]);
    }
    return p;
}

/**
 * @brief Mass of a state on each cost level, with upper tails.
 *
 * at_least[k] = P(C >= C_k) and above[k] = P(C > C_k), k = 0..K-1 ascending
 * in cost (level 0 is optimal).
 */
struct LevelDistribution {
    std::vector<double> costs;
    std::vector<double> mass;
    std::vector<double> at_least;
    std::vector<double> above;
};

inline LevelDistribution level_distribution(const StateVector &psi,
                                            const Spectrum &spec) {
    detail::require(psi.n() == spec.n(), "state and spectrum sizes differ");
    LevelDistribution d;
    d.costs = spec.costs();
    const std::size_t K = spec.K();
    d.mass.assign(K, 0.0);
    const auto a = psi.amplitudes();
    for (std::size_t x = 0; x < a.size(); ++x) {
        d.mass[spec.level_of(x)] += std::norm(a[x]);
    }
    const double total = psi.norm_squared();
    for (auto &m : d.mass) {
        m /= total;
    }
    d.at_least.assign(K, 0.0);
    d.above.assign(K, 0.0);
    double tail = 0.0;
    for (std::size_t k = K; k-- > 0;) {
        d.above[k] = tail;
        tail += d.mass[k];
        d.at_least[k] = tail;
    }
    d.at_least[0] = 1.0;
    return d;
}

/// alpha = (C - C_K) / (C_1 - C_K); 1 when every solution has the same cost.
inline double approximation_ratio(double cost, const Spectrum &spec) {
    const double tol = spec.tolerance();
    if (cost < spec.best() - tol || cost > spec.worst() + tol) {
        throw InputError("cost lies outside the instance's cost range");
    }
    if (spec.K() < 2) {
        return 1.0;
    }
    const double a = (cost - spec.worst()) / (spec.best() - spec.worst());
    return std::clamp(a, 0.0, 1.0);
}

/**
 * @brief Expected approximation ratio of the best of M independent samples.
 *
 * The best of M samples lands on level k with probability
 * P(C >= C_k)^M - P(C > C_k)^M.
 */
inline double expected_best_alpha(const LevelDistribution &d, std::size_t M) {
    detail::require(M >= 1, "sample budget must be positive");
    const std::size_t K = d.costs.size();
    if (K < 2) {
        return 1.0;
    }
    const double m = static_cast<double>(M);
    double expected_cost = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        expected_cost +=
            d.costs[k] * (std::pow(d.at_least[k], m) - std::pow(d.above[k], m));
    }
    const double c1 = d.costs.front();
    const double cK = d.costs.back();
    return (expected_cost - cK) / (c1 - cK);
}

inline double expected_best_alpha(const StateVector &psi, const Spectrum &spec,
                                  std::size_t M) {
    return expected_best_alpha(level_distribution(psi, spec), M);
}

/// Sampling-based failure: fewer samples than the expected 1/p_gs needed.
inline bool failure_predicate_awqv(double p_gs, std::size_t M) {
    detail::require(M >= 1, "sample budget must be positive");
    if (!(p_gs > 0.0)) {
        return true;
    }
    return static_cast<double>(M) < 1.0 / p_gs;
}

/// Deterministic failure: the returned solution is not optimal.
inline bool failure_predicate_gw(double best_cost, const Spectrum &spec) {
    return !spec.is_optimal_cost(best_cost);
}

} // namespace awqv
