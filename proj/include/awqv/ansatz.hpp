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
 * Pauli-string sets, the P1A/P2A circuit family with a round-robin gate
 * order, circuit application and energy gradients.
 */
#pragma once

#include "error.hpp"
#include "pauli.hpp"
#include "statevec.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cctype>
#include <numbers>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace awqv {

using ParamVector = Eigen::VectorXd;

enum class AnsatzVariant { P1A, P2A, P2A_ZY, P2A_XY, Custom };

inline std::string to_string(AnsatzVariant v) {
    switch (v) {
    case AnsatzVariant::P1A:
        return "P1A";
    case AnsatzVariant::P2A:
        return "P2A";
    case AnsatzVariant::P2A_ZY:
        return "P2A-ZY";
    case AnsatzVariant::P2A_XY:
        return "P2A-XY";
    case AnsatzVariant::Custom:
        break;
    }
    return "custom";
}

/// Case-insensitive: "p2a-zy", "P2A-ZY", ...
inline AnsatzVariant parse_ansatz_variant(std::string_view s) {
    std::string u(s);
    std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) {
        return static_cast<char>(std::toupper(c));
    });
    for (auto v : {AnsatzVariant::P1A, AnsatzVariant::P2A, AnsatzVariant::P2A_ZY,
                   AnsatzVariant::P2A_XY}) {
        if (u == to_string(v)) {
            return v;
        }
    }
    if (u == "CUSTOM") {
        return AnsatzVariant::Custom;
    }
    throw InputError("unknown ansatz variant: " + std::string(s));
}

using QubitPair = std::pair<std::size_t, std::size_t>;
using Schedule = std::vector<std::vector<QubitPair>>;

/**
 * @brief Circle-method tournament over n qubits.
 *
 * Even n gives n-1 rounds of n/2 disjoint pairs; odd n gives n rounds with one
 * idle qubit each. Pairs are (low, high) and sorted within a round.
 */
inline Schedule round_robin_schedule(std::size_t n) {
    detail::require(n >= 2, "round-robin schedule needs at least 2 qubits");
    const std::size_t slots = n + (n % 2);
    const std::size_t idle = n; // dummy player for odd n
    std::vector<std::size_t> ring(slots);
    for (std::size_t k = 0; k < slots; ++k) {
        ring[k] = k < n ? k : idle;
    }
    Schedule rounds;
    for (std::size_t r = 0; r + 1 < slots; ++r) {
        std::vector<QubitPair> round;
        for (std::size_t k = 0; k < slots / 2; ++k) {
            const auto a = ring[k];
            const auto b = ring[slots - 1 - k];
            if (a != idle && b != idle) {
                round.push_back(std::minmax(a, b));
            }
        }
        std::sort(round.begin(), round.end());
        rounds.push_back(std::move(round));
        // Keep ring[0] fixed, rotate the rest by one position.
        std::rotate(ring.begin() + 1, ring.end() - 1, ring.end());
    }
    return rounds;
}

/**
 * @brief All non-identity strings whose support lies within some D-subset of
 * the n qubits.
 *
 * Enumerates ascending index combinations and factor tuples in I<X<Y<Z order,
 * drops identity factors and keeps the first occurrence of each string.
 */
inline std::vector<PauliString> build_full_set(std::size_t n, std::size_t D) {
    detail::require(n >= 1 && n <= 64, "qubit count must be in [1,64]");
    detail::require(D >= 1 && D <= n, "domain size must be in [1,n]");
    std::vector<PauliString> out;
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;

    std::vector<std::size_t> combo(D);
    for (std::size_t k = 0; k < D; ++k) {
        combo[k] = k;
    }
    const std::size_t tuples = std::size_t{1} << (2 * D);
    for (;;) {
        for (std::size_t t = 1; t < tuples; ++t) {
            PauliString p(n);
            for (std::size_t k = 0; k < D; ++k) {
                const auto f = static_cast<PauliFactor>(
                    (t >> (2 * (D - 1 - k))) & 3U);
                p.set(combo[k], f);
            }
            if (seen.insert({p.x_mask(), p.z_mask()}).second) {
                out.push_back(p);
            }
        }
        // Next combination in lexicographic order.
        std::size_t k = D;
        while (k > 0 && combo[k - 1] == n - D + (k - 1)) {
            --k;
        }
        if (k == 0) {
            break;
        }
        ++combo[k - 1];
        for (std::size_t m = k; m < D; ++m) {
            combo[m] = combo[m - 1] + 1;
        }
    }
    return out;
}

/// build_full_set restricted to strings with an odd number of Y factors.
inline std::vector<PauliString> build_reduced_set(std::size_t n, std::size_t D) {
    auto full = build_full_set(n, D);
    std::vector<PauliString> out;
    std::copy_if(full.begin(), full.end(), std::back_inserter(out),
                 [](const PauliString &p) { return p.odd_y(); });
    return out;
}

/**
 * @brief Ordered list of Pauli strings, one rotation parameter each.
 */
class AnsatzSpec {
  public:
    AnsatzSpec() = default;
    AnsatzSpec(std::size_t n, std::vector<PauliString> strings,
               AnsatzVariant variant, Schedule schedule)
        : n_{n}, strings_{std::move(strings)}, variant_{variant},
          schedule_{std::move(schedule)} {}

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] std::size_t num_params() const { return strings_.size(); }
    [[nodiscard]] const std::vector<PauliString> &strings() const {
        return strings_;
    }
    [[nodiscard]] AnsatzVariant variant() const { return variant_; }
    [[nodiscard]] const Schedule &schedule() const { return schedule_; }

    [[nodiscard]] std::vector<std::string> labels() const {
        std::vector<std::string> out;
        out.reserve(strings_.size());
        for (const auto &p : strings_) {
            out.push_back(p.label());
        }
        return out;
    }

  private:
    std::size_t n_{0};
    std::vector<PauliString> strings_;
    AnsatzVariant variant_{AnsatzVariant::Custom};
    Schedule schedule_;
};

namespace detail {

inline PauliString pair_string(std::size_t n, std::size_t i, PauliFactor fi,
                               std::size_t j, PauliFactor fj) {
    PauliString p(n);
    p.set(i, fi);
    p.set(j, fj);
    return p;
}

} // namespace detail

/**
 * @brief Canonical circuit for a named variant.
 *
 * Order: Y_i rotations for ascending i, then two-qubit strings round by round
 * of round_robin_schedule(n), pairs (i,j) ascending within a round, and per
 * pair Z_iY_j, Y_iZ_j, X_iY_j, Y_iX_j (the subset the variant keeps).
 */
inline AnsatzSpec build_ansatz(std::size_t n, AnsatzVariant variant) {
    detail::require(n >= 1 && n <= 64, "qubit count must be in [1,64]");
    detail::require(variant != AnsatzVariant::Custom,
                    "custom ansatz must be built from an explicit string list");
    std::vector<PauliString> strings;
    for (std::size_t q = 0; q < n; ++q) {
        PauliString p(n);
        p.set(q, PauliFactor::Y);
        strings.push_back(p);
    }
    if (variant == AnsatzVariant::P1A || n < 2) {
        return {n, std::move(strings), variant, {}};
    }
    const bool zy = variant == AnsatzVariant::P2A || variant == AnsatzVariant::P2A_ZY;
    const bool xy = variant == AnsatzVariant::P2A || variant == AnsatzVariant::P2A_XY;
    using F = PauliFactor;
    Schedule schedule = round_robin_schedule(n);
    for (const auto &round : schedule) {
        for (const auto &[i, j] : round) {
            if (zy) {
                strings.push_back(detail::pair_string(n, i, F::Z, j, F::Y));
                strings.push_back(detail::pair_string(n, i, F::Y, j, F::Z));
            }
            if (xy) {
                strings.push_back(detail::pair_string(n, i, F::X, j, F::Y));
                strings.push_back(detail::pair_string(n, i, F::Y, j, F::X));
            }
        }
    }
    return {n, std::move(strings), variant, std::move(schedule)};
}

/**
 * @brief Circuit from an explicit ordered string list.
 *
 * Strings must be distinct and carry an odd number of Y factors. The gate
 * order is the list order; the schedule records which round-robin rounds the
 * two-qubit strings fall into.
 */
inline AnsatzSpec make_custom_ansatz(std::size_t n,
                                     std::vector<PauliString> strings) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    std::set<QubitPair> pairs;
    for (const auto &p : strings) {
        detail::require(p.n() == n, "string qubit count does not match");
        detail::require(p.odd_y(), "ansatz strings need an odd number of Y: " +
                                       p.label());
        detail::require(seen.insert({p.x_mask(), p.z_mask()}).second,
                        "duplicate ansatz string: " + p.label());
        if (p.weight() == 2) {
            const auto qs = p.qubits();
            pairs.insert({qs[0], qs[1]});
        }
    }
    Schedule schedule;
    if (n >= 2 && !pairs.empty()) {
        for (const auto &round : round_robin_schedule(n)) {
            std::vector<QubitPair> kept;
            std::copy_if(round.begin(), round.end(), std::back_inserter(kept),
                         [&](const QubitPair &q) { return pairs.contains(q); });
            if (!kept.empty()) {
                schedule.push_back(std::move(kept));
            }
        }
    }
    return {n, std::move(strings), AnsatzVariant::Custom, std::move(schedule)};
}

namespace detail {

inline void check_params(const AnsatzSpec &spec, const ParamVector &theta) {
    detail::require(static_cast<std::size_t>(theta.size()) == spec.num_params(),
                    "parameter vector length " + std::to_string(theta.size()) +
                        " does not match ansatz size " +
                        std::to_string(spec.num_params()));
}

inline void check_state(const AnsatzSpec &spec, const StateVector &psi) {
    detail::require(psi.n() == spec.n(), "state and ansatz qubit counts differ");
}

} // namespace detail

/// U(theta)|psi0>, strings applied in list order.
inline StateVector apply_ansatz(const AnsatzSpec &spec, const ParamVector &theta,
                                const StateVector &psi0) {
    detail::check_params(spec, theta);
    detail::check_state(spec, psi0);
    StateVector psi = psi0;
    auto a = psi.mutable_amplitudes();
    for (std::size_t k = 0; k < spec.num_params(); ++k) {
        if (theta[static_cast<Eigen::Index>(k)] != 0.0) {
            rotate_in_place(spec.strings()[k], theta[static_cast<Eigen::Index>(k)], a);
        }
    }
    return psi;
}

inline double ansatz_energy(const AnsatzSpec &spec, const ParamVector &theta,
                            const StateVector &psi0, std::span<const double> h) {
    return expectation_diagonal(h, apply_ansatz(spec, theta, psi0));
}

enum class GradientMethod { Adjoint, ParameterShift };

inline std::string to_string(GradientMethod m) {
    return m == GradientMethod::Adjoint ? "adjoint" : "parameter-shift";
}

inline GradientMethod parse_gradient_method(std::string_view s) {
    if (s == "adjoint") {
        return GradientMethod::Adjoint;
    }
    if (s == "parameter-shift" || s == "shift") {
        return GradientMethod::ParameterShift;
    }
    throw InputError("unknown gradient method: " + std::string(s));
}

/**
 * @brief Reverse-mode gradient of <psi(theta)|H|psi(theta)>.
 *
 * With lambda = H|psi> propagated backwards alongside |psi>, each component is
 * Im <lambda|P_k|psi_k>. `forward` may carry the already-prepared U(theta)|psi0>.
 */
inline ParamVector adjoint_gradient(const AnsatzSpec &spec,
                                    const ParamVector &theta,
                                    const StateVector &forward,
                                    std::span<const double> h) {
    detail::check_params(spec, theta);
    detail::check_state(spec, forward);
    detail::require(h.size() == forward.dim(), "Hamiltonian size mismatch");
    StateVector psi = forward;
    StateVector lambda = forward;
    auto pa = psi.mutable_amplitudes();
    auto la = lambda.mutable_amplitudes();
    for (std::size_t x = 0; x < la.size(); ++x) {
        la[x] *= h[x];
    }
    ParamVector grad(theta.size());
    for (std::size_t k = spec.num_params(); k-- > 0;) {
        const auto &p = spec.strings()[k];
        const auto idx = static_cast<Eigen::Index>(k);
        grad[idx] = pauli_matrix_element(p, la, pa).imag();
        if (k > 0 && theta[idx] != 0.0) {
            rotate_in_place(p, -theta[idx], pa);
            rotate_in_place(p, -theta[idx], la);
        }
    }
    return grad;
}

/// Two-term shift rule, exact for e^{-i theta/2 P} gates.
inline ParamVector parameter_shift_gradient(const AnsatzSpec &spec,
                                            const ParamVector &theta,
                                            const StateVector &psi0,
                                            std::span<const double> h) {
    detail::check_params(spec, theta);
    constexpr double shift = std::numbers::pi / 2.0;
    ParamVector grad(theta.size());
    ParamVector t = theta;
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
        t[j] = theta[j] + shift;
        const double up = ansatz_energy(spec, t, psi0, h);
        t[j] = theta[j] - shift;
        const double down = ansatz_energy(spec, t, psi0, h);
        t[j] = theta[j];
        grad[j] = 0.5 * (up - down);
    }
    return grad;
}

inline ParamVector energy_gradient(const AnsatzSpec &spec,
                                   const ParamVector &theta,
                                   const StateVector &psi0,
                                   std::span<const double> h,
                                   GradientMethod method = GradientMethod::Adjoint) {
    if (method == GradientMethod::ParameterShift) {
        return parameter_shift_gradient(spec, theta, psi0, h);
    }
    return adjoint_gradient(spec, theta, apply_ansatz(spec, theta, psi0), h);
}

} // namespace awqv
