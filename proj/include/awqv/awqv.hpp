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
 * Adaptive weighted QITE-VQE: the weight schedule, the blended update
 * direction, the main loop, and the QITE-initialized VQE ablation (QIV).
 */
#pragma once

#include "ansatz.hpp"
#include "error.hpp"
#include "metrics.hpp"
#include "optimize.hpp"
#include "qite.hpp"
#include "statevec.hpp"
#include "trace.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace awqv {

/// Below this gradient norm the gradient term of the update is dropped.
inline constexpr double kGradientNormFloor = 1e-12;

/// Outcome of one weight update, kept for diagnostics and property checks.
struct WeightUpdate {
    double raw{0.0};      ///< before the monotone clamp
    double w{0.0};        ///< after the clamp
    double ratio{0.0};    ///< delta(s-1) / mean(delta(1..s-1)); 0 if the mean is 0
    bool mean_zero{false};
};

/**
 * @brief w(s) = mu w(s-1) + (1-mu)(1 - lambda * ratio), then clamped to
 * [w(s-1), 1].
 */
inline WeightUpdate weight_formula(double w_prev, double mu, double lambda,
                                   double delta_last, double delta_mean) {
    WeightUpdate u;
    u.mean_zero = delta_mean == 0.0;
    u.ratio = u.mean_zero ? 0.0 : delta_last / delta_mean;
    u.raw = mu * w_prev + (1.0 - mu) * (1.0 - lambda * u.ratio);
    u.w = std::min(std::max(u.raw, w_prev), 1.0);
    return u;
}

/**
 * @brief History-driven weight w(s) that moves the update from the cQITE
 * direction toward the gradient as the energy decrease slows.
 *
 * Feed energies <H>^(0), <H>^(1), ... with observe_energy() and call
 * advance() once per iteration s = 1, 2, ...; w(1) = 0.
 */
class WeightSchedule {
  public:
    WeightSchedule(double mu, double lambda) : mu_{mu}, lambda_{lambda} {
        detail::require(mu > 0.0 && mu < 1.0, "mu must lie in (0,1)");
        detail::require(lambda > 0.0, "lambda must be positive");
    }

    void observe_energy(double e) {
        if (!energies_.empty()) {
            deltas_.push_back(energies_.back() - e);
        }
        energies_.push_back(e);
    }

    /// Computes w(s) for s = iteration() + 1 and appends it.
    double advance() {
        const std::size_t s = weights_.size() + 1;
        if (s == 1) {
            updates_.push_back({0.0, 0.0, 0.0, false});
            weights_.push_back(0.0);
            return 0.0;
        }
        // Needs <H>^(0..s-1), i.e. delta(1..s-1).
        detail::require(deltas_.size() >= s - 1,
                        "weight update needs the energy of the previous iteration");
        double sum = 0.0;
        for (std::size_t l = 0; l < s - 1; ++l) {
            sum += deltas_[l];
        }
        const double mean = sum / static_cast<double>(s - 1);
        const auto u =
            weight_formula(weights_.back(), mu_, lambda_, deltas_[s - 2], mean);
        updates_.push_back(u);
        weights_.push_back(u.w);
        return u.w;
    }

    [[nodiscard]] std::size_t iteration() const { return weights_.size(); }
    [[nodiscard]] double mu() const { return mu_; }
    [[nodiscard]] double lambda() const { return lambda_; }
    [[nodiscard]] const std::vector<double> &weights() const { return weights_; }
    [[nodiscard]] const std::vector<double> &deltas() const { return deltas_; }
    [[nodiscard]] const std::vector<double> &energies() const { return energies_; }
    [[nodiscard]] const std::vector<WeightUpdate> &updates() const {
        return updates_;
    }

  private:
    double mu_;
    double lambda_;
    std::vector<double> energies_;
    std::vector<double> deltas_;
    std::vector<double> weights_;
    std::vector<WeightUpdate> updates_;
};

/// w(s) for iteration s; s must be the schedule's next iteration.
inline double update_weight(WeightSchedule &sched, std::size_t s) {
    detail::require(s == sched.iteration() + 1,
                    "weights must be updated in iteration order");
    return sched.advance();
}

/**
 * @brief w (||phi||/||grad||) grad - 2 (1-w) phi.
 *
 * The gradient term is dropped when ||grad|| < kGradientNormFloor.
 */
inline ParamVector awqv_direction(const ParamVector &grad, const ParamVector &phi,
                                  double w) {
    detail::require(grad.size() == phi.size(), "gradient and phi dimensions differ");
    detail::require(w >= 0.0 && w <= 1.0, "weight must lie in [0,1]");
    ParamVector dir = -2.0 * (1.0 - w) * phi;
    const double gn = grad.norm();
    if (gn >= kGradientNormFloor) {
        dir += w * (phi.norm() / gn) * grad;
    }
    return dir;
}

struct AwqvOptions {
    double eta{0.05};
    double mu{0.9};
    double lambda{1.0};
    std::size_t iters{50};
    std::size_t samples{10};
    std::uint64_t seed{0};
    /// Forces w(s) to a constant (module cross-checks only).
    std::optional<double> fixed_weight{};
    SolverOptions solver{};
};

struct AwqvResult {
    Bitstring solution;
    double solution_cost{0.0};
    RunTrace trace;
    std::vector<double> weights; ///< w(1..N)
    std::vector<WeightUpdate> updates;
};

namespace detail {

inline void pick_solution(const PreparedProblem &prob, const AnsatzSpec &spec,
                          const StateVector &psi0, std::size_t samples,
                          std::uint64_t seed, AwqvResult &out) {
    const StateVector best = apply_ansatz(spec, out.trace.best_theta(), psi0);
    const auto draws = sample(best, samples, seed);
    out.solution = draws.front();
    out.solution_cost = prob.instance.cost_of_index(out.solution.bits);
    for (const auto &x : draws) {
        const double c = prob.instance.cost_of_index(x.bits);
        if (c < out.solution_cost) {
            out.solution = x;
            out.solution_cost = c;
        }
    }
}

inline ParamVector gradient_at(const AnsatzSpec &spec, const ParamVector &theta,
                               const StateVector &psi, const StateVector &psi0,
                               const PreparedProblem &prob,
                               const SolverOptions &opts) {
    return opts.gradient == GradientMethod::Adjoint
               ? adjoint_gradient(spec, theta, psi, prob.h)
               : parameter_shift_gradient(spec, theta, psi0, prob.h);
}

} // namespace detail

/**
 * @brief AWQV main loop.
 *
 * Per iteration: gradient and QITE solve at theta^(s-1), a gradient-direction
 * move weighted by w(s) ||phi||/||grad||, a cQITE move weighted by
 * 2 (1 - w(s)), then the energy. The best-energy parameters are sampled
 * `samples` times and the lowest-cost draw is returned.
 */
inline AwqvResult awqv_run(const PreparedProblem &prob, const AnsatzSpec &spec,
                           const StateVector &psi0, const AwqvOptions &opts) {
    detail::require(opts.iters >= 1, "AWQV needs at least one iteration");
    detail::require(opts.samples >= 1, "AWQV needs at least one sample");
    detail::require(opts.eta > 0.0, "learning rate must be positive");
    detail::check_state(spec, psi0);
    if (opts.fixed_weight) {
        detail::require(*opts.fixed_weight >= 0.0 && *opts.fixed_weight <= 1.0,
                        "fixed weight must lie in [0,1]");
    }
    WeightSchedule sched(opts.mu, opts.lambda);
    AwqvResult out;
    out.trace = RunTrace("awqv", opts.solver.keep_thetas);

    ParamVector theta = ParamVector::Zero(static_cast<Eigen::Index>(spec.num_params()));
    StateVector psi = psi0;
    auto first = detail::initial_record(prob, psi);
    out.trace.record(first, theta);
    sched.observe_energy(first.energy);

    for (std::size_t s = 1; s <= opts.iters; ++s) {
        const auto t0 = detail::Clock::now();
        const ParamVector grad =
            detail::gradient_at(spec, theta, psi, psi0, prob, opts.solver);
        const auto sol = solve_step(
            assemble_system(psi, spec.strings(), prob.h, opts.solver.assembly),
            opts.solver.rel_tol);
        double w = update_weight(sched, s);
        if (opts.fixed_weight) {
            w = *opts.fixed_weight;
        }
        const double gn = grad.norm();
        if (gn >= kGradientNormFloor) {
            theta -= opts.eta * w * (sol.phi.norm() / gn) * grad;
        }
        theta += 2.0 * opts.eta * (1.0 - w) * sol.phi;

        psi = apply_ansatz(spec, theta, psi0);
        IterationRecord rec;
        rec.step = s;
        rec.energy = expectation_diagonal(prob.h, psi);
        rec.p_gs = ground_state_probability(psi, prob.spectrum);
        rec.w = w;
        rec.residual = sol.residual;
        rec.grad_norm = gn;
        rec.phi_norm = sol.phi.norm();
        rec.seconds = detail::seconds_since(t0);
        out.trace.record(rec, theta);
        sched.observe_energy(rec.energy);
    }
    out.weights = sched.weights();
    out.updates = sched.updates();
    detail::pick_solution(prob, spec, psi0, opts.samples, opts.seed, out);
    return out;
}

struct QivOptions {
    double eta{0.05};
    std::size_t iters{50};
    std::size_t samples{10};
    std::uint64_t seed{0};
    SolverOptions solver{};
};

/**
 * @brief cQITE until the energy first rises, then gradient descent from the
 * best cQITE parameters for the remaining iterations.
 *
 * Records carry w = 0 before the switch and w = 1 after it.
 */
inline AwqvResult qiv_run(const PreparedProblem &prob, const AnsatzSpec &spec,
                          const StateVector &psi0, const QivOptions &opts) {
    detail::require(opts.iters >= 1, "QIV needs at least one iteration");
    detail::require(opts.samples >= 1, "QIV needs at least one sample");
    detail::check_state(spec, psi0);
    AwqvResult out;
    out.trace = RunTrace("qiv", opts.solver.keep_thetas);

    ParamVector theta = ParamVector::Zero(static_cast<Eigen::Index>(spec.num_params()));
    StateVector psi = psi0;
    auto first = detail::initial_record(prob, psi);
    out.trace.record(first, theta);
    double prev_energy = first.energy;
    bool switched = false;

    for (std::size_t s = 1; s <= opts.iters; ++s) {
        const auto t0 = detail::Clock::now();
        IterationRecord rec;
        rec.step = s;
        if (!switched) {
            const auto sol = solve_step(
                assemble_system(psi, spec.strings(), prob.h, opts.solver.assembly),
                opts.solver.rel_tol);
            theta += 2.0 * opts.eta * sol.phi;
            rec.w = 0.0;
            rec.residual = sol.residual;
            rec.phi_norm = sol.phi.norm();
        } else {
            const ParamVector grad =
                detail::gradient_at(spec, theta, psi, psi0, prob, opts.solver);
            theta = gd_step(theta, grad, opts.eta);
            rec.w = 1.0;
            rec.grad_norm = grad.norm();
        }
        psi = apply_ansatz(spec, theta, psi0);
        rec.energy = expectation_diagonal(prob.h, psi);
        rec.p_gs = ground_state_probability(psi, prob.spectrum);
        rec.seconds = detail::seconds_since(t0);
        out.trace.record(rec, theta);
        out.weights.push_back(rec.w);

        if (!switched && rec.energy > prev_energy) {
            switched = true;
            out.trace.set_switch_step(s);
            theta = out.trace.best_theta();
            psi = apply_ansatz(spec, theta, psi0);
        }
        prev_energy = rec.energy;
    }
    detail::pick_solution(prob, spec, psi0, opts.samples, opts.seed, out);
    return out;
}

} // namespace awqv
