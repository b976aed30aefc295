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
 * Gradient descent, Adam and the plain VQE loop.
 */
#pragma once

#include "ansatz.hpp"
#include "error.hpp"
#include "qite.hpp"
#include "trace.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <string_view>

namespace awqv {

/// theta - eta * grad
inline ParamVector gd_step(const ParamVector &theta, const ParamVector &grad,
                           double eta) {
    detail::require(theta.size() == grad.size(),
                    "gradient and parameter dimensions differ");
    return theta - eta * grad;
}

/// Bias-corrected Adam; moments are sized lazily on the first step.
struct AdamState {
    double eta{0.05};
    double beta1{0.9};
    double beta2{0.999};
    double eps{1e-8};
    Eigen::VectorXd m;
    Eigen::VectorXd v;
    std::size_t t{0};

    friend bool operator==(const AdamState &a, const AdamState &b) {
        return a.eta == b.eta && a.beta1 == b.beta1 && a.beta2 == b.beta2 &&
               a.eps == b.eps && a.t == b.t && a.m.size() == b.m.size() &&
               a.v.size() == b.v.size() && a.m == b.m && a.v == b.v;
    }
};

inline ParamVector adam_step(AdamState &state, const ParamVector &theta,
                             const ParamVector &grad) {
    detail::require(theta.size() == grad.size(),
                    "gradient and parameter dimensions differ");
    if (state.t == 0 && state.m.size() == 0) {
        state.m = Eigen::VectorXd::Zero(theta.size());
        state.v = Eigen::VectorXd::Zero(theta.size());
    }
    detail::require(state.m.size() == theta.size() && state.v.size() == theta.size(),
                    "Adam moments do not match the parameter dimension");
    ++state.t;
    state.m = state.beta1 * state.m + (1.0 - state.beta1) * grad;
    state.v = state.beta2 * state.v + (1.0 - state.beta2) * grad.cwiseAbs2();
    const double t = static_cast<double>(state.t);
    const double c1 = 1.0 - std::pow(state.beta1, t);
    const double c2 = 1.0 - std::pow(state.beta2, t);
    const Eigen::VectorXd m_hat = state.m / c1;
    const Eigen::VectorXd v_hat = state.v / c2;
    return theta - state.eta * (m_hat.array() / (v_hat.array().sqrt() + state.eps))
                                   .matrix();
}

enum class OptimizerKind { GD, Adam };

inline std::string to_string(OptimizerKind k) {
    return k == OptimizerKind::GD ? "gd" : "adam";
}

inline OptimizerKind parse_optimizer(std::string_view s) {
    if (s == "gd" || s == "GD") {
        return OptimizerKind::GD;
    }
    if (s == "adam" || s == "Adam") {
        return OptimizerKind::Adam;
    }
    throw InputError("unknown optimizer: " + std::string(s));
}

enum class VqeInit { Zero, SingleQiteStep };

struct VqeOptions {
    OptimizerKind optimizer{OptimizerKind::GD};
    double eta{0.05};
    std::size_t iters{50};
    VqeInit init{VqeInit::Zero};
    double beta1{0.9};
    double beta2{0.999};
    double eps{1e-8};
    SolverOptions solver{};
};

/**
 * @brief Gradient-based VQE.
 *
 * With VqeInit::SingleQiteStep the starting point is 2 eta phi from one QITE
 * solve at psi0 (imaginary time step equal to eta).
 */
inline RunTrace vqe_run(const PreparedProblem &prob, const AnsatzSpec &spec,
                        const StateVector &psi0, const VqeOptions &opts) {
    detail::require(opts.iters >= 1, "VQE needs at least one iteration");
    detail::check_state(spec, psi0);
    RunTrace trace("vqe", opts.solver.keep_thetas);
    ParamVector theta = ParamVector::Zero(static_cast<Eigen::Index>(spec.num_params()));
    if (opts.init == VqeInit::SingleQiteStep) {
        const auto sol = solve_step(
            assemble_system(psi0, spec.strings(), prob.h, opts.solver.assembly),
            opts.solver.rel_tol);
        theta = 2.0 * opts.eta * sol.phi;
    }
    StateVector psi = apply_ansatz(spec, theta, psi0);
    trace.record(detail::initial_record(prob, psi), theta);

    AdamState adam{opts.eta, opts.beta1, opts.beta2, opts.eps, {}, {}, 0};
    for (std::size_t s = 1; s <= opts.iters; ++s) {
        const auto t0 = detail::Clock::now();
        const ParamVector grad =
            opts.solver.gradient == GradientMethod::Adjoint
                ? adjoint_gradient(spec, theta, psi, prob.h)
                : parameter_shift_gradient(spec, theta, psi0, prob.h);
        theta = opts.optimizer == OptimizerKind::GD
                    ? gd_step(theta, grad, opts.eta)
                    : adam_step(adam, theta, grad);
        psi = apply_ansatz(spec, theta, psi0);
        IterationRecord rec;
        rec.step = s;
        rec.energy = expectation_diagonal(prob.h, psi);
        rec.p_gs = ground_state_probability(psi, prob.spectrum);
        rec.grad_norm = grad.norm();
        rec.seconds = detail::seconds_since(t0);
        trace.record(rec, theta);
    }
    return trace;
}

} // namespace awqv
