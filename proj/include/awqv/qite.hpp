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
 * The QITE linear system S phi = b, its least-squares solution, compressed
 * and Trotterized QITE runs, and exact normalized imaginary-time steps.
 */
#pragma once

#include "ansatz.hpp"
#include "error.hpp"
#include "metrics.hpp"
#include "pauli.hpp"
#include "problem.hpp"
#include "statevec.hpp"
#include "trace.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace awqv {

/// S_PP' = Re<P psi|P' psi>, b_P = Im<P psi|H psi>, in string order.
struct QiteSystem {
    Eigen::MatrixXd S;
    Eigen::VectorXd b;
};

struct AssemblyOptions {
    /// Upper bound on memory spent caching P|psi> columns.
    std::size_t memory_budget_bytes{std::size_t{2} << 30};
};

namespace detail {

/**
 * Writes P|psi> into column `col` of R. In the real layout R has dim rows and
 * holds the single non-zero component (real part for even-Y strings,
 * imaginary part for odd-Y strings, valid when psi is real); otherwise rows
 * [0,dim) hold the real part and [dim,2 dim) the imaginary part.
 */
inline void fill_image_column(const PauliString &p, std::span<const Complex> a,
                              bool real_layout, Eigen::Ref<Eigen::VectorXd> col) {
    const std::size_t dim = a.size();
    const std::uint64_t xm = p.x_mask();
    const std::uint64_t zm = p.z_mask();
    const Complex base = i_power(p.y_count());
    if (real_layout) {
        const bool odd = p.odd_y();
        // base is +-1 (even) or +-i (odd); take the matching real factor.
        const double f = odd ? base.imag() : base.real();
        for (std::size_t x = 0; x < dim; ++x) {
            col[static_cast<Eigen::Index>(x ^ xm)] =
                f * parity_sign(x, zm) * a[x].real();
        }
        return;
    }
    const auto d = static_cast<Eigen::Index>(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const Complex v = base * parity_sign(x, zm) * a[x];
        const auto y = static_cast<Eigen::Index>(x ^ xm);
        col[y] = v.real();
        col[d + y] = v.imag();
    }
}

} // namespace detail

inline QiteSystem assemble_system(const StateVector &psi,
                                  const std::vector<PauliString> &strings,
                                  std::span<const double> h,
                                  const AssemblyOptions &opts = {}) {
    detail::require(h.size() == psi.dim(), "Hamiltonian size mismatch");
    for (const auto &p : strings) {
        detail::require(p.n() == psi.n(), "string and state qubit counts differ");
    }
    const auto m = static_cast<Eigen::Index>(strings.size());
    const auto a = psi.amplitudes();

    QiteSystem sys;
    sys.b.resize(m);
    std::vector<Complex> hpsi(a.begin(), a.end());
    for (std::size_t x = 0; x < hpsi.size(); ++x) {
        hpsi[x] *= h[x];
    }
    for (Eigen::Index k = 0; k < m; ++k) {
        sys.b[k] = pauli_matrix_element(strings[static_cast<std::size_t>(k)], a,
                                        hpsi)
                       .imag();
    }

    const bool real_layout = psi.is_real();
    const auto rows = static_cast<Eigen::Index>(real_layout ? a.size()
                                                            : 2 * a.size());
    const std::size_t column_bytes = static_cast<std::size_t>(rows) * sizeof(double);
    const auto cap = static_cast<Eigen::Index>(
        std::max<std::size_t>(1, opts.memory_budget_bytes / column_bytes));

    sys.S = Eigen::MatrixXd::Zero(m, m);
    auto fill_block = [&](Eigen::Index first, Eigen::Index count) {
        Eigen::MatrixXd block(rows, count);
        for (Eigen::Index c = 0; c < count; ++c) {
            detail::fill_image_column(strings[static_cast<std::size_t>(first + c)],
                                      a, real_layout, block.col(c));
        }
        return block;
    };
    if (cap >= m) {
        const Eigen::MatrixXd R = fill_block(0, m);
        sys.S.selfadjointView<Eigen::Lower>().rankUpdate(R.transpose());
    } else {
        // Two blocks must fit at once.
        const Eigen::Index width = std::max<Eigen::Index>(1, cap / 2);
        for (Eigen::Index i0 = 0; i0 < m; i0 += width) {
            const Eigen::Index ni = std::min(width, m - i0);
            const Eigen::MatrixXd Ri = fill_block(i0, ni);
            sys.S.block(i0, i0, ni, ni).noalias() = Ri.transpose() * Ri;
            for (Eigen::Index j0 = i0 + width; j0 < m; j0 += width) {
                const Eigen::Index nj = std::min(width, m - j0);
                const Eigen::MatrixXd Rj = fill_block(j0, nj);
                sys.S.block(j0, i0, nj, ni).noalias() = Rj.transpose() * Ri;
            }
        }
    }
    sys.S.triangularView<Eigen::StrictlyUpper>() = sys.S.transpose();
    if (real_layout) {
        // Re<P psi|P' psi> vanishes when one image is real and the other imaginary.
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                if (strings[static_cast<std::size_t>(i)].odd_y() !=
                    strings[static_cast<std::size_t>(j)].odd_y()) {
                    sys.S(i, j) = 0.0;
                }
            }
        }
    }
    return sys;
}

struct QiteSolution {
    Eigen::VectorXd phi;
    double residual{0.0}; ///< ||S phi - b||
    Eigen::Index rank{0};
};

/**
 * @brief Minimum-norm least-squares solution of S phi = b.
 *
 * Eigen-decomposition pseudo-inverse; eigenvalues below rel_tol * max|eig|
 * are treated as zero.
 */
inline QiteSolution solve_step(const QiteSystem &sys, double rel_tol = 1e-8) {
    detail::require(sys.S.rows() == sys.S.cols() && sys.S.rows() == sys.b.size(),
                    "QITE system dimensions are inconsistent");
    if (!sys.S.allFinite() || !sys.b.allFinite()) {
        throw NumericError("QITE system has non-finite entries");
    }
    QiteSolution sol;
    sol.phi = Eigen::VectorXd::Zero(sys.b.size());
    if (sys.b.size() == 0) {
        return sol;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sys.S);
    if (eig.info() != Eigen::Success) {
        throw NumericError("eigendecomposition of S failed");
    }
    const Eigen::VectorXd &lam = eig.eigenvalues();
    const Eigen::MatrixXd &V = eig.eigenvectors();
    const double cutoff = rel_tol * lam.cwiseAbs().maxCoeff();
    const Eigen::VectorXd proj = V.transpose() * sys.b;
    Eigen::VectorXd scaled = Eigen::VectorXd::Zero(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (std::abs(lam[i]) > cutoff) {
            scaled[i] = proj[i] / lam[i];
            ++sol.rank;
        }
    }
    sol.phi = V * scaled;
    sol.residual = (sys.S * sol.phi - sys.b).norm();
    if (!sol.phi.allFinite()) {
        throw NumericError("QITE solution is not finite");
    }
    return sol;
}

/// Numerical knobs shared by the iterative runs.
struct SolverOptions {
    double rel_tol{1e-8};
    AssemblyOptions assembly{};
    GradientMethod gradient{GradientMethod::Adjoint};
    /// Keep a theta snapshot per record (memory grows with iterations).
    bool keep_thetas{false};
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline IterationRecord initial_record(const PreparedProblem &prob,
                                      const StateVector &psi) {
    IterationRecord rec;
    rec.step = 0;
    rec.energy = expectation_diagonal(prob.h, psi);
    rec.p_gs = ground_state_probability(psi, prob.spectrum);
    return rec;
}

} // namespace detail

/**
 * @brief Compressed QITE: each imaginary-time step becomes the parameter
 * update theta += 2 dtau phi on the fixed circuit, starting from theta = 0.
 */
inline RunTrace cqite_run(const PreparedProblem &prob, const AnsatzSpec &spec,
                          const StateVector &psi0, double dtau,
                          std::size_t steps, const SolverOptions &opts = {}) {
    detail::require(steps >= 1, "cQITE needs at least one step");
    detail::check_state(spec, psi0);
    RunTrace trace("cqite", opts.keep_thetas);
    ParamVector theta = ParamVector::Zero(static_cast<Eigen::Index>(spec.num_params()));
    StateVector psi = psi0;
    trace.record(detail::initial_record(prob, psi), theta);
    for (std::size_t s = 1; s <= steps; ++s) {
        const auto t0 = detail::Clock::now();
        const auto sol = solve_step(
            assemble_system(psi, spec.strings(), prob.h, opts.assembly),
            opts.rel_tol);
        theta += 2.0 * dtau * sol.phi;
        psi = apply_ansatz(spec, theta, psi0);
        IterationRecord rec;
        rec.step = s;
        rec.energy = expectation_diagonal(prob.h, psi);
        rec.p_gs = ground_state_probability(psi, prob.spectrum);
        rec.residual = sol.residual;
        rec.phi_norm = sol.phi.norm();
        rec.seconds = detail::seconds_since(t0);
        trace.record(rec, theta);
    }
    return trace;
}

/**
 * @brief Trotterized QITE: the state itself is advanced by the rotations
 * e^{-i dtau phi_P P} each step, so the circuit grows by one layer per step.
 *
 * The recorded parameter vector is the accumulated rotation angle per string,
 * which equals the cQITE parameters when the strings commute. When
 * `best_state` is given it receives the state of the lowest-energy record.
 */
inline RunTrace qite_run(const PreparedProblem &prob,
                         const std::vector<PauliString> &strings,
                         const StateVector &psi0, double dtau, std::size_t steps,
                         const SolverOptions &opts = {},
                         StateVector *best_state = nullptr) {
    detail::require(steps >= 1, "QITE needs at least one step");
    RunTrace trace("qite", opts.keep_thetas);
    ParamVector angles = ParamVector::Zero(static_cast<Eigen::Index>(strings.size()));
    StateVector psi = psi0;
    trace.record(detail::initial_record(prob, psi), angles);
    if (best_state) {
        *best_state = psi;
    }
    for (std::size_t s = 1; s <= steps; ++s) {
        const auto t0 = detail::Clock::now();
        const auto sol = solve_step(
            assemble_system(psi, strings, prob.h, opts.assembly), opts.rel_tol);
        const ParamVector step_angles = 2.0 * dtau * sol.phi;
        auto amps = psi.mutable_amplitudes();
        for (std::size_t k = 0; k < strings.size(); ++k) {
            const double t = step_angles[static_cast<Eigen::Index>(k)];
            if (t != 0.0) {
                rotate_in_place(strings[k], t, amps);
            }
        }
        angles += step_angles;
        IterationRecord rec;
        rec.step = s;
        rec.energy = expectation_diagonal(prob.h, psi);
        rec.p_gs = ground_state_probability(psi, prob.spectrum);
        rec.residual = sol.residual;
        rec.phi_norm = sol.phi.norm();
        rec.seconds = detail::seconds_since(t0);
        trace.record(rec, angles);
        if (best_state && trace.best_step() == s) {
            *best_state = psi;
        }
    }
    return trace;
}

/**
 * @brief One exact step of normalized imaginary-time evolution,
 * e^{-dtau H}|psi> / ||e^{-dtau H}|psi>||.
 */
inline StateVector exact_ite_step(const StateVector &psi,
                                  std::span<const double> h, double dtau) {
    detail::require(h.size() == psi.dim(), "Hamiltonian size mismatch");
    detail::require(dtau > 0.0, "imaginary time step must be positive");
    // Shifting H by the lowest populated level leaves the normalized result
    // unchanged and keeps the dominant weights at O(1).
    double shift = std::numeric_limits<double>::infinity();
    const auto a = psi.amplitudes();
    for (std::size_t x = 0; x < a.size(); ++x) {
        if (a[x] != Complex{0.0, 0.0}) {
            shift = std::min(shift, h[x]);
        }
    }
    if (!std::isfinite(shift)) {
        throw NumericError("imaginary-time step on an all-zero state");
    }
    StateVector out = psi;
    auto b = out.mutable_amplitudes();
    for (std::size_t x = 0; x < b.size(); ++x) {
        b[x] *= std::exp(-dtau * (h[x] - shift));
    }
    out.normalize();
    return out;
}

} // namespace awqv
