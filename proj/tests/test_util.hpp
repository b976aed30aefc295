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
// Shared fixtures and independent reference implementations for the tests.
#pragma once

#include <awqv/awqv_all.hpp>

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <vector>

namespace awqv::testing {

inline MaxCutInstance triangle() {
    return {3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}};
}

inline MaxCutInstance complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            edges.push_back({i, j, 1.0});
        }
    }
    return {n, std::move(edges)};
}

/// Random normalized complex state.
inline StateVector random_state(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> a(std::size_t{1} << n);
    double s = 0.0;
    for (auto &x : a) {
        x = {g(rng), g(rng)};
        s += std::norm(x);
    }
    for (auto &x : a) {
        x /= std::sqrt(s);
    }
    return {n, std::move(a)};
}

/// Random normalized real state.
inline StateVector random_real_state(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> a(std::size_t{1} << n);
    double s = 0.0;
    for (auto &x : a) {
        x = {g(rng), 0.0};
        s += std::norm(x);
    }
    for (auto &x : a) {
        x /= std::sqrt(s);
    }
    return {n, std::move(a)};
}

inline ParamVector random_params(std::size_t m, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-scale, scale);
    ParamVector t(static_cast<Eigen::Index>(m));
    for (Eigen::Index k = 0; k < t.size(); ++k) {
        t[k] = u(rng);
    }
    return t;
}

/// Dense 2^n x 2^n matrix of a Pauli string built from 2x2 Kronecker factors.
inline Eigen::MatrixXcd dense_pauli(const PauliString &p) {
    using M2 = Eigen::Matrix2cd;
    const Complex i{0.0, 1.0};
    M2 I = M2::Identity();
    M2 X;
    X << 0, 1, 1, 0;
    M2 Y;
    Y << 0, -i, i, 0;
    M2 Z;
    Z << 1, 0, 0, -1;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    // Qubit 0 is the least significant bit, so it is the rightmost factor.
    for (std::size_t q = p.n(); q-- > 0;) {
        const M2 &f = p.factor(q) == PauliFactor::X   ? X
                      : p.factor(q) == PauliFactor::Y ? Y
                      : p.factor(q) == PauliFactor::Z ? Z
                                                      : I;
        Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); ++r) {
            for (Eigen::Index c = 0; c < out.cols(); ++c) {
                next.block(2 * r, 2 * c, 2, 2) = out(r, c) * f;
            }
        }
        out = next;
    }
    return out;
}

inline Eigen::VectorXcd to_eigen(const StateVector &psi) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.dim()));
    for (std::size_t x = 0; x < psi.dim(); ++x) {
        v[static_cast<Eigen::Index>(x)] = psi[x];
    }
    return v;
}

inline double max_abs_diff(const StateVector &a, const StateVector &b) {
    double m = 0.0;
    for (std::size_t x = 0; x < a.dim(); ++x) {
        m = std::max(m, std::abs(a[x] - b[x]));
    }
    return m;
}

/// Reference energy of U(theta)|psi0> through dense matrix exponentials.
inline double dense_ansatz_energy(const AnsatzSpec &spec, const ParamVector &theta,
                                  const StateVector &psi0, const std::vector<double> &h) {
    Eigen::VectorXcd v = to_eigen(psi0);
    const auto dim = v.size();
    const Complex i{0.0, 1.0};
    for (std::size_t k = 0; k < spec.num_params(); ++k) {
        const double t = theta[static_cast<Eigen::Index>(k)];
        const Eigen::MatrixXcd P = dense_pauli(spec.strings()[k]);
        const Eigen::MatrixXcd U = std::cos(t / 2) * Eigen::MatrixXcd::Identity(dim, dim) -
                                   i * std::sin(t / 2) * P;
        v = U * v;
    }
    double e = 0.0;
    for (Eigen::Index x = 0; x < dim; ++x) {
        e += h[static_cast<std::size_t>(x)] * std::norm(v[x]);
    }
    return e;
}

} // namespace awqv::testing
