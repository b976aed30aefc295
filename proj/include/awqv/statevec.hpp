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
 * Dense statevector container and the few operations on it that do not
 * involve gates.
 */
#pragma once

#include "error.hpp"
#include "problem.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

namespace awqv {

using Complex = std::complex<double>;

/// Tolerance on |norm^2 - 1| accepted for caller-supplied amplitudes.
inline constexpr double kNormTolerance = 1e-10;

/**
 * @brief 2^n complex amplitudes, index bit q is qubit q (0-based).
 */
class StateVector {
  public:
    StateVector() = default;

    /// |0...0>
    explicit StateVector(std::size_t n) : n_{n} {
        detail::require(n >= 1, "qubit count must be positive");
        detail::require_dense(n);
        amps_.assign(std::size_t{1} << n, Complex{0.0, 0.0});
        amps_[0] = 1.0;
    }

    StateVector(std::size_t n, std::vector<Complex> amps)
        : n_{n}, amps_{std::move(amps)} {
        detail::require(n >= 1, "qubit count must be positive");
        detail::require_dense(n);
        detail::require(amps_.size() == (std::size_t{1} << n),
                        "amplitude count must be 2^n");
        const double nrm = norm_squared();
        if (!std::isfinite(nrm) || std::abs(nrm - 1.0) > kNormTolerance) {
            throw InputError("amplitudes are not normalized");
        }
    }

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amps_; }
    [[nodiscard]] std::span<Complex> mutable_amplitudes() { return amps_; }
    [[nodiscard]] const Complex &operator[](std::size_t x) const {
        return amps_[x];
    }

    [[nodiscard]] double norm_squared() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    [[nodiscard]] std::vector<double> probabilities() const {
        std::vector<double> p(amps_.size());
        std::transform(amps_.begin(), amps_.end(), p.begin(),
                       [](const Complex &a) { return std::norm(a); });
        return p;
    }

    /// True when every amplitude has an exactly zero imaginary part.
    [[nodiscard]] bool is_real() const {
        return std::all_of(amps_.begin(), amps_.end(),
                           [](const Complex &a) { return a.imag() == 0.0; });
    }

    /// Rescale to unit norm; throws if the norm has collapsed.
    void normalize() {
        const double nrm = std::sqrt(norm_squared());
        if (!std::isfinite(nrm) || nrm <= 0.0) {
            throw NumericError("cannot normalize a zero or non-finite state");
        }
        for (auto &a : amps_) {
            a /= nrm;
        }
    }

    friend bool operator==(const StateVector &, const StateVector &) = default;

  private:
    std::size_t n_{0};
    std::vector<Complex> amps_;
};

inline StateVector basis_state(std::size_t n, std::uint64_t x) {
    StateVector psi(n);
    detail::require(x < psi.dim(), "basis index out of range");
    auto a = psi.mutable_amplitudes();
    a[0] = 0.0;
    a[x] = 1.0;
    return psi;
}

/// |+>^n
inline StateVector plus_state(std::size_t n) {
    StateVector psi(n);
    const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
    std::fill(psi.mutable_amplitudes().begin(), psi.mutable_amplitudes().end(),
              Complex{amp, 0.0});
    return psi;
}

/// |0> on qubit 0, |+> on the remaining n-1 qubits.
inline StateVector zero_plus_state(std::size_t n) {
    StateVector psi(n);
    const double amp = std::pow(2.0, -0.5 * static_cast<double>(n - 1));
    auto a = psi.mutable_amplitudes();
    for (std::size_t x = 0; x < a.size(); ++x) {
        a[x] = (x & 1U) ? Complex{0.0, 0.0} : Complex{amp, 0.0};
    }
    return psi;
}

/// sum_x h[x] |a_x|^2
inline double expectation_diagonal(std::span<const double> h,
                                   const StateVector &psi) {
    detail::require(h.size() == psi.dim(),
                    "Hamiltonian diagonal length does not match state");
    double e = 0.0;
    const auto a = psi.amplitudes();
    for (std::size_t x = 0; x < a.size(); ++x) {
        e += h[x] * std::norm(a[x]);
    }
    return e;
}

/// <a|b>, conjugating a.
inline Complex inner(const StateVector &a, const StateVector &b) {
    detail::require(a.n() == b.n(), "inner product of states of different size");
    Complex s{0.0, 0.0};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t k = 0; k < x.size(); ++k) {
        s += std::conj(x[k]) * y[k];
    }
    return s;
}

/**
 * @brief Draw m computational-basis outcomes from |a_x|^2.
 *
 * Inverse CDF over the cumulative probabilities with a seeded mt19937_64.
 */
inline std::vector<Bitstring> sample(const StateVector &psi, std::size_t m,
                                     std::uint64_t seed) {
    detail::require(m >= 1, "sample count must be positive");
    std::vector<double> cdf = psi.probabilities();
    std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());
    const double total = cdf.back();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, total);
    std::vector<Bitstring> out;
    out.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double r = u(rng);
        auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
        if (it == cdf.end()) {
            // r rounded up to the total: take the last outcome with mass.
            it = std::lower_bound(cdf.begin(), cdf.end(), total);
        }
        auto x = static_cast<std::uint64_t>(std::distance(cdf.begin(), it));
        out.push_back({psi.n(), x});
    }
    return out;
}

} // namespace awqv
