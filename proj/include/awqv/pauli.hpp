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
 * Pauli strings in (x_mask, z_mask) form and their action on statevectors.
 *
 * A string acts on a basis state as P|x> = i^{y} (-1)^{|x & z_mask|} |x ^ x_mask>
 * with y = |x_mask & z_mask|. This fixes Y|0> = i|1>, Y|1> = -i|0>.
 */
#pragma once

#include "error.hpp"
#include "statevec.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace awqv {

enum class PauliFactor : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

class PauliString {
  public:
    PauliString() = default;

    /// Identity on n qubits.
    explicit PauliString(std::size_t n) : n_{n} {
        detail::require(n >= 1 && n <= 64, "qubit count must be in [1,64]");
    }

    PauliString(std::size_t n, std::uint64_t x_mask, std::uint64_t z_mask)
        : n_{n}, x_mask_{x_mask}, z_mask_{z_mask} {
        detail::require(n >= 1 && n <= 64, "qubit count must be in [1,64]");
        const std::uint64_t all =
            n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
        detail::require(((x_mask | z_mask) & ~all) == 0,
                        "Pauli mask exceeds qubit count");
    }

    /// Builds a string from (qubit, factor) pairs; qubits are 0-based.
    static PauliString
    from_factors(std::size_t n,
                 std::initializer_list<std::pair<std::size_t, PauliFactor>> fs) {
        PauliString p(n);
        for (const auto &[q, f] : fs) {
            p.set(q, f);
        }
        return p;
    }

    /**
     * @brief Parses labels such as "Y3" or "Z1Y4" (1-based qubit indices).
     * "I" is the identity.
     */
    static PauliString parse(std::size_t n, std::string_view label) {
        PauliString p(n);
        if (label == "I") {
            return p;
        }
        detail::require(!label.empty(), "empty Pauli label");
        std::size_t k = 0;
        while (k < label.size()) {
            const char c = label[k++];
            PauliFactor f{};
            switch (c) {
            case 'X':
                f = PauliFactor::X;
                break;
            case 'Y':
                f = PauliFactor::Y;
                break;
            case 'Z':
                f = PauliFactor::Z;
                break;
            default:
                throw InputError("bad Pauli label: " + std::string(label));
            }
            std::size_t q = 0;
            const std::size_t start = k;
            while (k < label.size() &&
                   std::isdigit(static_cast<unsigned char>(label[k]))) {
                q = q * 10 + static_cast<std::size_t>(label[k] - '0');
                ++k;
            }
            detail::require(k > start && q >= 1 && q <= n,
                            "bad qubit index in Pauli label: " +
                                std::string(label));
            detail::require(p.factor(q - 1) == PauliFactor::I,
                            "repeated qubit in Pauli label: " +
                                std::string(label));
            p.set(q - 1, f);
        }
        return p;
    }

    [[nodiscard]] std::size_t n() const { return n_; }
    [[nodiscard]] std::uint64_t x_mask() const { return x_mask_; }
    [[nodiscard]] std::uint64_t z_mask() const { return z_mask_; }
    [[nodiscard]] std::uint64_t y_mask() const { return x_mask_ & z_mask_; }
    [[nodiscard]] std::uint64_t support() const { return x_mask_ | z_mask_; }
    [[nodiscard]] std::size_t weight() const {
        return static_cast<std::size_t>(std::popcount(support()));
    }
    [[nodiscard]] std::size_t y_count() const {
        return static_cast<std::size_t>(std::popcount(y_mask()));
    }
    [[nodiscard]] bool odd_y() const { return (y_count() & 1U) != 0; }
    [[nodiscard]] bool is_identity() const { return support() == 0; }

    [[nodiscard]] PauliFactor factor(std::size_t q) const {
        const bool x = (x_mask_ >> q) & 1U;
        const bool z = (z_mask_ >> q) & 1U;
        if (x && z) {
            return PauliFactor::Y;
        }
        if (x) {
            return PauliFactor::X;
        }
        return z ? PauliFactor::Z : PauliFactor::I;
    }

    void set(std::size_t q, PauliFactor f) {
        detail::require(q < n_, "qubit index out of range");
        const std::uint64_t bit = std::uint64_t{1} << q;
        x_mask_ &= ~bit;
        z_mask_ &= ~bit;
        if (f == PauliFactor::X || f == PauliFactor::Y) {
            x_mask_ |= bit;
        }
        if (f == PauliFactor::Z || f == PauliFactor::Y) {
            z_mask_ |= bit;
        }
    }

    /// Qubits touched, ascending.
    [[nodiscard]] std::vector<std::size_t> qubits() const {
        std::vector<std::size_t> qs;
        for (std::uint64_t s = support(); s != 0; s &= s - 1) {
            qs.push_back(static_cast<std::size_t>(std::countr_zero(s)));
        }
        return qs;
    }

    [[nodiscard]] std::string label() const {
        if (is_identity()) {
            return "I";
        }
        std::string out;
        for (auto q : qubits()) {
            out += "IXYZ"[static_cast<int>(factor(q))];
            out += std::to_string(q + 1);
        }
        return out;
    }

    friend bool operator==(const PauliString &, const PauliString &) = default;

  private:
    std::size_t n_{0};
    std::uint64_t x_mask_{0};
    std::uint64_t z_mask_{0};
};

namespace detail {

/// i^k for k mod 4.
inline Complex i_power(std::size_t k) {
    switch (k & 3U) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

inline double parity_sign(std::uint64_t x, std::uint64_t z) {
    return (std::popcount(x & z) & 1) ? -1.0 : 1.0;
}

/// Index with a zero bit inserted at position p.
inline std::size_t insert_zero_bit(std::size_t k, unsigned p) {
    const std::size_t low = k & ((std::size_t{1} << p) - 1);
    return ((k >> p) << (p + 1)) | low;
}

inline void check_size(const PauliString &p, std::size_t dim) {
    detail::require(p.n() < 64 && (std::size_t{1} << p.n()) == dim,
                    "Pauli string and state have different qubit counts");
}

} // namespace detail

/// out = P in; the two buffers must not alias.
inline void apply_pauli_into(const PauliString &p, std::span<const Complex> in,
                             std::span<Complex> out) {
    detail::check_size(p, in.size());
    detail::require(out.size() == in.size(), "output buffer size mismatch");
    const Complex base = detail::i_power(p.y_count());
    const std::uint64_t xm = p.x_mask();
    const std::uint64_t zm = p.z_mask();
    for (std::size_t x = 0; x < in.size(); ++x) {
        out[x ^ xm] = base * detail::parity_sign(x, zm) * in[x];
    }
}

inline StateVector apply_pauli(const PauliString &p, const StateVector &psi) {
    StateVector out = psi;
    apply_pauli_into(p, psi.amplitudes(), out.mutable_amplitudes());
    return out;
}

/**
 * @brief In-place e^{-i theta/2 P} = cos(theta/2) I - i sin(theta/2) P.
 *
 * One pass over index pairs (x, x ^ x_mask).
 */
inline void rotate_in_place(const PauliString &p, double theta,
                            std::span<Complex> a) {
    detail::check_size(p, a.size());
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const std::uint64_t xm = p.x_mask();
    const std::uint64_t zm = p.z_mask();
    if (xm == 0) {
        const Complex plus{c, -s};
        const Complex minus{c, s};
        for (std::size_t x = 0; x < a.size(); ++x) {
            a[x] *= (std::popcount(x & zm) & 1) ? minus : plus;
        }
        return;
    }
    // -i sin(theta/2) i^y, applied with the parity sign of the source index.
    const Complex k = Complex{0.0, -s} * detail::i_power(p.y_count());
    const auto pivot = static_cast<unsigned>(std::bit_width(xm) - 1);
    const std::size_t half = a.size() / 2;
    for (std::size_t j = 0; j < half; ++j) {
        const std::size_t x = detail::insert_zero_bit(j, pivot);
        const std::size_t y = x ^ xm;
        const Complex ax = a[x];
        const Complex ay = a[y];
        a[x] = c * ax + k * (detail::parity_sign(y, zm) * ay);
        a[y] = c * ay + k * (detail::parity_sign(x, zm) * ax);
    }
}

inline StateVector apply_pauli_rotation(const PauliString &p, double theta,
                                        const StateVector &psi) {
    StateVector out = psi;
    rotate_in_place(p, theta, out.mutable_amplitudes());
    return out;
}

/// <a|P|b> without materializing P|b>.
inline Complex pauli_matrix_element(const PauliString &p,
                                    std::span<const Complex> a,
                                    std::span<const Complex> b) {
    detail::check_size(p, a.size());
    detail::require(a.size() == b.size(), "state size mismatch");
    const std::uint64_t xm = p.x_mask();
    const std::uint64_t zm = p.z_mask();
    Complex acc{0.0, 0.0};
    for (std::size_t x = 0; x < a.size(); ++x) {
        const std::size_t y = x ^ xm;
        acc += std::conj(a[x]) * (detail::parity_sign(y, zm) * b[y]);
    }
    return detail::i_power(p.y_count()) * acc;
}

} // namespace awqv
