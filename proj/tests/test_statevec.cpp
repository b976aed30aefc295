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
#include "test_util.hpp"

#include <catch_amalgamated.hpp>

using namespace awqv;
using awqv::testing::random_state;
using awqv::testing::triangle;

TEST_CASE("plus state", "[statevec]") {
    const auto p1 = plus_state(1);
    CHECK(p1[0].real() == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(p1[0].imag() == 0.0);
    CHECK(p1[1] == p1[0]);
    const auto p3 = plus_state(3);
    for (std::size_t x = 0; x < 8; ++x) {
        CHECK(p3[x].real() == Catch::Approx(1.0 / std::sqrt(8.0)));
    }
    CHECK(p3.norm_squared() == Catch::Approx(1.0).margin(1e-15));
    CHECK_THROWS_AS(plus_state(0), InputError);
    CHECK_THROWS_AS(plus_state(25), CapacityError);
}

TEST_CASE("zero-plus state", "[statevec]") {
    const auto z2 = zero_plus_state(2);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(z2[0].real() == Catch::Approx(r));
    CHECK(z2[1] == Complex{0.0, 0.0});
    CHECK(z2[2].real() == Catch::Approx(r));
    CHECK(z2[3] == Complex{0.0, 0.0});
    const auto z1 = zero_plus_state(1);
    CHECK(z1[0] == Complex{1.0, 0.0});
    CHECK(z1[1] == Complex{0.0, 0.0});
    for (std::size_t n = 1; n <= 6; ++n) {
        CHECK(std::abs(inner(plus_state(n), zero_plus_state(n))) ==
              Catch::Approx(r).margin(1e-14));
    }
}

TEST_CASE("diagonal expectation", "[statevec]") {
    const auto h = hamiltonian_diagonal(triangle());
    CHECK(expectation_diagonal(h, plus_state(3)) == Catch::Approx(-1.5));
    for (std::uint64_t x = 0; x < 8; ++x) {
        CHECK(expectation_diagonal(h, basis_state(3, x)) == h[x]);
    }
    CHECK(expectation_diagonal(std::vector<double>(8, 0.0), plus_state(3)) == 0.0);
    CHECK_THROWS_AS(expectation_diagonal(h, plus_state(2)), InputError);

    // Global phase does not change the expectation.
    auto psi = random_state(3, 5);
    const double e = expectation_diagonal(h, psi);
    const Complex phase = std::polar(1.0, 0.7);
    for (auto &a : psi.mutable_amplitudes()) {
        a *= phase;
    }
    CHECK(expectation_diagonal(h, psi) == Catch::Approx(e).margin(1e-14));
}

TEST_CASE("inner product conventions", "[statevec]") {
    const auto psi = random_state(4, 1);
    CHECK(std::abs(inner(psi, psi) - Complex{1.0, 0.0}) < 1e-14);
    CHECK(inner(basis_state(1, 0), basis_state(1, 1)) == Complex{0.0, 0.0});
    const StateVector ket_i(1, {Complex{0.0, 1.0}, Complex{0.0, 0.0}});
    CHECK(inner(basis_state(1, 0), ket_i) == Complex{0.0, 1.0});
    CHECK_THROWS_AS(inner(plus_state(2), plus_state(3)), InputError);
}

TEST_CASE("state construction checks", "[statevec]") {
    CHECK_THROWS_AS(StateVector(1, {Complex{1.0, 0.0}, Complex{1.0, 0.0}}), InputError);
    CHECK_THROWS_AS(StateVector(2, {Complex{1.0, 0.0}}), InputError);
    StateVector psi(2);
    for (auto &a : psi.mutable_amplitudes()) {
        a = 0.0;
    }
    CHECK_THROWS_AS(psi.normalize(), NumericError);
    CHECK(plus_state(4).is_real());
    CHECK_FALSE(random_state(2, 3).is_real());
}

TEST_CASE("sampling", "[statevec]") {
    const auto draws = sample(basis_state(4, 11), 50, 3);
    CHECK(draws.size() == 50);
    for (const auto &b : draws) {
        CHECK(b.bits == 11U);
        CHECK(b.n == 4);
    }

    const std::size_t m = 100000;
    std::size_t zeros = 0;
    for (const auto &b : sample(plus_state(1), m, 99)) {
        zeros += b.bits == 0 ? 1 : 0;
    }
    const double sigma = std::sqrt(m * 0.25);
    CHECK(std::abs(static_cast<double>(zeros) - 0.5 * m) < 3.0 * sigma);

    const auto psi = random_state(5, 8);
    const auto a = sample(psi, 200, 1234);
    const auto b = sample(psi, 200, 1234);
    CHECK(a == b);
    CHECK_THROWS_AS(sample(psi, 0, 1), InputError);

    // Zero-probability outcomes are never drawn.
    const auto z = zero_plus_state(3);
    for (const auto &x : sample(z, 2000, 5)) {
        CHECK((x.bits & 1U) == 0U);
    }
}

TEST_CASE("sample frequencies follow the distribution", "[statevec]") {
    const auto psi = random_state(3, 21);
    const auto probs = psi.probabilities();
    const std::size_t m = 200000;
    std::vector<double> counts(8, 0.0);
    for (const auto &x : sample(psi, m, 77)) {
        counts[x.bits] += 1.0;
    }
    for (std::size_t x = 0; x < 8; ++x) {
        const double sd = std::sqrt(m * probs[x] * (1 - probs[x]));
        CHECK(std::abs(counts[x] - m * probs[x]) < 4.0 * sd + 1.0);
    }
}
