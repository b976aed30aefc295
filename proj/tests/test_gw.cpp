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
using awqv::testing::triangle;

TEST_CASE("relaxation on small graphs", "[gw]") {
    const MaxCutInstance edge(2, {{0, 1, 1.0}});
    const auto e = gw_solve(edge);
    CHECK(e.objective == Catch::Approx(1.0).margin(1e-10));
    CHECK((e.vectors.col(0) + e.vectors.col(1)).norm() < 1e-8);

    const auto t = gw_solve(triangle());
    CHECK(t.objective == Catch::Approx(2.25).margin(1e-8));
    CHECK(t.vectors.col(0).dot(t.vectors.col(1)) == Catch::Approx(-0.5).margin(1e-6));

    // A 6-cycle is bipartite: the relaxation reaches at least the cut of 6.
    MaxCutInstance cycle(6, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0},
                             {4, 5, 1.0}, {0, 5, 1.0}});
    CHECK(gw_solve(cycle).objective >= 6.0 - 1e-9);

    for (Eigen::Index i = 0; i < t.vectors.cols(); ++i) {
        CHECK(t.vectors.col(i).norm() == Catch::Approx(1.0).margin(1e-8));
    }
    CHECK(default_gw_rank(16) == 6);
    CHECK(default_gw_rank(1) == 2);
    GwOptions bad;
    bad.rank = 1;
    CHECK_THROWS_AS(gw_solve(edge, bad), InputError);
}

TEST_CASE("relaxation bounds every rounded cut", "[gw]") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto g = seed % 2 ? generate_er_weighted(10, 0.5, seed) : generate_regular(10, 3, seed);
        GwOptions o;
        o.seed = seed;
        const auto emb = gw_solve(g, o);
        CHECK(emb.objective == Catch::Approx(relaxation_objective(g, emb.vectors)));
        const auto r = hyperplane_round(emb, g, 50, seed + 7);
        CHECK(emb.objective >= -r.best_cost - 1e-9);
        const auto s = brute_force_spectrum(g);
        CHECK(emb.objective >= -s.best() - 1e-9);
        CHECK(g.cost_of_index(r.best.bits) == r.best_cost);
        CHECK(maxcut_cost(g, r.best.complement()) == Catch::Approx(r.best_cost));
    }
}

TEST_CASE("hyperplane rounding", "[gw]") {
    const MaxCutInstance edge(2, {{0, 1, 1.5}});
    const auto emb = gw_solve(edge);
    const auto r = hyperplane_round(emb, edge, 20, 1);
    for (double c : r.prefix_best) {
        CHECK(c == -1.5);
    }

    const auto g = generate_regular(12, 3, 3);
    const auto e = gw_solve(g);
    const auto many = hyperplane_round(e, g, 40, 5);
    const auto one = hyperplane_round(e, g, 1, 5);
    CHECK(one.best_cost == many.prefix_best[0]);
    for (std::size_t m = 1; m < many.prefix_best.size(); ++m) {
        CHECK(many.prefix_best[m] <= many.prefix_best[m - 1]);
    }
    CHECK(many.best_cost == many.prefix_best.back());
    const auto again = hyperplane_round(e, g, 40, 5);
    CHECK(again.best == many.best);
    CHECK_THROWS_AS(hyperplane_round(e, g, 0, 5), InputError);
}

TEST_CASE("rounded cuts meet the 0.878 ratio on regular graphs", "[gw]") {
    std::size_t good = 0;
    const std::size_t count = 12;
    for (std::uint64_t seed = 0; seed < count; ++seed) {
        const auto g = generate_regular(14, 3, 300 + seed);
        GwOptions o;
        o.seed = seed;
        const auto r = hyperplane_round(gw_solve(g, o), g, 50, seed);
        const auto s = brute_force_spectrum(g);
        good += -r.best_cost >= 0.878 * -s.best() ? 1 : 0;
    }
    CHECK(good == count);
}
