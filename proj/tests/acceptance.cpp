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
// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset, e.g. `awqv_acceptance 1 2 4`.

#include <awqv/awqv_all.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

using namespace awqv;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass{false};
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// Shared by criteria 5 and 7.
struct AwqvBatch {
    std::vector<double> p_gs;
    std::vector<AwqvResult> runs;
};

const AwqvBatch &reg12_batch() {
    static const AwqvBatch batch = [] {
        AwqvBatch b;
        for (std::size_t k = 0; k < 20; ++k) {
            const PreparedProblem prob(
                generate_regular(12, 3, derive_seed(2026, "acceptance-reg3-n12", k, "graph")));
            const auto spec = build_ansatz(12, AnsatzVariant::P2A_ZY);
            const auto psi0 = plus_state(12);
            AwqvOptions o; // eta 0.05, 50 iterations, mu 0.9, lambda 1
            o.seed = derive_seed(2026, "acceptance-reg3-n12", k, "awqv-p2a-zy");
            auto res = awqv_run(prob, spec, psi0, o);
            b.p_gs.push_back(ground_state_probability(
                apply_ansatz(spec, res.trace.best_theta(), psi0), prob.spectrum));
            b.runs.push_back(std::move(res));
        }
        return b;
    }();
    return batch;
}

Outcome criterion1() {
    const auto t0 = Clock::now();
    double worst_plus = 0.0;
    double worst_zero_plus = 0.0;
    double moved = 0.0;
    for (std::uint64_t k = 0; k < 10; ++k) {
        const PreparedProblem prob(generate_regular(8, 3, derive_seed(1, "c1", k, "graph")));
        const auto spec = build_ansatz(8, AnsatzVariant::P1A);
        for (bool plus : {true, false}) {
            const auto psi0 = plus ? plus_state(8) : zero_plus_state(8);
            SolverOptions so;
            so.keep_thetas = true;
            const auto c = cqite_run(prob, spec, psi0, 0.05, 50, so);
            VqeOptions vo;
            vo.optimizer = OptimizerKind::GD;
            vo.eta = 0.1;
            vo.iters = 50;
            vo.init = VqeInit::Zero;
            vo.solver = so;
            const auto v = vqe_run(prob, spec, psi0, vo);
            double worst = c.thetas().size() == v.thetas().size() ? 0.0 : 1e300;
            for (std::size_t s = 0; s < std::min(c.thetas().size(), v.thetas().size()); ++s) {
                worst = std::max(worst, (c.thetas()[s] - v.thetas()[s]).cwiseAbs().maxCoeff());
            }
            (plus ? worst_plus : worst_zero_plus) =
                std::max(plus ? worst_plus : worst_zero_plus, worst);
            if (!plus) {
                moved = std::max(moved, c.final_theta().cwiseAbs().maxCoeff());
            }
        }
    }
    const double secs = since(t0);
    const bool pass = worst_plus <= 1e-8 && worst_zero_plus <= 1e-8 && secs < 10.0;
    return {pass, "max|dtheta| from |+>^8 " + fmt(worst_plus) + ", from |0>|+>^7 " +
                      fmt(worst_zero_plus) + " (max |theta| " + fmt(moved) + "), " +
                      fmt(secs) + " s"};
}

Outcome criterion2() {
    const auto t0 = Clock::now();
    const auto spec = build_ansatz(6, AnsatzVariant::P2A_ZY);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    double adj_ps = 0.0;
    double adj_fd = 0.0;
    double ps_fd = 0.0;
    for (std::uint64_t c = 0; c < 20; ++c) {
        const auto g = c % 2 ? generate_er_weighted(6, 0.6, derive_seed(2, "c2", c, "graph"))
                             : generate_regular(6, 3, derive_seed(2, "c2", c, "graph"));
        const auto h = hamiltonian_diagonal(g);
        const auto psi0 = plus_state(6);
        ParamVector theta(static_cast<Eigen::Index>(spec.num_params()));
        for (Eigen::Index j = 0; j < theta.size(); ++j) {
            theta[j] = angle(rng);
        }
        const auto adj = energy_gradient(spec, theta, psi0, h, GradientMethod::Adjoint);
        const auto ps = energy_gradient(spec, theta, psi0, h, GradientMethod::ParameterShift);
        const double eps = 1e-5;
        ParamVector fd(theta.size());
        ParamVector t = theta;
        for (Eigen::Index j = 0; j < theta.size(); ++j) {
            t[j] = theta[j] + eps;
            const double up = ansatz_energy(spec, t, psi0, h);
            t[j] = theta[j] - eps;
            const double down = ansatz_energy(spec, t, psi0, h);
            t[j] = theta[j];
            fd[j] = (up - down) / (2.0 * eps);
        }
        adj_ps = std::max(adj_ps, (adj - ps).cwiseAbs().maxCoeff());
        adj_fd = std::max(adj_fd, (adj - fd).cwiseAbs().maxCoeff());
        ps_fd = std::max(ps_fd, (ps - fd).cwiseAbs().maxCoeff());
    }
    const double secs = since(t0);
    const bool pass = adj_ps <= 1e-8 && adj_fd <= 1e-6 && ps_fd <= 1e-6 && secs < 30.0;
    return {pass, "adjoint-shift " + fmt(adj_ps) + ", adjoint-fd " + fmt(adj_fd) +
                      ", shift-fd " + fmt(ps_fd) + ", " + fmt(secs) + " s"};
}

Outcome criterion3() {
    std::size_t agree = 0;
    std::size_t total = 0;
    std::mt19937_64 pick(3);
    for (std::uint64_t c = 0; c < 10; ++c) {
        const std::size_t n = 4 + pick() % 7; // 4..10
        const auto gseed = derive_seed(3, "c3", c, "graph");
        const auto g = (c % 2 || n % 2) ? generate_er_weighted(n, 0.5, gseed)
                                        : generate_regular(n, 3, gseed);
        const auto s = brute_force_spectrum(g);
        // Random complex state.
        std::mt19937_64 rs(derive_seed(3, "c3", c, "state"));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<Complex> amps(std::size_t{1} << n);
        double norm = 0.0;
        for (auto &a : amps) {
            a = {gauss(rs), gauss(rs)};
            norm += std::norm(a);
        }
        for (auto &a : amps) {
            a /= std::sqrt(norm);
        }
        const StateVector psi(n, amps);
        const auto probs = psi.probabilities();
        std::discrete_distribution<std::uint64_t> draw(probs.begin(), probs.end());
        std::mt19937_64 rng(derive_seed(3, "c3", c, "trials"));
        for (std::size_t M : {1, 2, 3, 5, 10}) {
            const std::size_t trials = 100000;
            double sum = 0.0;
            double sum2 = 0.0;
            for (std::size_t t = 0; t < trials; ++t) {
                double best = std::numeric_limits<double>::infinity();
                for (std::size_t m = 0; m < M; ++m) {
                    best = std::min(best, g.cost_of_index(draw(rng)));
                }
                const double a =
                    s.K() < 2 ? 1.0 : (best - s.worst()) / (s.best() - s.worst());
                sum += a;
                sum2 += a * a;
            }
            const double mean = sum / trials;
            const double se = std::sqrt(std::max(0.0, sum2 / trials - mean * mean) / trials);
            ++total;
            agree += std::abs(mean - expected_best_alpha(psi, s, M)) <= 3.0 * se ? 1 : 0;
        }
    }
    const double frac = static_cast<double>(agree) / static_cast<double>(total);
    return {frac >= 0.95, std::to_string(agree) + "/" + std::to_string(total) +
                              " cases within 3 standard errors"};
}

Outcome criterion4() {
    double worst_rise = 0.0;
    double worst_drop = 0.0;
    for (std::uint64_t c = 0; c < 20; ++c) {
        const std::size_t n = 6 + c % 7; // 6..12
        const auto gseed = derive_seed(4, "c4", c, "graph");
        const auto g = (c % 2 || n % 2) ? generate_er_weighted(n, 0.5, gseed)
                                        : generate_regular(n, 3, gseed);
        const PreparedProblem prob(g);
        auto psi = plus_state(n);
        double e = expectation_diagonal(prob.h, psi);
        double p = ground_state_probability(psi, prob.spectrum);
        for (int k = 0; k < 100; ++k) {
            psi = exact_ite_step(psi, prob.h, 0.05);
            const double e2 = expectation_diagonal(prob.h, psi);
            const double p2 = ground_state_probability(psi, prob.spectrum);
            worst_rise = std::max(worst_rise, e2 - e);
            worst_drop = std::max(worst_drop, p - p2);
            e = e2;
            p = p2;
        }
    }
    return {worst_rise <= 1e-12 && worst_drop <= 1e-12,
            "largest energy rise " + fmt(worst_rise) + ", largest p_gs drop " +
                fmt(worst_drop)};
}

Outcome criterion5() {
    const auto t0 = Clock::now();
    const auto &b = reg12_batch();
    double mean = 0.0;
    double mn = 1.0;
    for (double p : b.p_gs) {
        mean += p;
        mn = std::min(mn, p);
    }
    mean /= static_cast<double>(b.p_gs.size());
    const double secs = since(t0);
    return {mean >= 0.75 && mn >= 0.2 && secs < 1800.0,
            "mean p_gs " + fmt(mean) + ", min p_gs " + fmt(mn) + " over " +
                std::to_string(b.p_gs.size()) + " instances, " + fmt(secs) + " s"};
}

Outcome criterion6() {
    const auto t0 = Clock::now();
    const auto spec = build_ansatz(16, AnsatzVariant::P2A);
    for (std::size_t k = 0; k < 20; ++k) {
        const PreparedProblem prob(
            generate_regular(16, 3, derive_seed(2026, "acceptance-reg3-n16", k, "graph")));
        const auto tr = cqite_run(prob, spec, plus_state(16), 0.05, 50);
        const auto &recs = tr.records();
        const double last = recs.back().energy;
        if (tr.best_step() + 1 < recs.size() && last > tr.best_energy()) {
            return {true, "instance " + std::to_string(k) + ": minimum " +
                              fmt(tr.best_energy()) + " at step " +
                              std::to_string(tr.best_step()) + ", final " + fmt(last) +
                              " (" + fmt(since(t0)) + " s)"};
        }
    }
    return {false, "no instance rose after its minimum in 20 runs"};
}

Outcome criterion7() {
    const auto &b = reg12_batch();
    std::size_t checked = 0;
    std::size_t violations = 0;
    for (const auto &res : b.runs) {
        const auto &w = res.weights;
        violations += w.empty() || w[0] != 0.0 ? 1 : 0;
        for (std::size_t s = 1; s < w.size(); ++s) {
            const auto &u = res.updates[s];
            violations += w[s] < w[s - 1] || w[s] < 0.0 || w[s] > 1.0 ? 1 : 0;
            const bool binds = u.raw < w[s - 1] || u.raw > 1.0;
            if (binds || std::abs(u.raw - w[s - 1]) < 1e-12) {
                continue;
            }
            // lambda = 1 for these runs.
            const bool predicted = u.ratio < (1.0 - w[s - 1]) / 1.0;
            violations += predicted != (w[s] > w[s - 1]) ? 1 : 0;
            ++checked;
        }
    }
    return {violations == 0, std::to_string(b.runs.size()) + " traces, " +
                                 std::to_string(checked) +
                                 " unclamped steps checked, " + std::to_string(violations) +
                                 " violations"};
}

Outcome criterion8() {
    // Failure predicate fixtures.
    const bool fixtures = !failure_predicate_awqv(0.05, 20) && failure_predicate_awqv(0.05, 19) &&
                          failure_predicate_awqv(0.0, 50) && !failure_predicate_awqv(0.5, 2) &&
                          failure_predicate_awqv(0.25, 3);
    std::size_t dominance_ok = 0;
    std::size_t gw_fail = 0;
    std::size_t awqv_fail = 0;
    const std::size_t count = 20;
    for (std::size_t k = 0; k < count; ++k) {
        const auto g =
            generate_er_weighted(12, 0.5, derive_seed(2026, "acceptance-er-n12", k, "graph"));
        const PreparedProblem prob(g);
        GwOptions go;
        go.seed = derive_seed(2026, "acceptance-er-n12", k, "gw");
        const auto emb = gw_solve(g, go);
        const auto r = hyperplane_round(emb, g, 50, go.seed);
        dominance_ok += emb.objective >= -r.best_cost - 1e-9 ? 1 : 0;
        gw_fail += failure_predicate_gw(r.best_cost, prob.spectrum) ? 1 : 0;

        const auto spec = build_ansatz(12, AnsatzVariant::P2A_ZY);
        AwqvOptions o;
        o.mu = 0.8;
        const auto res = awqv_run(prob, spec, plus_state(12), o);
        const double p = ground_state_probability(
            apply_ansatz(spec, res.trace.best_theta(), plus_state(12)), prob.spectrum);
        awqv_fail += failure_predicate_awqv(p, 50) ? 1 : 0;
    }
    return {fixtures && dominance_ok == count,
            "predicate fixtures " + std::string(fixtures ? "ok" : "wrong") +
                ", relaxation >= best cut on " + std::to_string(dominance_ok) + "/" +
                std::to_string(count) + "; failures at M=50: GW " + std::to_string(gw_fail) +
                ", AWQV " + std::to_string(awqv_fail)};
}

Outcome criterion9() {
    const PreparedProblem prob(
        generate_regular(16, 3, derive_seed(2026, "acceptance-perf", 0, "graph")));
    const auto spec = build_ansatz(16, AnsatzVariant::P2A_ZY);
    AwqvOptions o;
    o.iters = 1;
    const auto t1 = Clock::now();
    const auto one = awqv_run(prob, spec, plus_state(16), o);
    const double single = since(t1);
    o.iters = 50;
    const auto t2 = Clock::now();
    const auto full = awqv_run(prob, spec, plus_state(16), o);
    const double total = since(t2);
    double slowest = 0.0;
    for (std::size_t s = 1; s < full.trace.records().size(); ++s) {
        slowest = std::max(slowest, full.trace.records()[s].seconds);
    }
    return {single < 2.0 && total < 90.0,
            "one iteration " + fmt(single) + " s (slowest in full run " + fmt(slowest) +
                " s), 50 iterations " + fmt(total) + " s"};
}

} // namespace

int main(int argc, char **argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"gradient descent equivalence of cQITE with Y rotations", criterion1},
        {"adjoint, parameter-shift and finite-difference gradients", criterion2},
        {"best-of-M ratio closed form vs Monte-Carlo", criterion3},
        {"exact imaginary-time monotonicity", criterion4},
        {"AWQV(P2A-ZY) p_gs on 12-vertex 3-regular graphs", criterion5},
        {"cQITE(P2A) energy rises after its minimum", criterion6},
        {"weight schedule properties on AWQV traces", criterion7},
        {"GW protocol and failure predicates", criterion8},
        {"AWQV iteration time at 16 qubits", criterion9},
    };
    std::set<std::size_t> selected;
    for (int a = 1; a < argc; ++a) {
        selected.insert(std::stoul(argv[a]));
    }
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        if (!selected.empty() && !selected.contains(k + 1)) {
            continue;
        }
        Outcome out;
        try {
            out = criteria[k].second();
        } catch (const std::exception &ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        failed += out.pass ? 0 : 1;
        std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << (k + 1) << ": "
                  << criteria[k].first << " -- " << out.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
