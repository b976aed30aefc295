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
 * Per-iteration record shared by all optimizer runs.
 */
#pragma once

#include "ansatz.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace awqv {

inline constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

/// Fields that do not apply to a method stay NaN.
struct IterationRecord {
    std::size_t step{0};
    double energy{kNotApplicable};
    double p_gs{kNotApplicable};
    double w{kNotApplicable};
    double delta{kNotApplicable};
    double theta_norm{0.0};
    double residual{kNotApplicable};
    double grad_norm{kNotApplicable};
    double phi_norm{kNotApplicable};
    double seconds{0.0};
};

class RunTrace {
  public:
    RunTrace() = default;
    explicit RunTrace(std::string method, bool keep_thetas = false)
        : method_{std::move(method)}, keep_thetas_{keep_thetas} {}

    /// Appends a record; delta is filled from the previous energy.
    void record(IterationRecord rec, const ParamVector &theta) {
        if (!records_.empty() && std::isnan(rec.delta)) {
            rec.delta = records_.back().energy - rec.energy;
        }
        rec.theta_norm = theta.norm();
        if (records_.empty() || rec.energy < best_energy_) {
            best_energy_ = rec.energy;
            best_step_ = records_.size();
            best_theta_ = theta;
        }
        final_theta_ = theta;
        if (keep_thetas_) {
            thetas_.push_back(theta);
        }
        records_.push_back(rec);
    }

    [[nodiscard]] const std::string &method() const { return method_; }
    [[nodiscard]] const std::vector<IterationRecord> &records() const {
        return records_;
    }
    /// Parameter snapshots, one per record, when requested at construction.
    [[nodiscard]] const std::vector<ParamVector> &thetas() const {
        return thetas_;
    }
    [[nodiscard]] std::size_t best_step() const { return best_step_; }
    [[nodiscard]] double best_energy() const { return best_energy_; }
    [[nodiscard]] const ParamVector &best_theta() const { return best_theta_; }
    [[nodiscard]] const ParamVector &final_theta() const { return final_theta_; }

    [[nodiscard]] std::optional<std::size_t> switch_step() const {
        return switch_step_;
    }
    void set_switch_step(std::size_t s) { switch_step_ = s; }

  private:
    std::string method_;
    bool keep_thetas_{false};
    std::vector<IterationRecord> records_;
    std::vector<ParamVector> thetas_;
    std::size_t best_step_{0};
    double best_energy_{std::numeric_limits<double>::infinity()};
    ParamVector best_theta_;
    ParamVector final_theta_;
    std::optional<std::size_t> switch_step_;
};

} // namespace awqv
