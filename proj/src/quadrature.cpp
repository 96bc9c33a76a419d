// Copyright 2026 The ifm-resonator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ifm/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "ifm/error.hpp"

namespace ifm {

namespace {

constexpr std::size_t kPanelIntervals = 64;
constexpr std::size_t kPanelNodes = kPanelIntervals + 1;
constexpr double kRoundingFloor = 1e-13;

struct Panel {
    double lo;
    double hi;
};

struct PanelEstimate {
    double value;
    double error;
};

// Neumaier compensated running sum.
class CompensatedSum {
   public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

   private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class PanelRule {
   public:
    explicit PanelRule(const BatchIntegrand &f) : f_(f) {}

    PanelEstimate evaluate(const Panel &p) {
        const double h = (p.hi - p.lo) / static_cast<double>(kPanelIntervals);
        for (std::size_t i = 0; i < kPanelNodes; ++i) {
            x_[i] = p.lo + static_cast<double>(i) * h;
        }
        x_[kPanelIntervals] = p.hi;
        f_(x_, y_);

        CompensatedSum fine;
        CompensatedSum coarse;
        fine.add(y_[0] + y_[kPanelIntervals]);
        coarse.add(y_[0] + y_[kPanelIntervals]);
        for (std::size_t i = 1; i < kPanelIntervals; ++i) {
            fine.add((i % 2 == 1 ? 4.0 : 2.0) * y_[i]);
            if (i % 2 == 0) {
                coarse.add((i % 4 == 2 ? 4.0 : 2.0) * y_[i]);
            }
        }
        const double s_fine = fine.value() * h / 3.0;
        const double s_coarse = coarse.value() * 2.0 * h / 3.0;
        const double diff = (s_fine - s_coarse) / 15.0;
        // Richardson step; the reported error stays the (larger) Simpson estimate.
        return PanelEstimate{s_fine + diff, std::abs(diff)};
    }

   private:
    const BatchIntegrand &f_;
    std::array<double, kPanelNodes> x_{};
    std::array<double, kPanelNodes> y_{};
};

}  // namespace

double QuadratureResult::rel_error() const noexcept {
    if (value == 0.0) {
        return abs_error == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return abs_error / std::abs(value);
}

QuadratureResult integrate_simpson(const BatchIntegrand &f, double lo, double hi, const QuadratureOptions &options) {
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("integration interval must be finite and non-empty");
    }
    if (!(options.rel_tolerance > 0.0)) {
        throw DomainError("quadrature tolerance must be positive");
    }

    PanelRule rule(f);
    const double width = hi - lo;
    const std::size_t intervals = std::max<std::size_t>(options.initial_nodes, 2) - 1;
    const std::size_t n_panels = (intervals + kPanelIntervals - 1) / kPanelIntervals;

    // First pass: uniform panels, kept for the tolerance budget.
    std::vector<Panel> initial(n_panels);
    std::vector<PanelEstimate> initial_est(n_panels);
    CompensatedSum rough;
    for (std::size_t i = 0; i < n_panels; ++i) {
        const double a = lo + width * static_cast<double>(i) / static_cast<double>(n_panels);
        const double b = (i + 1 == n_panels) ? hi : lo + width * static_cast<double>(i + 1) / static_cast<double>(n_panels);
        initial[i] = Panel{a, b};
        initial_est[i] = rule.evaluate(initial[i]);
        rough.add(initial_est[i].value);
    }

    QuadratureResult result;
    result.evaluations = n_panels * kPanelNodes;
    if (result.evaluations > options.max_evaluations) {
        result.converged = false;
    }
    const double rough_scale = options.rounding_scale > 0.0 ? options.rounding_scale : std::abs(rough.value());
    const double budget = std::max({options.rel_tolerance * std::abs(rough.value()), kRoundingFloor * rough_scale,
                                    std::numeric_limits<double>::min()});
    const double min_width = width * 1e-13;

    CompensatedSum total;
    CompensatedSum total_error;
    struct Pending {
        Panel panel;
        PanelEstimate est;
    };
    std::vector<Pending> stack;
    for (std::size_t i = 0; i < n_panels; ++i) {
        stack.push_back(Pending{initial[n_panels - 1 - i], initial_est[n_panels - 1 - i]});
    }

    while (!stack.empty()) {
        const Pending cur = stack.back();
        stack.pop_back();
        const double share = budget * (cur.panel.hi - cur.panel.lo) / width;
        const bool small_enough = cur.est.error <= share;
        const bool out_of_budget = result.evaluations + 2 * kPanelNodes > options.max_evaluations;
        const bool too_narrow = (cur.panel.hi - cur.panel.lo) < min_width;
        if (small_enough || out_of_budget || too_narrow) {
            if (!small_enough) {
                result.converged = false;
            }
            total.add(cur.est.value);
            total_error.add(cur.est.error);
            ++result.panels;
            continue;
        }
        const double mid = 0.5 * (cur.panel.lo + cur.panel.hi);
        const Panel left{cur.panel.lo, mid};
        const Panel right{mid, cur.panel.hi};
        const PanelEstimate left_est = rule.evaluate(left);
        const PanelEstimate right_est = rule.evaluate(right);
        result.evaluations += 2 * kPanelNodes;
        stack.push_back(Pending{right, right_est});
        stack.push_back(Pending{left, left_est});
    }

    result.value = total.value();
    const double scale = options.rounding_scale > 0.0 ? options.rounding_scale : std::abs(result.value);
    result.abs_error = total_error.value() + kRoundingFloor * scale;
    return result;
}

}  // namespace ifm
