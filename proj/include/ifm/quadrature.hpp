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

#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace ifm {

/// Fills out[i] = f(x[i]) for a batch of abscissae.
using BatchIntegrand = std::function<void(std::span<const double> x, std::span<double> out)>;

struct QuadratureOptions {
    double rel_tolerance = 1e-8;
    /// Nodes of the initial uniform pass over the whole interval.
    std::size_t initial_nodes = 2001;
    /// Integrand evaluations allowed before giving up.
    std::size_t max_evaluations = std::size_t{1} << 25;
    /// Magnitude the rounding floor of abs_error is measured against.
    /// Zero means |value|; integrands that cancel internally pass their gross scale.
    double rounding_scale = 0.0;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
    std::size_t panels = 0;
    bool converged = true;

    double rel_error() const noexcept;
};

/// Adaptive composite Simpson on [lo, hi].
///
/// The interval is cut into panels of 64 Simpson intervals each. A panel
/// compares its rule at step h against step 2h; panels whose local estimate
/// exceeds their share of the tolerance are bisected. Panels are processed
/// depth-first left to right and summed in that order, so the result is
/// reproducible bit for bit.
QuadratureResult integrate_simpson(const BatchIntegrand &f, double lo, double hi, const QuadratureOptions &options);

}  // namespace ifm
