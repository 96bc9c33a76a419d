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

#include <optional>
#include <string>
#include <vector>

#include "ifm/wavepacket.hpp"

namespace ifm {

/// Symmetric-coupling sweep grid: every cell uses r1 = r2 = r.
struct SweepGrid {
    std::vector<double> r_values;
    std::vector<double> rho_values;
    double a = 500.0;

    /// Throws DomainError unless r in (0,1), rho in (0,1], both strictly increasing and non-empty.
    void validate() const;

    /// `steps` evenly spaced values from lo to hi inclusive (steps == 1 gives {lo}).
    static std::vector<double> linspace(double lo, double hi, std::size_t steps);
};

struct SweepRow {
    double r1;
    double r2;
    double rho;
    double a;
    double eta;
    double tau;
    double phi;
    double quad_err;
    /// Set when the cell's quadrature failed; the numeric fields are NaN then.
    std::optional<std::string> error;
};

/// Row-major over (r, rho): r outer, rho inner. Cells are evaluated
/// concurrently but stored by index, so the table is identical across runs.
std::vector<SweepRow> sweep_efficiencies(const SweepGrid &grid, const WavePacketSpec &spec);

enum class ObjectiveKind { max_min_eta_tau, max_tau_st_eta_floor };

struct Objective {
    ObjectiveKind kind = ObjectiveKind::max_min_eta_tau;
    /// Lower bound on eta for max_tau_st_eta_floor, in (0, 1).
    double eta_floor = 0.0;

    static Objective max_min() { return {}; }
    static Objective max_tau_with_eta_floor(double floor) { return {ObjectiveKind::max_tau_st_eta_floor, floor}; }

    std::string name() const;
};

struct SearchBox {
    double lo = 0.5;
    double hi = 0.9999;
    double coarse_step = 0.005;
    double refine_tol = 1e-5;
};

struct Optimum {
    double r1_star;
    double r2_star;
    double objective_value;
    std::string objective_name;
    /// Best value of the coarse grid the refinement started from.
    double coarse_value;
};

/// Objective at one coupling pair; -infinity when infeasible or when the
/// quadrature fails.
double evaluate_objective(double r1, double r2, double rho, double a, const Objective &objective,
                          const WavePacketSpec &spec);

/// Coarse grid over the box followed by golden-section line searches along
/// each coordinate (and the diagonal) until no move exceeds refine_tol.
/// Ties go to the lexicographically smallest (r1, r2). Throws
/// InfeasibleError when no grid point satisfies the eta floor.
Optimum optimize_coupling(double rho, double a, const Objective &objective, const WavePacketSpec &spec = {},
                          const SearchBox &box = {});

/// Exhaustive grid over [center - half_width, center + half_width]^2, clipped
/// to the box, at the given step. Used as an oracle for optimize_coupling.
Optimum brute_force_optimum(double rho, double a, const Objective &objective, const WavePacketSpec &spec,
                            double center_r1, double center_r2, double half_width, double step,
                            const SearchBox &box = {});

}  // namespace ifm
