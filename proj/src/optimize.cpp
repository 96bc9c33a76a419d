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

#include "ifm/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ifm/error.hpp"
#include "ifm/parallel.hpp"

namespace ifm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInvGolden = 0.6180339887498949;

void check_box(const SearchBox &box) {
    if (!(box.lo > 0.0 && box.lo < box.hi && box.hi < 1.0)) {
        throw DomainError("search box must satisfy 0 < lo < hi < 1");
    }
    if (!(box.coarse_step > 0.0) || !(box.refine_tol > 0.0)) {
        throw DomainError("search steps must be positive");
    }
}

void check_objective(const Objective &objective) {
    if (objective.kind == ObjectiveKind::max_tau_st_eta_floor &&
        !(objective.eta_floor > 0.0 && objective.eta_floor < 1.0)) {
        throw DomainError("eta floor must lie in (0, 1)");
    }
}

std::vector<double> axis(double lo, double hi, double step) {
    std::vector<double> values;
    for (std::size_t k = 0;; ++k) {
        const double v = lo + static_cast<double>(k) * step;
        if (v > hi + 1e-12) {
            break;
        }
        values.push_back(std::min(v, hi));
    }
    if (values.back() < hi - 1e-12) {
        values.push_back(hi);
    }
    return values;
}

struct Candidate {
    double r1;
    double r2;
    double f;

    // Strictly better, or equal and lexicographically smaller.
    bool beats(const Candidate &o) const {
        if (f != o.f) {
            return f > o.f;
        }
        return r1 < o.r1 || (r1 == o.r1 && r2 < o.r2);
    }
};

Candidate best_on_grid(const std::vector<double> &r1s, const std::vector<double> &r2s, double rho, double a,
                       const Objective &objective, const WavePacketSpec &spec) {
    const std::size_t n = r1s.size() * r2s.size();
    std::vector<double> values(n, kNegInf);
    parallel_chunks(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            values[i] = evaluate_objective(r1s[i / r2s.size()], r2s[i % r2s.size()], rho, a, objective, spec);
        }
    });
    Candidate best{r1s.front(), r2s.front(), values.front()};
    for (std::size_t i = 1; i < n; ++i) {
        const Candidate c{r1s[i / r2s.size()], r2s[i % r2s.size()], values[i]};
        if (c.beats(best)) {
            best = c;
        }
    }
    return best;
}

// Golden-section search for the maximum of f(t) on [lo, hi]; returns the best
// evaluated point, or `start` if nothing beats it.
template <typename F>
std::pair<double, double> line_max(F &&f, double lo, double hi, double tol, double start, double f_start) {
    double best_t = start;
    double best_f = f_start;
    auto consider = [&](double t, double v) {
        if (v > best_f || (v == best_f && t < best_t)) {
            best_t = t;
            best_f = v;
        }
    };
    double a = lo;
    double b = hi;
    double c = b - kInvGolden * (b - a);
    double d = a + kInvGolden * (b - a);
    double fc = f(c);
    double fd = f(d);
    consider(c, fc);
    consider(d, fd);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvGolden * (b - a);
            fc = f(c);
            consider(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvGolden * (b - a);
            fd = f(d);
            consider(d, fd);
        }
    }
    return {best_t, best_f};
}

}  // namespace

void SweepGrid::validate() const {
    if (r_values.empty() || rho_values.empty()) {
        throw DomainError("sweep grid needs at least one r and one rho value");
    }
    for (std::size_t i = 0; i < r_values.size(); ++i) {
        if (!(r_values[i] > 0.0 && r_values[i] < 1.0)) {
            throw DomainError("sweep r values must lie in (0, 1)");
        }
        if (i > 0 && !(r_values[i] > r_values[i - 1])) {
            throw DomainError("sweep r values must be strictly increasing");
        }
    }
    for (std::size_t i = 0; i < rho_values.size(); ++i) {
        if (!(rho_values[i] > 0.0 && rho_values[i] <= 1.0)) {
            throw DomainError("sweep rho values must lie in (0, 1]");
        }
        if (i > 0 && !(rho_values[i] > rho_values[i - 1])) {
            throw DomainError("sweep rho values must be strictly increasing");
        }
    }
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError("sweep coherence ratio must be positive");
    }
}

std::vector<double> SweepGrid::linspace(double lo, double hi, std::size_t steps) {
    if (steps == 0) {
        throw DomainError("linspace needs at least one step");
    }
    if (steps == 1) {
        return {lo};
    }
    std::vector<double> v(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    v.back() = hi;
    return v;
}

std::vector<SweepRow> sweep_efficiencies(const SweepGrid &grid, const WavePacketSpec &spec) {
    grid.validate();
    spec.validate();
    const std::size_t n_rho = grid.rho_values.size();
    std::vector<SweepRow> rows(grid.r_values.size() * n_rho);
    parallel_chunks(rows.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double r = grid.r_values[i / n_rho];
            const double rho = grid.rho_values[i % n_rho];
            SweepRow &row = rows[i];
            row.r1 = r;
            row.r2 = r;
            row.rho = rho;
            row.a = grid.a;
            try {
                const EfficiencyReport eff = efficiencies(DeviceParams(r, r, rho, grid.a), spec);
                row.eta = eff.eta;
                row.tau = eff.tau;
                row.phi = eff.phi;
                row.quad_err = eff.quadrature_error;
            } catch (const QuadratureError &e) {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                row.eta = row.tau = row.phi = nan;
                row.quad_err = e.achieved_rel_error();
                row.error = e.what();
            }
        }
    });
    return rows;
}

std::string Objective::name() const {
    if (kind == ObjectiveKind::max_min_eta_tau) {
        return "max_min_eta_tau";
    }
    return "max_tau_st_eta_floor";
}

double evaluate_objective(double r1, double r2, double rho, double a, const Objective &objective,
                          const WavePacketSpec &spec) {
    try {
        const EfficiencyReport eff = efficiencies(DeviceParams(r1, r2, rho, a), spec);
        if (objective.kind == ObjectiveKind::max_min_eta_tau) {
            return std::min(eff.eta, eff.tau);
        }
        return eff.eta >= objective.eta_floor ? eff.tau : kNegInf;
    } catch (const QuadratureError &) {
        return kNegInf;
    }
}

Optimum optimize_coupling(double rho, double a, const Objective &objective, const WavePacketSpec &spec,
                          const SearchBox &box) {
    check_box(box);
    check_objective(objective);
    spec.validate();
    DeviceParams(box.lo, box.lo, rho, a);  // validates rho and a

    // Stay strictly inside the box: the objective often peaks on its edge.
    const double lo = box.lo + box.refine_tol;
    const double hi = box.hi - box.refine_tol;
    const std::vector<double> grid = axis(lo, hi, box.coarse_step);
    Candidate best = best_on_grid(grid, grid, rho, a, objective, spec);
    if (!std::isfinite(best.f)) {
        throw InfeasibleError("no coupling pair in the search box satisfies " + objective.name());
    }
    const double coarse_value = best.f;

    auto f = [&](double r1, double r2) { return evaluate_objective(r1, r2, rho, a, objective, spec); };
    const double w = box.coarse_step;
    for (int sweep = 0; sweep < 200; ++sweep) {
        const Candidate before = best;

        {
            auto [t, v] = line_max([&](double r) { return f(r, best.r2); }, std::max(lo, best.r1 - w),
                                   std::min(hi, best.r1 + w), box.refine_tol, best.r1, best.f);
            best.r1 = t;
            best.f = v;
        }
        {
            auto [t, v] = line_max([&](double r) { return f(best.r1, r); }, std::max(lo, best.r2 - w),
                                   std::min(hi, best.r2 + w), box.refine_tol, best.r2, best.f);
            best.r2 = t;
            best.f = v;
        }
        {
            // Diagonal move r1 + s, r2 + s.
            const double s_lo = std::max({-w, lo - best.r1, lo - best.r2});
            const double s_hi = std::min({w, hi - best.r1, hi - best.r2});
            if (s_hi > s_lo) {
                const double r1 = best.r1;
                const double r2 = best.r2;
                auto [s, v] = line_max([&](double t) { return f(r1 + t, r2 + t); }, s_lo, s_hi, box.refine_tol,
                                       0.0, best.f);
                best.r1 = r1 + s;
                best.r2 = r2 + s;
                best.f = v;
            }
        }

        const double moved = std::max(std::abs(best.r1 - before.r1), std::abs(best.r2 - before.r2));
        if (moved < box.refine_tol) {
            break;
        }
    }
    return Optimum{best.r1, best.r2, best.f, objective.name(), coarse_value};
}

Optimum brute_force_optimum(double rho, double a, const Objective &objective, const WavePacketSpec &spec,
                            double center_r1, double center_r2, double half_width, double step,
                            const SearchBox &box) {
    check_box(box);
    check_objective(objective);
    spec.validate();
    if (!(half_width > 0.0) || !(step > 0.0)) {
        throw DomainError("brute-force window and step must be positive");
    }
    const auto window = [&](double center) {
        const double lo = std::max(box.lo + box.refine_tol, center - half_width);
        const double hi = std::min(box.hi - box.refine_tol, center + half_width);
        return axis(lo, hi, step);
    };
    const Candidate best = best_on_grid(window(center_r1), window(center_r2), rho, a, objective, spec);
    if (!std::isfinite(best.f)) {
        throw InfeasibleError("no coupling pair in the oracle window satisfies " + objective.name());
    }
    return Optimum{best.r1, best.r2, best.f, objective.name(), best.f};
}

}  // namespace ifm
