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

#include "ifm/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ifm/error.hpp"
#include "ifm/parallel.hpp"
#include "ifm/rng.hpp"

namespace ifm {

namespace {

void check_detector_efficiency(double e) {
    if (!(e > 0.0 && e <= 1.0)) {
        throw DomainError("detector efficiency must lie in (0, 1], got " + std::to_string(e));
    }
}

constexpr double kInvGolden = 0.6180339887498949;

// Half the 95% quantile of chi-squared with one degree of freedom.
constexpr double kLikelihoodDrop95 = 1.920729410347062;
constexpr double kZ95 = 1.959963984540054;

struct ClickModel {
    const DeviceParams &params;
    WavePacketSpec spec;
    double detector_efficiency;

    // {D_r click, D_t click, silence}
    std::array<double, 3> probabilities(double g) const {
        const OutcomeDistribution d = outcome_distribution(params, spec, ObjectModel{g}, detector_efficiency);
        return {d[TrialOutcome::reflected_detector], d[TrialOutcome::transmitted_detector],
                d[TrialOutcome::object_hit] + d[TrialOutcome::lost] + d[TrialOutcome::no_detection]};
    }
};

struct ClickCounts {
    std::array<double, 3> n;

    double log_likelihood(const std::array<double, 3> &p) const {
        double sum = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            if (n[k] == 0.0) {
                continue;
            }
            if (p[k] <= 0.0) {
                return -std::numeric_limits<double>::infinity();
            }
            sum += n[k] * std::log(p[k]);
        }
        return sum;
    }
};

struct Point {
    double x;
    double f;
};

// Maximizes f on [lo, hi]; returns the best point evaluated.
template <typename F>
Point golden_max(F &&f, double lo, double hi, double tol) {
    double a = lo;
    double b = hi;
    double c = b - kInvGolden * (b - a);
    double d = a + kInvGolden * (b - a);
    double fc = f(c);
    double fd = f(d);
    Point best = fc >= fd ? Point{c, fc} : Point{d, fd};
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvGolden * (b - a);
            fc = f(c);
            if (fc > best.f) {
                best = {c, fc};
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvGolden * (b - a);
            fd = f(d);
            if (fd > best.f) {
                best = {d, fd};
            }
        }
    }
    return best;
}

// Point between `inside` (above the cut) and `outside` where f crosses `cut`.
template <typename F>
double likelihood_cut(F &&f, double inside, double outside, double cut) {
    if (f(outside) >= cut) {
        return outside;
    }
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (inside + outside);
        if (f(mid) >= cut) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    return 0.5 * (inside + outside);
}

}  // namespace

std::string_view to_string(TrialOutcome outcome) noexcept {
    switch (outcome) {
        case TrialOutcome::reflected_detector:
            return "reflected_detector";
        case TrialOutcome::transmitted_detector:
            return "transmitted_detector";
        case TrialOutcome::object_hit:
            return "object_hit";
        case TrialOutcome::lost:
            return "lost";
        case TrialOutcome::no_detection:
            return "no_detection";
    }
    return "unknown";
}

void ObjectModel::validate() const {
    if (!(grayness >= 0.0 && grayness <= 1.0)) {
        throw DomainError("object grayness must lie in [0, 1], got " + std::to_string(grayness));
    }
}

OutcomeDistribution outcome_distribution(const DeviceParams &params, const WavePacketSpec &spec,
                                         const ObjectModel &object, double detector_efficiency) {
    object.validate();
    check_detector_efficiency(detector_efficiency);

    const double g = object.grayness;
    const double rho = params.rho();
    const EfficiencyReport eff = efficiencies(params.with_rho(rho * std::sqrt(g)), spec);

    // eta can exceed 1 by the quadrature error when the device is nearly ideal.
    const double eta = std::min(eff.eta, 1.0);
    const double tau = std::min(eff.tau, eta);
    const double to_reflected = 1.0 - eta;
    const double to_transmitted = tau;
    const double absorbed = eta - tau;

    const double round_trip_loss = 1.0 - g * rho * rho;
    const double hit = round_trip_loss > 0.0 ? absorbed * (1.0 - g) / round_trip_loss : 0.0;
    const double lost = absorbed - hit;

    OutcomeDistribution d;
    d.reflected_reached = to_reflected;
    d.transmitted_reached = to_transmitted;
    d.quadrature_error = eff.quadrature_error;
    d.probability[index_of(TrialOutcome::reflected_detector)] = detector_efficiency * to_reflected;
    d.probability[index_of(TrialOutcome::transmitted_detector)] = detector_efficiency * to_transmitted;
    d.probability[index_of(TrialOutcome::object_hit)] = hit;
    d.probability[index_of(TrialOutcome::lost)] = lost;
    d.probability[index_of(TrialOutcome::no_detection)] = (1.0 - detector_efficiency) * (to_reflected + to_transmitted);
    return d;
}

TrialStatistics sample_outcomes(const OutcomeDistribution &dist, std::uint64_t n_trials, std::uint64_t seed) {
    if (n_trials == 0) {
        throw DomainError("at least one trial is required");
    }
    std::array<double, kOutcomeCount> cdf{};
    double acc = 0.0;
    for (std::size_t k = 0; k < kOutcomeCount; ++k) {
        acc += dist.probability[k];
        cdf[k] = acc;
    }
    const CounterRng rng(seed);

    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::uint64_t>(worker_count(), n_trials));
    std::vector<std::array<std::uint64_t, kOutcomeCount>> partial(chunks);
    parallel_chunks(chunks, [&](std::size_t first, std::size_t last) {
        for (std::size_t c = first; c < last; ++c) {
            const std::uint64_t begin = n_trials * c / chunks;
            const std::uint64_t end = n_trials * (c + 1) / chunks;
            auto &counts = partial[c];
            counts.fill(0);
            for (std::uint64_t i = begin; i < end; ++i) {
                const double u = rng.uniform(i);
                std::size_t k = 0;
                while (k + 1 < kOutcomeCount && u >= cdf[k]) {
                    ++k;
                }
                ++counts[k];
            }
        }
    });

    TrialStatistics stats;
    stats.n_trials = n_trials;
    stats.seed = seed;
    for (const auto &counts : partial) {
        for (std::size_t k = 0; k < kOutcomeCount; ++k) {
            stats.counts[k] += counts[k];
        }
    }
    return stats;
}

TrialStatistics run_trials(const DeviceParams &params, const WavePacketSpec &spec, const ObjectModel &object,
                           double detector_efficiency, std::uint64_t n_trials, std::uint64_t seed) {
    if (n_trials == 0) {
        throw DomainError("at least one trial is required");
    }
    return sample_outcomes(outcome_distribution(params, spec, object, detector_efficiency), n_trials, seed);
}

GraynessEstimate estimate_grayness(const TrialStatistics &stats, const DeviceParams &params,
                                   const WavePacketSpec &spec, double detector_efficiency) {
    check_detector_efficiency(detector_efficiency);
    std::uint64_t total = 0;
    for (const auto c : stats.counts) {
        total += c;
    }
    if (total != stats.n_trials) {
        throw DomainError("outcome counts do not add up to the trial count");
    }
    if (stats.n_trials < 100) {
        throw DomainError("grayness estimation needs at least 100 trials, got " + std::to_string(stats.n_trials));
    }

    // A tighter tolerance keeps quadrature noise out of the curvature estimate.
    WavePacketSpec tight = spec;
    tight.rel_tolerance = std::min(spec.rel_tolerance, 1e-10);
    const ClickModel model{params, tight, detector_efficiency};
    const ClickCounts counts{{
        static_cast<double>(stats[TrialOutcome::reflected_detector]),
        static_cast<double>(stats[TrialOutcome::transmitted_detector]),
        static_cast<double>(stats[TrialOutcome::object_hit] + stats[TrialOutcome::lost] +
                            stats[TrialOutcome::no_detection]),
    }};

    {
        const auto p0 = model.probabilities(0.0);
        const auto p_half = model.probabilities(0.5);
        const auto p1 = model.probabilities(1.0);
        double spread = 0.0;
        for (std::size_t k = 0; k < 3; ++k) {
            spread = std::max({spread, std::abs(p0[k] - p1[k]), std::abs(p0[k] - p_half[k])});
        }
        if (spread < 1e-10) {
            throw NonIdentifiableError("click probabilities do not depend on the object grayness for this device");
        }
    }

    const auto loglik = [&](double g) { return counts.log_likelihood(model.probabilities(g)); };

    Point best = golden_max(loglik, 0.0, 1.0, 1e-7);
    for (const double edge : {0.0, 1.0}) {
        const double f = loglik(edge);
        if (f >= best.f) {
            best = {edge, f};
        }
    }
    if (!std::isfinite(best.f)) {
        throw NonIdentifiableError("observed counts are impossible for every grayness under this device model");
    }

    GraynessEstimate est{best.x, 0.0, 1.0, std::numeric_limits<double>::infinity(), best.f};
    const double margin = std::min(best.x, 1.0 - best.x);
    const double cut = best.f - kLikelihoodDrop95;
    if (margin >= 1e-4) {
        const double h = std::clamp(0.25 * margin, 1e-5, 1e-3);
        const double curvature = (loglik(best.x + h) - 2.0 * best.f + loglik(best.x - h)) / (h * h);
        if (curvature < 0.0 && std::isfinite(curvature)) {
            est.std_error = 1.0 / std::sqrt(-curvature);
            est.ci_low = std::max(0.0, best.x - kZ95 * est.std_error);
            est.ci_high = std::min(1.0, best.x + kZ95 * est.std_error);
            return est;
        }
        est.ci_low = likelihood_cut(loglik, best.x, 0.0, cut);
        est.ci_high = likelihood_cut(loglik, best.x, 1.0, cut);
        return est;
    }
    if (best.x < 0.5) {
        est.ci_low = 0.0;
        est.ci_high = likelihood_cut(loglik, best.x, 1.0, cut);
    } else {
        est.ci_low = likelihood_cut(loglik, best.x, 0.0, cut);
        est.ci_high = 1.0;
    }
    return est;
}

}  // namespace ifm
