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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "ifm/device.hpp"
#include "ifm/wavepacket.hpp"

namespace ifm {

enum class TrialOutcome : std::uint8_t {
    reflected_detector,
    transmitted_detector,
    object_hit,
    lost,
    no_detection,
};

inline constexpr std::size_t kOutcomeCount = 5;

inline constexpr std::array<TrialOutcome, kOutcomeCount> kAllOutcomes{
    TrialOutcome::reflected_detector, TrialOutcome::transmitted_detector, TrialOutcome::object_hit,
    TrialOutcome::lost, TrialOutcome::no_detection,
};

/// lower_snake_case name used in reports.
std::string_view to_string(TrialOutcome outcome) noexcept;

constexpr std::size_t index_of(TrialOutcome outcome) noexcept { return static_cast<std::size_t>(outcome); }

/// Object in the resonator loop, described by its per-pass intensity
/// transmittance. An absent object is grayness 1, an opaque one grayness 0.
struct ObjectModel {
    double grayness = 1.0;

    static constexpr ObjectModel absent() noexcept { return ObjectModel{1.0}; }
    static constexpr ObjectModel opaque() noexcept { return ObjectModel{0.0}; }

    void validate() const;
};

struct OutcomeDistribution {
    std::array<double, kOutcomeCount> probability{};

    double operator[](TrialOutcome o) const noexcept { return probability[index_of(o)]; }
    /// Probability that the photon reached D_r (before detector efficiency).
    double reflected_reached = 0.0;
    /// Probability that the photon reached D_t (before detector efficiency).
    double transmitted_reached = 0.0;
    /// Relative quadrature error inherited from the efficiencies.
    double quadrature_error = 0.0;
};

struct TrialStatistics {
    std::array<std::uint64_t, kOutcomeCount> counts{};
    std::uint64_t n_trials = 0;
    std::uint64_t seed = 0;

    std::uint64_t operator[](TrialOutcome o) const noexcept { return counts[index_of(o)]; }
    bool operator==(const TrialStatistics &) const = default;
};

/// Single-photon outcome probabilities for one gated test.
///
/// The object multiplies the round-trip amplitude by sqrt(g), so the device is
/// evaluated with rho_eff = rho * sqrt(g). D_r is reached with 1 - eta(rho_eff),
/// D_t with tau(rho_eff). The photons absorbed inside the loop are split
/// between the object and the resonator as the object absorbs (1 - g) of each
/// round trip's intensity before the resonator loses g (1 - rho^2) of it.
/// Detector efficiency thins both detector channels into no_detection.
OutcomeDistribution outcome_distribution(const DeviceParams &params, const WavePacketSpec &spec,
                                         const ObjectModel &object, double detector_efficiency);

/// Samples n_trials gated tests. Trial i uses the i-th value of a
/// CounterRng(seed), so the counts depend only on the inputs, never on the
/// thread count. Retrying no_detection outcomes is left to the caller.
TrialStatistics run_trials(const DeviceParams &params, const WavePacketSpec &spec, const ObjectModel &object,
                           double detector_efficiency, std::uint64_t n_trials, std::uint64_t seed);

/// Same sampler on a precomputed distribution.
TrialStatistics sample_outcomes(const OutcomeDistribution &dist, std::uint64_t n_trials, std::uint64_t seed);

struct GraynessEstimate {
    double g_hat;
    double ci_low;
    double ci_high;
    /// Standard error from the observed information; infinite when the
    /// interval came from the likelihood-ratio fallback at a boundary.
    double std_error;
    double log_likelihood;
};

/// Maximum-likelihood grayness from repeated tests.
///
/// The experimenter only sees which detector clicked, so the likelihood is
/// multinomial over {D_r click, D_t click, silence}, silence pooling object
/// hits, resonator losses and missed detections. The maximum is located by
/// golden-section search over [0, 1]; the 95% interval comes from the curvature
/// of the log-likelihood at an interior maximum and from the likelihood-ratio
/// cut when the maximum sits on the boundary. Intervals are clipped to [0, 1].
///
/// Throws DomainError when fewer than 100 trials are supplied and
/// NonIdentifiableError when the click probabilities do not depend on g.
GraynessEstimate estimate_grayness(const TrialStatistics &stats, const DeviceParams &params,
                                   const WavePacketSpec &spec, double detector_efficiency);

}  // namespace ifm
