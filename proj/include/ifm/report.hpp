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

#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"

#include "ifm/montecarlo.hpp"
#include "ifm/optimize.hpp"
#include "ifm/schemes.hpp"
#include "ifm/wavepacket.hpp"

// Machine-readable report formats. JSON reports share one envelope
// {schema_version, command, config, results, seed}; sweeps are CSV. All
// number rendering goes through std::to_chars and is locale independent.

namespace ifm::report {

inline constexpr std::string_view kSchemaVersion = "1";
inline constexpr std::string_view kSweepHeader = "r1,r2,rho,a,eta,tau,phi,quad_err";

/// Shortest %g-style rendering with `precision` significant digits; "nan"/"inf" for non-finite values.
std::string format_number(double value, int precision);

/// Value rounded to `precision` significant digits.
double round_significant(double value, int precision);

nlohmann::json envelope(std::string_view command, nlohmann::json config, nlohmann::json results,
                        std::optional<std::uint64_t> seed = std::nullopt);

nlohmann::json to_json(const EfficiencyReport &r, int precision);
nlohmann::json to_json(const EnergyRatios &r, int precision);
nlohmann::json to_json(const SchemeResult &r, int precision);
nlohmann::json to_json(const OutcomeDistribution &d, int precision);
nlohmann::json to_json(const GraynessEstimate &g, int precision);
nlohmann::json to_json(const Optimum &o, int precision);

/// {"n_trials": n, "seed": s, "counts": {outcome: count, ...}}
nlohmann::json to_json(const TrialStatistics &s);

/// Empirical frequency per outcome.
nlohmann::json frequencies_json(const TrialStatistics &s, int precision);

/// Reads counts back from either a bare TrialStatistics object or a full
/// simulate report (whose "results" member holds one). Missing outcomes count
/// as zero; n_trials defaults to the sum of the counts. Throws DomainError on
/// malformed input.
TrialStatistics trial_statistics_from_json(const nlohmann::json &j);

/// Header plus one LF-terminated row per cell, in table order.
void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows, int precision);

}  // namespace ifm::report
