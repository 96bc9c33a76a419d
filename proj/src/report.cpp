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

#include "ifm/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "ifm/error.hpp"

namespace ifm::report {

namespace {

using nlohmann::json;

double num(double v, int precision) { return round_significant(v, precision); }

}  // namespace

std::string format_number(double value, int precision) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general,
                                   std::clamp(precision, 1, 17));
    return std::string(buf.data(), ptr);
}

double round_significant(double value, int precision) {
    if (!std::isfinite(value)) {
        return value;
    }
    const std::string s = format_number(value, precision);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

json envelope(std::string_view command, json config, json results, std::optional<std::uint64_t> seed) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["config"] = std::move(config);
    j["results"] = std::move(results);
    j["seed"] = seed ? json(*seed) : json(nullptr);
    return j;
}

json to_json(const EfficiencyReport &r, int p) {
    return json{{"eta", num(r.eta, p)},
                {"tau", num(r.tau, p)},
                {"phi", num(r.phi, p)},
                {"quadrature_error", num(r.quadrature_error, p)},
                {"reflected_energy_ratio", num(r.reflected_energy_ratio(), p)},
                {"transmitted_energy_ratio", num(r.transmitted_energy_ratio(), p)},
                {"evaluations", r.evaluations}};
}

json to_json(const EnergyRatios &r, int p) {
    return json{{"reflected", num(r.reflected, p)},
                {"transmitted", num(r.transmitted, p)},
                {"reflected_abs_error", num(r.reflected_abs_error, p)},
                {"transmitted_abs_error", num(r.transmitted_abs_error, p)}};
}

json to_json(const SchemeResult &r, int p) {
    return json{{"detect_no_hit_prob", num(r.detect_no_hit_prob, p)},
                {"hit_prob", num(r.hit_prob, p)},
                {"inconclusive_prob", num(r.inconclusive_prob, p)},
                {"long_run_efficiency", num(r.long_run_efficiency, p)},
                {"no_object_signature_prob", num(r.no_object_signature_prob, p)},
                {"provenance", to_string(r.provenance)}};
}

json to_json(const OutcomeDistribution &d, int p) {
    json j = json::object();
    for (const TrialOutcome o : kAllOutcomes) {
        j[std::string(to_string(o))] = num(d[o], p);
    }
    return j;
}

json to_json(const GraynessEstimate &g, int p) {
    return json{{"g_hat", num(g.g_hat, p)},
                {"ci95_low", num(g.ci_low, p)},
                {"ci95_high", num(g.ci_high, p)},
                {"std_error", std::isfinite(g.std_error) ? json(num(g.std_error, p)) : json(nullptr)},
                {"log_likelihood", num(g.log_likelihood, p)}};
}

json to_json(const Optimum &o, int p) {
    return json{{"r1_star", num(o.r1_star, p)},
                {"r2_star", num(o.r2_star, p)},
                {"objective_value", num(o.objective_value, p)},
                {"objective_name", o.objective_name},
                {"coarse_value", num(o.coarse_value, p)}};
}

json to_json(const TrialStatistics &s) {
    json counts = json::object();
    for (const TrialOutcome o : kAllOutcomes) {
        counts[std::string(to_string(o))] = s[o];
    }
    return json{{"n_trials", s.n_trials}, {"seed", s.seed}, {"counts", std::move(counts)}};
}

json frequencies_json(const TrialStatistics &s, int p) {
    json j = json::object();
    for (const TrialOutcome o : kAllOutcomes) {
        j[std::string(to_string(o))] =
            num(static_cast<double>(s[o]) / static_cast<double>(std::max<std::uint64_t>(s.n_trials, 1)), p);
    }
    return j;
}

TrialStatistics trial_statistics_from_json(const json &j) {
    const json *src = &j;
    if (j.is_object() && j.contains("results") && j["results"].is_object()) {
        src = &j["results"];
    }
    if (!src->is_object() || !src->contains("counts") || !(*src)["counts"].is_object()) {
        throw DomainError("statistics JSON must contain a \"counts\" object");
    }
    TrialStatistics s;
    const json &counts = (*src)["counts"];
    for (auto it = counts.begin(); it != counts.end(); ++it) {
        bool known = false;
        for (const TrialOutcome o : kAllOutcomes) {
            if (it.key() == to_string(o)) {
                if (!it.value().is_number_unsigned() && !(it.value().is_number_integer() && it.value().get<long long>() >= 0)) {
                    throw DomainError("count for " + it.key() + " must be a nonnegative integer");
                }
                s.counts[index_of(o)] = it.value().get<std::uint64_t>();
                known = true;
            }
        }
        if (!known) {
            throw DomainError("unknown outcome \"" + it.key() + "\" in counts");
        }
    }
    std::uint64_t total = 0;
    for (const auto c : s.counts) {
        total += c;
    }
    s.n_trials = total;
    if (src->contains("n_trials")) {
        const auto n = (*src)["n_trials"].get<std::uint64_t>();
        if (n != total) {
            throw DomainError("n_trials does not equal the sum of the counts");
        }
    }
    if (src->contains("seed") && (*src)["seed"].is_number_unsigned()) {
        s.seed = (*src)["seed"].get<std::uint64_t>();
    } else if (j.contains("seed") && j["seed"].is_number_unsigned()) {
        s.seed = j["seed"].get<std::uint64_t>();
    }
    return s;
}

void write_sweep_csv(std::ostream &out, std::span<const SweepRow> rows, int precision) {
    out << kSweepHeader << '\n';
    for (const SweepRow &row : rows) {
        out << format_number(row.r1, precision) << ',' << format_number(row.r2, precision) << ','
            << format_number(row.rho, precision) << ',' << format_number(row.a, precision) << ','
            << format_number(row.eta, precision) << ',' << format_number(row.tau, precision) << ','
            << format_number(row.phi, precision) << ',' << format_number(row.quad_err, precision) << '\n';
    }
}

}  // namespace ifm::report
