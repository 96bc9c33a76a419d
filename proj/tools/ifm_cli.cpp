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

// ifm: command-line front end for the resonator interaction-free detection toolkit.
//
//   ifm efficiency    eta, tau and phi of a device without an object
//   ifm sweep         CSV table of eta/tau over symmetric couplings and losses
//   ifm schemes       rival interaction-free schemes next to the resonator
//   ifm simulate      Monte Carlo single-photon tests
//   ifm estimate-gray maximum-likelihood object grayness from test counts
//   ifm optimize      best coupling pair for a given loss and coherence ratio
//
// Exit codes: 0 ok, 2 invalid input, 3 quadrature failure, 4 I/O, 5 grayness
// not identifiable, 6 infeasible objective.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_config.hpp"
#include "ifm/error.hpp"
#include "ifm/montecarlo.hpp"
#include "ifm/optimize.hpp"
#include "ifm/report.hpp"
#include "ifm/schemes.hpp"
#include "ifm/simd/kernels.hpp"
#include "ifm/wavepacket.hpp"

namespace {

using nlohmann::json;

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kValidation = 2,
    kQuadrature = 3,
    kIo = 4,
    kNonIdentifiable = 5,
    kInfeasible = 6,
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DeviceFlags {
    double r1 = 0.98;
    double r2 = 0.98;
    double rho = 0.9999;
    double a = 500.0;
    double x_max = 8.0;
    double tol = 1e-8;

    void add_to(CLI::App &cmd, bool with_couplings = true) {
        if (with_couplings) {
            cmd.add_option("--r1", r1, "input coupling reflectivity")->capture_default_str();
            cmd.add_option("--r2", r2, "output coupling reflectivity")->capture_default_str();
        }
        cmd.add_option("--rho", rho, "round-trip amplitude survival")->capture_default_str();
        cmd.add_option("--a", a, "coherence time over round-trip time")->capture_default_str();
        cmd.add_option("--x-max", x_max, "detuning half-width of the integration window")->capture_default_str();
        cmd.add_option("--tol", tol, "relative quadrature tolerance")->capture_default_str();
    }

    ifm::DeviceParams device() const { return ifm::DeviceParams(r1, r2, rho, a); }

    ifm::WavePacketSpec spec() const {
        ifm::WavePacketSpec s;
        s.integration_halfwidth = x_max;
        s.rel_tolerance = tol;
        s.validate();
        return s;
    }

    json config() const { return json{{"r1", r1}, {"r2", r2}, {"rho", rho}, {"a", a}, {"x_max", x_max}, {"tol", tol}}; }
};

struct OutputFlags {
    std::string format = "text";
    int precision = 6;
    std::string out;

    void add_to(CLI::App &cmd, std::string default_format) {
        format = std::move(default_format);
        cmd.add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
        cmd.add_option("--precision", precision, "significant digits")
            ->check(CLI::Range(1, 17))
            ->capture_default_str();
        cmd.add_option("--out", out, "write to this file instead of stdout");
    }

    bool json_format() const { return format == "json"; }

    std::string num(double v) const { return ifm::report::format_number(v, precision); }

    void emit(const std::string &text) const {
        if (out.empty()) {
            std::cout << text;
            std::cout.flush();
            return;
        }
        std::ofstream file(out, std::ios::binary | std::ios::trunc);
        if (!file) {
            throw IoError("cannot open output file " + out);
        }
        file << text;
        file.close();
        if (!file) {
            throw IoError("failed writing output file " + out);
        }
    }

    void emit(const json &j) const { emit(j.dump(2) + "\n"); }
};

// ---- efficiency -------------------------------------------------------------

struct EfficiencyCommand {
    DeviceFlags dev;
    OutputFlags out;
    bool direct = false;

    void attach(CLI::App &app) {
        auto *cmd = app.add_subcommand("efficiency", "eta, tau and phi of the device with no object");
        dev.add_to(*cmd);
        out.add_to(*cmd, "text");
        cmd->add_flag("--direct", direct, "also integrate the energy ratios directly as a cross-check");
        cmd->callback([this] { run(); });
    }

    void run() const {
        const auto params = dev.device();
        const auto spec = dev.spec();
        const auto eff = ifm::efficiencies(params, spec);
        std::optional<ifm::EnergyRatios> ratios;
        if (direct) {
            ratios = ifm::energy_ratios(params, spec);
        }
        if (out.json_format()) {
            json results = ifm::report::to_json(eff, out.precision);
            if (ratios) {
                results["energy_ratios"] = ifm::report::to_json(*ratios, out.precision);
            }
            out.emit(ifm::report::envelope("efficiency", dev.config(), std::move(results)));
            return;
        }
        std::ostringstream s;
        s << "eta              " << out.num(eff.eta) << "\n"
          << "tau              " << out.num(eff.tau) << "\n"
          << "phi              " << out.num(eff.phi) << "\n"
          << "quadrature_error " << out.num(eff.quadrature_error) << "\n";
        if (ratios) {
            s << "direct I_r/I_i   " << out.num(ratios->reflected) << "\n"
              << "direct I_t/I_i   " << out.num(ratios->transmitted) << "\n";
        }
        out.emit(s.str());
    }
};

// ---- sweep ------------------------------------------------------------------

struct SweepCommand {
    double r_min = 0.9;
    double r_max = 0.999;
    double rho_min = 0.999;
    double rho_max = 1.0;
    std::size_t steps = 10;
    std::size_t r_steps = 0;
    std::size_t rho_steps = 0;
    double a = 500.0;
    double x_max = 8.0;
    double tol = 1e-8;
    int precision = 6;
    std::string out;

    void attach(CLI::App &app) {
        auto *cmd = app.add_subcommand("sweep", "eta/tau table over symmetric coupling r and loss rho (CSV)");
        cmd->add_option("--r-min", r_min, "smallest symmetric coupling reflectivity")->capture_default_str();
        cmd->add_option("--r-max", r_max, "largest symmetric coupling reflectivity")->capture_default_str();
        cmd->add_option("--rho-min", rho_min, "smallest round-trip amplitude survival")->capture_default_str();
        cmd->add_option("--rho-max", rho_max, "largest round-trip amplitude survival")->capture_default_str();
        cmd->add_option("--steps", steps, "grid points per axis")->capture_default_str();
        cmd->add_option("--r-steps", r_steps, "grid points along r (overrides --steps)");
        cmd->add_option("--rho-steps", rho_steps, "grid points along rho (overrides --steps)");
        cmd->add_option("--a", a, "coherence time over round-trip time")->capture_default_str();
        cmd->add_option("--x-max", x_max)->capture_default_str();
        cmd->add_option("--tol", tol)->capture_default_str();
        cmd->add_option("--precision", precision)->check(CLI::Range(1, 17))->capture_default_str();
        cmd->add_option("--out", out, "CSV output path (stdout when omitted)");
        cmd->callback([this] { run(); });
    }

    void run() const {
        ifm::SweepGrid grid;
        grid.r_values = ifm::SweepGrid::linspace(r_min, r_max, r_steps ? r_steps : steps);
        grid.rho_values = ifm::SweepGrid::linspace(rho_min, rho_max, rho_steps ? rho_steps : steps);
        grid.a = a;
        ifm::WavePacketSpec spec;
        spec.integration_halfwidth = x_max;
        spec.rel_tolerance = tol;
        const auto rows = ifm::sweep_efficiencies(grid, spec);

        std::ostringstream csv;
        ifm::report::write_sweep_csv(csv, rows, precision);
        OutputFlags o;
        o.out = out;
        o.emit(csv.str());
    }
};

// ---- schemes ----------------------------------------------------------------

struct SchemesCommand {
    std::optional<double> ev;
    std::optional<double> zeno_alpha_deg;
    std::optional<unsigned> zeno_cycles;
    std::optional<unsigned> two_cavity;
    bool resonator = true;
    DeviceFlags dev;
    OutputFlags out;

    void attach(CLI::App &app) {
        auto *cmd = app.add_subcommand("schemes", "compare interaction-free schemes with the resonator");
        cmd->add_option("--ev", ev, "Mach-Zehnder beam splitter reflectivity");
        cmd->add_option("--zeno-alpha-deg", zeno_alpha_deg, "Zeno rotation per cycle in degrees");
        cmd->add_option("--zeno-cycles", zeno_cycles, "Zeno cycle count (default round(90/alpha))");
        cmd->add_option("--two-cavity", two_cavity, "coupled-cavity cycle count");
        cmd->add_flag("!--no-resonator", resonator, "omit the resonator comparison row");
        dev.add_to(*cmd);
        out.add_to(*cmd, "text");
        cmd->callback([this] { run(); });
    }

    void run() const {
        if (!ev && !zeno_alpha_deg && !two_cavity) {
            throw ifm::DomainError("select at least one scheme: --ev, --zeno-alpha-deg or --two-cavity");
        }
        std::vector<std::pair<std::string, ifm::SchemeResult>> rows;
        json config = json::object();
        if (ev) {
            rows.emplace_back("elitzur_vaidman", ifm::elitzur_vaidman(*ev));
            config["ev_reflectivity"] = *ev;
        }
        if (zeno_alpha_deg) {
            const double alpha = *zeno_alpha_deg * std::numbers::pi / 180.0;
            const ifm::ZenoParams zp = zeno_cycles ? ifm::ZenoParams(alpha, *zeno_cycles) : ifm::ZenoParams(alpha);
            rows.emplace_back("zeno", ifm::zeno_scheme(zp));
            config["zeno_alpha_deg"] = *zeno_alpha_deg;
            config["zeno_cycles"] = zp.n_cycles();
        }
        if (two_cavity) {
            rows.emplace_back("two_cavity", ifm::two_cavity_scheme(*two_cavity));
            config["two_cavity_cycles"] = *two_cavity;
        }
        if (resonator) {
            const auto eff = ifm::efficiencies(dev.device(), dev.spec());
            rows.emplace_back("resonator", ifm::resonator_opaque_object(dev.r1, dev.r2, eff.tau));
            config["device"] = dev.config();
        }

        if (out.json_format()) {
            json results = json::object();
            for (const auto &[name, r] : rows) {
                results[name] = ifm::report::to_json(r, out.precision);
            }
            out.emit(ifm::report::envelope("schemes", std::move(config), std::move(results)));
            return;
        }
        std::ostringstream s;
        s << "scheme            detect_no_hit  hit            inconclusive   long_run       no_object      provenance\n";
        for (const auto &[name, r] : rows) {
            s << std::left;
            s.width(18);
            s << name;
            for (const double v : {r.detect_no_hit_prob, r.hit_prob, r.inconclusive_prob, r.long_run_efficiency,
                                   r.no_object_signature_prob}) {
                s.width(15);
                s << out.num(v);
            }
            s << ifm::to_string(r.provenance) << "\n";
        }
        out.emit(s.str());
    }
};

// ---- simulate ---------------------------------------------------------------

std::optional<double> parse_object(const std::string &text) {
    if (text == "none") {
        return std::nullopt;
    }
    std::size_t used = 0;
    double g = 0.0;
    try {
        g = std::stod(text, &used);
    } catch (const std::exception &) {
        throw ifm::DomainError("--object expects a grayness in [0, 1] or 'none', got '" + text + "'");
    }
    if (used != text.size()) {
        throw ifm::DomainError("--object expects a grayness in [0, 1] or 'none', got '" + text + "'");
    }
    return g;
}

struct SimulateCommand {
    DeviceFlags dev;
    OutputFlags out;
    std::string object = "none";
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    double det_eff = 1.0;

    void attach(CLI::App &app) {
        auto *cmd = app.add_subcommand("simulate", "Monte Carlo single-photon tests");
        dev.add_to(*cmd);
        out.add_to(*cmd, "json");
        cmd->add_option("--object", object, "object grayness g in [0,1], or 'none'")->capture_default_str();
        cmd->add_option("--trials", trials, "number of single-photon tests")->capture_default_str();
        cmd->add_option("--seed", seed, "random seed")->capture_default_str();
        cmd->add_option("--det-eff", det_eff, "detector efficiency")->capture_default_str();
        cmd->callback([this] { run(); });
    }

    void run() const {
        const auto g = parse_object(object);
        const ifm::ObjectModel model = g ? ifm::ObjectModel{*g} : ifm::ObjectModel::absent();
        if (trials == 0) {
            throw ifm::DomainError("--trials must be at least 1");
        }
        const auto dist = ifm::outcome_distribution(dev.device(), dev.spec(), model, det_eff);
        const auto stats = ifm::sample_outcomes(dist, trials, seed);

        json config = dev.config();
        config["object"] = g ? json(*g) : json("none");
        config["trials"] = trials;
        config["det_eff"] = det_eff;

        if (out.json_format()) {
            json results = ifm::report::to_json(stats);
            results["frequencies"] = ifm::report::frequencies_json(stats, out.precision);
            results["analytic_probabilities"] = ifm::report::to_json(dist, out.precision);
            results["hit_lost_split"] = "model_derived";
            out.emit(ifm::report::envelope("simulate", std::move(config), std::move(results), seed));
            return;
        }
        std::ostringstream s;
        s << "outcome               count        frequency    analytic\n";
        for (const auto o : ifm::kAllOutcomes) {
            s << std::left;
            s.width(22);
            s << ifm::to_string(o);
            s.width(13);
            s << stats[o];
            s.width(13);
            s << out.num(static_cast<double>(stats[o]) / static_cast<double>(stats.n_trials));
            s << out.num(dist[o]) << "\n";
        }
        s << "trials " << stats.n_trials << "  seed " << stats.seed << "\n";
        out.emit(s.str());
    }
};

// ---- estimate-gray ----------------------------------------------------------

struct EstimateGrayCommand {
    DeviceFlags dev;
    OutputFlags out;
    std::string stats_path;
    std::vector<std::uint64_t> counts;
    double det_eff = 1.0;

    void attach(CLI::App &app) {
        auto *cmd = app.add_subcommand("estimate-gray", "maximum-likelihood object grayness from test counts");
        dev.add_to(*cmd);
        out.add_to(*cmd, "text");
        auto *file = cmd->add_option("--stats", stats_path, "JSON report written by 'simulate'");
        auto *inline_counts =
            cmd->add_option("--counts", counts,
                            "counts: reflected_detector,transmitted_detector,object_hit,lost,no_detection")
                ->delimiter(',')
                ->expected(5);
        file->excludes(inline_counts);
        cmd->add_option("--det-eff", det_eff, "detector efficiency")->capture_default_str();
        cmd->callback([this] { run(); });
    }

    ifm::TrialStatistics load() const {
        if (!stats_path.empty()) {
            std::ifstream in(stats_path);
            if (!in) {
                throw IoError("cannot read statistics file " + stats_path);
            }
            json j;
            try {
                in >> j;
            } catch (const json::exception &e) {
                throw ifm::DomainError(std::string("statistics file is not valid JSON: ") + e.what());
            }
            return ifm::report::trial_statistics_from_json(j);
        }
        if (counts.size() != ifm::kOutcomeCount) {
            throw ifm::DomainError("provide --stats or five --counts values");
        }
        ifm::TrialStatistics s;
        for (std::size_t k = 0; k < ifm::kOutcomeCount; ++k) {
            s.counts[k] = counts[k];
            s.n_trials += counts[k];
        }
        return s;
    }

    void run() const {
        const auto stats = load();
        const auto est = ifm::estimate_grayness(stats, dev.device(), dev.spec(), det_eff);
        if (out.json_format()) {
            json config = dev.config();
            config["det_eff"] = det_eff;
            config["input"] = ifm::report::to_json(stats);
            out.emit(ifm::report::envelope("estimate-gray", std::move(config), ifm::report::to_json(est, out.precision)));
            return;
        }
        std::ostringstream s;
        s << "g_hat   " << out.num(est.g_hat) << "\n"
          << "ci95    [" << out.num(est.ci_low) << ", " << out.num(est.ci_high) << "]\n"
          << "trials  " << stats.n_trials << "\n";
        out.emit(s.str());
    }
};

// ---- optimize ---------------------------------------------------------------

struct OptimizeCommand {
    DeviceFlags dev;
    OutputFlags out;
    std::string objective = "max-min";
    double eta_floor = 0.99;
    bool verify = false;

    void attach(CLI::App &app) {
        auto *cmd = app.add_subcommand("optimize", "best coupling pair (r1, r2) for given rho and a");
        dev.add_to(*cmd, false);
        out.add_to(*cmd, "text");
        cmd->add_option("--objective", objective, "max-min: maximize min(eta, tau); max-tau: maximize tau with eta >= floor")
            ->check(CLI::IsMember({"max-min", "max-tau"}))
            ->capture_default_str();
        cmd->add_option("--eta-floor", eta_floor, "eta floor for max-tau")->capture_default_str();
        cmd->add_flag("--verify", verify, "cross-check against a 10x finer brute-force grid near the optimum");
        cmd->callback([this] { run(); });
    }

    void run() const {
        const ifm::Objective obj =
            objective == "max-min" ? ifm::Objective::max_min() : ifm::Objective::max_tau_with_eta_floor(eta_floor);
        const auto spec = dev.spec();
        const ifm::SearchBox box;
        const auto best = ifm::optimize_coupling(dev.rho, dev.a, obj, spec, box);

        std::optional<ifm::Optimum> oracle;
        if (verify) {
            oracle = ifm::brute_force_optimum(dev.rho, dev.a, obj, spec, best.r1_star, best.r2_star,
                                              2.0 * box.coarse_step, box.coarse_step / 10.0, box);
        }

        if (out.json_format()) {
            json config{{"rho", dev.rho}, {"a", dev.a}, {"x_max", dev.x_max}, {"tol", dev.tol}, {"objective", objective}};
            if (obj.kind == ifm::ObjectiveKind::max_tau_st_eta_floor) {
                config["eta_floor"] = eta_floor;
            }
            json results = ifm::report::to_json(best, out.precision);
            if (oracle) {
                results["oracle"] = ifm::report::to_json(*oracle, out.precision);
                results["oracle_gap"] =
                    ifm::report::round_significant(oracle->objective_value - best.objective_value, out.precision);
            }
            out.emit(ifm::report::envelope("optimize", std::move(config), std::move(results)));
            return;
        }
        std::ostringstream s;
        s << "objective " << best.objective_name << "\n"
          << "r1_star   " << out.num(best.r1_star) << "\n"
          << "r2_star   " << out.num(best.r2_star) << "\n"
          << "value     " << out.num(best.objective_value) << "\n";
        if (oracle) {
            s << "oracle    " << out.num(oracle->objective_value) << " at (" << out.num(oracle->r1_star) << ", "
              << out.num(oracle->r2_star) << ")\n"
              << "gap       " << out.num(oracle->objective_value - best.objective_value) << "\n";
        }
        out.emit(s.str());
    }
};

std::vector<std::string> collect_args(int argc, char **argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return args;
}

// Keeps only config entries naming an option of the selected subcommand.
ifm::cli::ConfigEntries relevant_entries(CLI::App &app, const std::vector<std::string> &args,
                                         const ifm::cli::ConfigEntries &entries) {
    CLI::App *sub = nullptr;
    for (const auto &a : args) {
        if (!a.empty() && a[0] != '-') {
            try {
                sub = app.get_subcommand(a);
            } catch (const CLI::OptionNotFound &) {
                sub = nullptr;
            }
            break;
        }
    }
    ifm::cli::ConfigEntries kept;
    for (const auto &entry : entries) {
        const std::string flag = "--" + entry.first;
        if ((sub && sub->get_option_no_throw(flag)) || app.get_option_no_throw(flag)) {
            kept.push_back(entry);
        } else {
            throw ifm::DomainError("config key '" + entry.first + "' is not an option of this command");
        }
    }
    return kept;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Interaction-free object detection with a total-internal-reflection ring resonator"};
    app.require_subcommand(1);
    std::string simd_level;
    app.add_option("--simd", simd_level, "force the kernel level: scalar or avx2");
    app.add_option("--config", "flat key=value file with default flag values");

    EfficiencyCommand efficiency;
    SweepCommand sweep;
    SchemesCommand schemes;
    SimulateCommand simulate;
    EstimateGrayCommand estimate;
    OptimizeCommand optimize;
    efficiency.attach(app);
    sweep.attach(app);
    schemes.attach(app);
    simulate.attach(app);
    estimate.attach(app);
    optimize.attach(app);

    app.parse_complete_callback([&] {
        if (!simd_level.empty()) {
            const auto level = ifm::simd::parse_level(simd_level);
            if (!level) {
                throw ifm::DomainError("unknown SIMD level '" + simd_level + "'");
            }
            ifm::simd::set_level(*level);
        }
    });

    try {
        std::vector<std::string> args = collect_args(argc, argv);
        if (const auto path = ifm::cli::take_config_path(args)) {
            ifm::cli::ConfigEntries entries;
            try {
                entries = ifm::cli::load_config(*path);
            } catch (const std::ios_base::failure &e) {
                throw IoError(e.what());
            }
            args = ifm::cli::merge_config(std::move(args), relevant_entries(app, args, entries));
        }
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    } catch (const ifm::DomainError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const ifm::cli::ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const ifm::QuadratureError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kQuadrature;
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const ifm::NonIdentifiableError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNonIdentifiable;
    } catch (const ifm::InfeasibleError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kOk;
}
