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

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
};

RunResult run(const std::string &args) {
    const std::string cmd = std::string(IFM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return {-1, {}};
    }
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json run_json(const std::string &args) {
    const auto r = run(args + " --format json");
    EXPECT_EQ(r.code, 0) << args;
    return json::parse(r.out);
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class TempDir {
   public:
    TempDir() : path_(fs::temp_directory_path() / ("ifm_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const std::string &name) const { return path_ / name; }

   private:
    fs::path path_;
};

}  // namespace

TEST(CliEfficiency, design_point) {
    const json j = run_json("efficiency --r1 0.98 --r2 0.98 --rho 0.9999 --a 500");
    EXPECT_EQ(j["schema_version"], "1");
    EXPECT_EQ(j["command"], "efficiency");
    EXPECT_TRUE(j["seed"].is_null());
    const double eta = j["results"]["eta"];
    const double tau = j["results"]["tau"];
    EXPECT_GE(eta, 0.98);
    EXPECT_LE(eta, 1.0);
    EXPECT_GE(tau, 0.97);
    EXPECT_LE(tau, 0.99);
    EXPECT_TRUE(j["results"].contains("phi"));
    EXPECT_TRUE(j["results"].contains("quadrature_error"));
}

TEST(CliEfficiency, lossless_identity) {
    const json j = run_json("efficiency --r1 0.5 --r2 0.5 --rho 1 --a 100000 --precision 12");
    EXPECT_NEAR(j["results"]["eta"].get<double>(), j["results"]["tau"].get<double>(), 1e-6);
}

TEST(CliEfficiency, text_output_and_direct_route) {
    const auto r = run("efficiency --direct");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("eta"), std::string::npos);
    EXPECT_NE(r.out.find("0.995193"), std::string::npos);
}

TEST(CliEfficiency, validation_exit_codes) {
    EXPECT_EQ(run("efficiency --r1 1.2").code, 2);
    EXPECT_EQ(run("efficiency --rho -0.1").code, 2);
    EXPECT_EQ(run("efficiency --a 0").code, 2);
    EXPECT_EQ(run("efficiency --r1 abc").code, 2);
    EXPECT_EQ(run("efficiency --bogus 1").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("").code, 2);
}

TEST(CliEfficiency, quadrature_failure_exit_code) {
    EXPECT_EQ(run("efficiency --r1 0.9999 --r2 0.9999 --rho 1 --a 0.01").code, 3);
}

TEST(CliSweep, shape_determinism_and_benchmark_row) {
    TempDir dir;
    const auto first = dir / "a.csv";
    const auto second = dir / "b.csv";
    const std::string args = "sweep --r-min 0.96 --r-max 0.98 --rho-min 0.9998 --rho-max 1 --steps 3 --a 500 --out ";
    ASSERT_EQ(run(args + first.string()).code, 0);
    ASSERT_EQ(run(args + second.string()).code, 0);
    const std::string text = slurp(first);
    EXPECT_EQ(text, slurp(second));
    EXPECT_EQ(text.find('\r'), std::string::npos);

    std::istringstream lines(text);
    std::string line;
    std::vector<std::string> all;
    while (std::getline(lines, line)) {
        all.push_back(line);
    }
    ASSERT_EQ(all.size(), 10u);
    EXPECT_EQ(all[0], "r1,r2,rho,a,eta,tau,phi,quad_err");
    bool found = false;
    for (std::size_t i = 1; i < all.size(); ++i) {
        double v[8];
        ASSERT_EQ(std::sscanf(all[i].c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3], &v[4],
                              &v[5], &v[6], &v[7]),
                  8);
        if (v[0] == 0.98 && v[2] == 0.9999) {
            found = true;
            EXPECT_GE(v[4], 0.98);
            EXPECT_LE(v[4], 1.0);
            EXPECT_GE(v[5], 0.97);
            EXPECT_LE(v[5], 0.99);
        }
    }
    EXPECT_TRUE(found);
}

TEST(CliSweep, unwritable_path_is_io_error) {
    EXPECT_EQ(run("sweep --steps 2 --out /nonexistent-dir/x/sweep.csv").code, 4);
}

TEST(CliSweep, invalid_range_is_validation_error) {
    EXPECT_EQ(run("sweep --r-min 0.99 --r-max 0.9 --steps 3").code, 2);
    EXPECT_EQ(run("sweep --steps 0").code, 2);
}

TEST(CliSchemes, reference_examples) {
    const json ev = run_json("schemes --ev 0.5")["results"]["elitzur_vaidman"];
    EXPECT_EQ(ev["detect_no_hit_prob"], 0.25);
    EXPECT_NEAR(ev["long_run_efficiency"].get<double>(), 1.0 / 3.0, 1e-6);

    const json zeno = run_json("schemes --zeno-alpha-deg 1")["results"];
    EXPECT_NEAR(zeno["zeno"]["hit_prob"].get<double>(), 0.027, 0.005);
    EXPECT_TRUE(zeno.contains("resonator"));

    const json both = run_json("schemes --two-cavity 90 --zeno-alpha-deg 1")["results"];
    EXPECT_EQ(both["two_cavity"]["hit_prob"], both["zeno"]["hit_prob"]);
}

TEST(CliSchemes, requires_a_scheme_and_valid_values) {
    EXPECT_EQ(run("schemes").code, 2);
    EXPECT_EQ(run("schemes --ev 1.5").code, 2);
    EXPECT_EQ(run("schemes --zeno-alpha-deg 0").code, 2);
    EXPECT_EQ(run("schemes --two-cavity 0").code, 2);
}

TEST(CliSimulate, opaque_object_and_determinism) {
    const std::string args = "simulate --object 0 --r1 0.98 --r2 0.98 --trials 1000000 --seed 7";
    const auto a = run(args);
    const auto b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const json j = json::parse(a.out);
    EXPECT_EQ(j["seed"], 7);
    const double n = 1e6;
    const double dr = j["results"]["counts"]["reflected_detector"];
    EXPECT_LE(std::abs(dr - 0.98 * n), 4 * std::sqrt(n * 0.98 * 0.02));
    for (const char *key : {"counts", "frequencies", "analytic_probabilities"}) {
        EXPECT_TRUE(j["results"].contains(key)) << key;
    }
    EXPECT_TRUE(j["config"].contains("trials"));
}

TEST(CliSimulate, perfect_detectors_never_miss) {
    const json j = run_json("simulate --object none --trials 20000 --seed 2 --det-eff 1");
    EXPECT_EQ(j["results"]["counts"]["no_detection"], 0);
}

TEST(CliSimulate, validation) {
    EXPECT_EQ(run("simulate --object 2").code, 2);
    EXPECT_EQ(run("simulate --object maybe").code, 2);
    EXPECT_EQ(run("simulate --det-eff 0").code, 2);
    EXPECT_EQ(run("simulate --trials 0").code, 2);
}

TEST(CliEstimateGray, recovers_from_simulated_reports) {
    TempDir dir;
    const auto opaque = dir / "opaque.json";
    const auto clear = dir / "clear.json";
    ASSERT_EQ(run("simulate --object 0 --trials 100000 --seed 11 --out " + opaque.string()).code, 0);
    ASSERT_EQ(run("simulate --object none --trials 100000 --seed 12 --out " + clear.string()).code, 0);
    EXPECT_LE(run_json("estimate-gray --stats " + opaque.string())["results"]["g_hat"].get<double>(), 0.01);
    EXPECT_GE(run_json("estimate-gray --stats " + clear.string())["results"]["g_hat"].get<double>(), 0.99);
}

TEST(CliEstimateGray, exit_codes) {
    EXPECT_EQ(run("estimate-gray --counts 0,0,0,0,0").code, 2);
    EXPECT_EQ(run("estimate-gray --counts 1,2,3").code, 2);
    EXPECT_EQ(run("estimate-gray").code, 2);
    EXPECT_EQ(run("estimate-gray --stats /nonexistent/stats.json").code, 4);
    EXPECT_EQ(run("estimate-gray --r1 0.9999999999999 --r2 0.5 --counts 1000,0,0,0,0").code, 5);
}

TEST(CliOptimize, symmetric_claim_with_verification) {
    const json j = run_json("optimize --rho 0.9999 --a 500 --objective max-min --verify --precision 10");
    EXPECT_LE(std::abs(j["results"]["r1_star"].get<double>() - j["results"]["r2_star"].get<double>()), 0.005);
    EXPECT_LE(j["results"]["oracle_gap"].get<double>(), 1e-4);
}

TEST(CliOptimize, interior_point_for_lossless_device) {
    const json j = run_json("optimize --rho 1 --a 100000 --objective max-min --precision 10");
    for (const char *key : {"r1_star", "r2_star"}) {
        const double r = j["results"][key];
        EXPECT_GT(r, 0.5);
        EXPECT_LT(r, 0.9999);
    }
}

TEST(CliOptimize, infeasible_floor) {
    EXPECT_EQ(run("optimize --rho 0.5 --objective max-tau --eta-floor 0.99").code, 6);
    EXPECT_EQ(run("optimize --objective max-tau --eta-floor 1.5").code, 2);
}

TEST(CliConfig, file_values_with_command_line_override) {
    TempDir dir;
    const auto cfg = dir / "run.cfg";
    {
        std::ofstream(cfg) << "# benchmark\nr1 = 0.5\nr2 = 0.5\nrho = 1\na = 100000\n";
    }
    const json from_file = run_json("efficiency --config " + cfg.string());
    EXPECT_EQ(from_file["config"]["r1"], 0.5);
    const json overridden = run_json("efficiency --config " + cfg.string() + " --r1 0.98 --r2 0.98");
    EXPECT_EQ(overridden["config"]["r1"], 0.98);
    EXPECT_EQ(overridden["config"]["rho"], 1.0);

    EXPECT_EQ(run("efficiency --config " + (dir / "missing.cfg").string()).code, 4);
    {
        std::ofstream(cfg) << "trials = 5\n";
    }
    EXPECT_EQ(run("efficiency --config " + cfg.string()).code, 2);
}

TEST(CliOutput, precision_flag) {
    const json j = run_json("efficiency --precision 3");
    EXPECT_EQ(j["results"]["eta"], 0.995);
    EXPECT_EQ(run("efficiency --precision 0").code, 2);
}
