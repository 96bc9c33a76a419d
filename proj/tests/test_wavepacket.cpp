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

#include "ifm/wavepacket.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ifm/error.hpp"

using ifm::DeviceParams;
using ifm::WavePacketSpec;

namespace {

// Independent oracle: uniform trapezoid rule on the textbook cosine form,
// normalized by the trapezoid integral of the weight on the same nodes.
double trapezoid_phi(const DeviceParams &p, double x_max = 8.0, std::size_t nodes = 1'000'000) {
    const double c = p.rho() * std::sqrt(p.r1() * p.r2());
    const double h = 2.0 * x_max / static_cast<double>(nodes - 1);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
        const double x = -x_max + h * static_cast<double>(i);
        const double w = std::exp(-x * x) * ((i == 0 || i + 1 == nodes) ? 0.5 : 1.0);
        num += w / (1.0 - 2.0 * c * std::cos(x / p.a()) + c * c);
        den += w;
    }
    return num / den;
}

double asymptote(const DeviceParams &p) {
    const double c = p.loop_gain();
    return 1.0 / ((1.0 - c) * (1.0 - c));
}

}  // namespace

TEST(WavePacketSpec, validation) {
    WavePacketSpec s;
    EXPECT_NO_THROW(s.validate());
    s.integration_halfwidth = 3.9;
    EXPECT_THROW(s.validate(), ifm::DomainError);
    s = {};
    s.rel_tolerance = 2e-3;
    EXPECT_THROW(s.validate(), ifm::DomainError);
    s.rel_tolerance = 0.0;
    EXPECT_THROW(s.validate(), ifm::DomainError);
    s = {};
    s.node_scale = 0;
    EXPECT_THROW(s.validate(), ifm::DomainError);
}

TEST(WavePacketSpec, coherence_ratio_must_match_device) {
    WavePacketSpec s;
    s.coherence_ratio = 500.0;
    EXPECT_NO_THROW(ifm::compute_phi(DeviceParams(0.9, 0.9, 1.0, 500.0), s));
    EXPECT_THROW(ifm::compute_phi(DeviceParams(0.9, 0.9, 1.0, 400.0), s), ifm::DomainError);
}

TEST(ComputePhi, zero_loop_gain_is_exactly_one) {
    const auto r = ifm::compute_phi(DeviceParams(0.98, 0.98, 0.0), {});
    EXPECT_EQ(r.value, 1.0);
    EXPECT_EQ(r.rel_error, 0.0);
}

TEST(ComputePhi, matches_high_precision_reference) {
    // 30-digit adaptive Gauss-Legendre values of the same windowed integral.
    struct Case {
        double r1, r2, rho, a, phi;
    };
    const Case cases[] = {
        {0.98, 0.98, 0.9999, 500.0, 2463.8380321846152},
        {0.5, 0.5, 1.0, 500.0, 3.9999840001999958},
        {0.9, 0.8, 0.999, 50.0, 42.792396175580635},
        {0.98, 0.98, 0.9999, 5000.0, 2475.5588070401186},
        {0.99, 0.99, 1.0, 20.0, 2879.5111644844169},
    };
    for (const auto &c : cases) {
        const auto r = ifm::compute_phi(DeviceParams(c.r1, c.r2, c.rho, c.a), {});
        EXPECT_NEAR(r.value, c.phi, 1e-8 * c.phi) << c.r1 << " " << c.a;
        EXPECT_LE(std::abs(r.value - c.phi) / c.phi, r.rel_error + 1e-13);
    }
}

TEST(ComputePhi, agrees_with_dense_trapezoid_and_grows_with_a) {
    const DeviceParams p500(0.98, 0.98, 0.9999, 500.0);
    const DeviceParams p5000(0.98, 0.98, 0.9999, 5000.0);
    const double oracle500 = trapezoid_phi(p500);
    const double oracle5000 = trapezoid_phi(p5000);
    EXPECT_LT(oracle500, oracle5000);
    const double phi500 = ifm::compute_phi(p500, {}).value;
    const double phi5000 = ifm::compute_phi(p5000, {}).value;
    EXPECT_NEAR(phi500, oracle500, 1e-7 * oracle500);
    EXPECT_NEAR(phi5000, oracle5000, 1e-7 * oracle5000);
    EXPECT_LT(phi500, phi5000);
}

TEST(ComputePhi, asymptote_at_large_coherence_ratio) {
    for (const double r : {0.5, 0.9, 0.98}) {
        for (const double rho : {1.0, 0.9999}) {
            const DeviceParams p(r, r, rho, 1e5);
            const double phi = ifm::compute_phi(p, {}).value;
            EXPECT_LE(std::abs(phi - asymptote(p)) / phi, 1e-3) << r << " " << rho;
        }
    }
    EXPECT_NEAR(asymptote(DeviceParams(0.98, 0.98, 0.9999, 1e5)), 2475.6, 0.1);
}

TEST(ComputePhi, monotone_in_coherence_ratio) {
    for (const double r : {0.6, 0.9, 0.98, 0.995}) {
        for (const double rho : {0.999, 0.9999, 1.0}) {
            double previous = 0.0;
            for (const double a : {50.0, 200.0, 500.0, 5000.0, 1e5}) {
                const double phi = ifm::compute_phi(DeviceParams(r, r, rho, a), {}).value;
                EXPECT_GE(phi, previous) << r << " " << rho << " " << a;
                previous = phi;
            }
        }
    }
}

TEST(ComputePhi, at_least_one_when_window_spans_under_half_period) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.01, 0.999);
    for (int i = 0; i < 50; ++i) {
        const double a = std::uniform_real_distribution<double>(8.0 / std::numbers::pi, 1e4)(rng);
        const DeviceParams p(unit(rng), unit(rng), unit(rng), a);
        EXPECT_GE(ifm::compute_phi(p, {}).value, 1.0);
    }
}

TEST(ComputePhi, node_cap_raises_quadrature_error) {
    WavePacketSpec s;
    s.max_evaluations = 1000;
    try {
        ifm::compute_phi(DeviceParams(0.9999, 0.9999, 1.0, 1.0), s);
        FAIL() << "expected QuadratureError";
    } catch (const ifm::QuadratureError &e) {
        EXPECT_GT(e.achieved_rel_error(), 0.0);
    }
}

TEST(Efficiencies, design_point) {
    const auto e = ifm::efficiencies(DeviceParams(0.98, 0.98, 0.9999, 500.0), {});
    EXPECT_NEAR(e.eta, 0.99, 0.01);
    EXPECT_NEAR(e.tau, 0.98, 0.01);
    // Same point from the 30-digit reference.
    EXPECT_NEAR(e.eta, 0.99519297504775433, 1e-8);
    EXPECT_NEAR(e.tau, 0.98553521287384788, 1e-8);
}

TEST(Efficiencies, lossless_gives_equal_eta_and_tau) {
    for (const double a : {20.0, 500.0, 1e5}) {
        const auto e = ifm::efficiencies(DeviceParams(0.7, 0.95, 1.0, a), {});
        EXPECT_EQ(e.eta, e.tau);
    }
}

TEST(Efficiencies, symmetric_lossless_long_coherence_transmits_everything) {
    const auto e = ifm::efficiencies(DeviceParams(0.5, 0.5, 1.0, 1e5), {});
    EXPECT_NEAR(e.eta, 1.0, 1e-6);
    EXPECT_NEAR(e.tau, 1.0, 1e-6);
}

TEST(Efficiencies, tau_never_exceeds_eta) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> unit(0.01, 0.999);
    std::uniform_real_distribution<double> log_a(1.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const double rho = unit(rng);
        const auto e = ifm::efficiencies(DeviceParams(unit(rng), unit(rng), rho, std::pow(10.0, log_a(rng))), {});
        EXPECT_LT(e.tau, e.eta);
        EXPECT_GE(e.tau, 0.0);
        EXPECT_LE(e.eta, 1.0 + 1e-12);
    }
}

TEST(Efficiencies, doubling_nodes_stays_within_reported_error) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> r(0.5, 0.999);
    std::uniform_real_distribution<double> rho(0.99, 1.0);
    std::uniform_real_distribution<double> log_a(1.0, 5.0);
    for (int i = 0; i < 30; ++i) {
        const DeviceParams p(r(rng), r(rng), rho(rng), std::pow(10.0, log_a(rng)));
        WavePacketSpec doubled;
        doubled.node_scale = 2;
        const auto base = ifm::efficiencies(p, {});
        const auto fine = ifm::efficiencies(p, doubled);
        EXPECT_LE(std::abs(base.eta - fine.eta), base.eta * base.quadrature_error);
        EXPECT_LE(std::abs(base.tau - fine.tau), base.tau * base.quadrature_error);
    }
}

TEST(EnergyRatios, lossless_sum_to_one) {
    for (const auto &p : {DeviceParams(0.5, 0.5, 1.0, 500.0), DeviceParams(0.98, 0.9, 1.0, 50.0),
                          DeviceParams(0.99, 0.99, 1.0, 20.0)}) {
        const auto r = ifm::energy_ratios(p, {});
        EXPECT_NEAR(r.reflected + r.transmitted, 1.0, 2.0 * (r.reflected_abs_error + r.transmitted_abs_error));
    }
}

TEST(EnergyRatios, design_point) {
    const auto r = ifm::energy_ratios(DeviceParams(0.98, 0.98, 0.9999, 500.0), {});
    EXPECT_NEAR(r.reflected, 0.01, 0.01);
    EXPECT_NEAR(r.reflected, 1.0 - 0.99519297504775433, 1e-8);
}

TEST(EnergyRatios, direct_route_agrees_with_factorized_route) {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> r(0.05, 0.999);
    std::uniform_real_distribution<double> rho(0.9, 1.0);
    std::uniform_real_distribution<double> log_a(1.0, 5.0);
    for (int i = 0; i < 40; ++i) {
        const DeviceParams p(r(rng), r(rng), rho(rng), std::pow(10.0, log_a(rng)));
        const auto eff = ifm::efficiencies(p, {});
        const auto direct = ifm::energy_ratios(p, {});
        const double eta_err = eff.eta * eff.quadrature_error;
        const double tau_err = eff.tau * eff.quadrature_error;
        EXPECT_LE(std::abs((1.0 - eff.eta) - direct.reflected), 2.0 * (eta_err + direct.reflected_abs_error));
        EXPECT_LE(std::abs(eff.tau - direct.transmitted), 2.0 * (tau_err + direct.transmitted_abs_error));
    }
}
