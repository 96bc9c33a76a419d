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

#include "ifm/resonator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ifm/error.hpp"

using ifm::DeviceParams;

namespace {

constexpr double kPi = std::numbers::pi;

// Draws valid devices; rho in (0, 1] unless `lossless`.
struct DeviceDraw {
    std::mt19937_64 rng;
    explicit DeviceDraw(std::uint64_t seed) : rng(seed) {}

    double unit() { return std::uniform_real_distribution<double>(1e-6, 1.0 - 1e-6)(rng); }
    double phase() { return std::uniform_real_distribution<double>(0.0, 2.0 * kPi)(rng); }

    DeviceParams device(bool lossless) {
        const double rho = lossless ? 1.0 : std::uniform_real_distribution<double>(0.5, 1.0 - 1e-9)(rng);
        return DeviceParams(unit(), unit(), rho, 500.0);
    }
};

}  // namespace

TEST(DeviceParams, rejects_out_of_range_values) {
    EXPECT_THROW(DeviceParams(0.0, 0.5, 1.0), ifm::DomainError);
    EXPECT_THROW(DeviceParams(1.0, 0.5, 1.0), ifm::DomainError);
    EXPECT_THROW(DeviceParams(0.5, 1.2, 1.0), ifm::DomainError);
    EXPECT_THROW(DeviceParams(0.5, 0.5, 1.0001), ifm::DomainError);
    EXPECT_THROW(DeviceParams(0.5, 0.5, -0.1), ifm::DomainError);
    EXPECT_THROW(DeviceParams(0.5, 0.5, 1.0, 0.0), ifm::DomainError);
    EXPECT_THROW(DeviceParams(0.5, 0.5, 1.0, std::nan("")), ifm::DomainError);
    EXPECT_NO_THROW(DeviceParams(0.5, 0.5, 0.0));
}

TEST(ReflectedAmplitude, symmetric_lossless_resonance_is_dark) {
    const DeviceParams p(0.5, 0.5, 1.0);
    EXPECT_NEAR(std::abs(ifm::reflected_amplitude(p, 0.0)), 0.0, 1e-15);
}

TEST(ReflectedAmplitude, antiresonance) {
    const DeviceParams p(0.5, 0.5, 1.0);
    EXPECT_NEAR(std::norm(ifm::reflected_amplitude(p, kPi)), 8.0 / 9.0, 1e-14);
}

TEST(ReflectedAmplitude, non_finite_phase_is_a_domain_error) {
    const DeviceParams p(0.5, 0.5, 1.0);
    EXPECT_THROW(ifm::reflected_amplitude(p, std::nan("")), ifm::DomainError);
    EXPECT_THROW(ifm::reflected_amplitude(p, INFINITY), ifm::DomainError);
    EXPECT_THROW(ifm::monochromatic_reflectance(p, INFINITY), ifm::DomainError);
}

TEST(Reflectance, examples) {
    EXPECT_NEAR(ifm::monochromatic_reflectance(DeviceParams(0.5, 0.5, 1.0), 0.0), 0.0, 1e-15);
    EXPECT_NEAR(ifm::monochromatic_reflectance(DeviceParams(0.5, 0.5, 1.0), kPi), 8.0 / 9.0, 1e-15);
    for (const double psi : {0.0, 0.3, 2.0, -5.0}) {
        EXPECT_NEAR(ifm::monochromatic_reflectance(DeviceParams(0.98, 0.98, 0.0), psi), 0.98, 1e-15);
    }
}

TEST(Transmittance, examples) {
    EXPECT_NEAR(ifm::monochromatic_transmittance(DeviceParams(0.5, 0.5, 1.0), 0.0), 1.0, 1e-15);
    EXPECT_NEAR(ifm::monochromatic_transmittance(DeviceParams(0.5, 0.5, 1.0), kPi), 1.0 / 9.0, 1e-15);
    EXPECT_NEAR(ifm::monochromatic_transmittance(DeviceParams(0.98, 0.98, 0.0), 0.0), 0.0004, 1e-15);
}

TEST(PartialSum, single_round_trip) {
    const DeviceParams p(0.5, 0.5, 1.0);
    const auto v = ifm::partial_sum_reflected_amplitude(p, 0.0, 1);
    EXPECT_NEAR(v.real(), -std::sqrt(0.5) + 0.5 * std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(v.real(), -0.35355339059327373, 1e-15);
    EXPECT_NEAR(v.imag(), 0.0, 1e-15);
    EXPECT_THROW(ifm::partial_sum_reflected_amplitude(p, 0.0, 0), ifm::DomainError);
}

TEST(PartialSum, converges_within_tail_bound) {
    const DeviceParams p(0.9, 0.7, 0.99);
    const auto closed = ifm::reflected_amplitude(p, 0.4);
    for (const std::size_t n : {1u, 5u, 20u, 100u}) {
        const auto partial = ifm::partial_sum_reflected_amplitude(p, 0.4, n);
        EXPECT_LE(std::abs(closed - partial), ifm::partial_sum_tail_bound(p, n) * (1 + 1e-9) + 1e-15) << n;
    }
}

TEST(PartialSum, design_point_2000_terms) {
    const DeviceParams p(0.98, 0.98, 0.9999);
    EXPECT_LT(ifm::partial_sum_tail_bound(p, 2000), 1e-15);
    for (const double psi : {0.0, 0.01, 1.0, kPi}) {
        EXPECT_LT(std::abs(ifm::reflected_amplitude(p, psi) - ifm::partial_sum_reflected_amplitude(p, psi, 2000)),
                  1e-10);
    }
}

TEST(ResonatorProperties, energy_conservation_when_lossless) {
    DeviceDraw draw(11);
    for (int i = 0; i < 1000; ++i) {
        const DeviceParams p = draw.device(true);
        const double psi = draw.phase();
        EXPECT_NEAR(ifm::monochromatic_reflectance(p, psi) + ifm::monochromatic_transmittance(p, psi), 1.0, 1e-12);
    }
}

TEST(ResonatorProperties, strictly_lossy_when_rho_below_one) {
    DeviceDraw draw(12);
    for (int i = 0; i < 1000; ++i) {
        const DeviceParams p = draw.device(false);
        const double psi = draw.phase();
        EXPECT_LT(ifm::monochromatic_reflectance(p, psi) + ifm::monochromatic_transmittance(p, psi), 1.0);
    }
}

TEST(ResonatorProperties, reflect_fraction_is_amplitude_modulus_squared) {
    DeviceDraw draw(13);
    for (int i = 0; i < 1000; ++i) {
        const DeviceParams p = draw.device(false);
        const auto r = ifm::spectral_response(p, draw.phase());
        EXPECT_NEAR(r.reflect_fraction, std::norm(r.reflected_amplitude_factor), 1e-12);
        EXPECT_GE(r.reflect_fraction, -1e-15);
        EXPECT_LE(r.transmit_fraction, 1.0);
    }
}

TEST(ResonatorProperties, periodic_in_phase) {
    DeviceDraw draw(14);
    for (int i = 0; i < 500; ++i) {
        const DeviceParams p = draw.device(false);
        const double psi = draw.phase();
        EXPECT_NEAR(ifm::monochromatic_reflectance(p, psi), ifm::monochromatic_reflectance(p, psi + 2 * kPi), 1e-12);
        EXPECT_NEAR(ifm::monochromatic_transmittance(p, psi), ifm::monochromatic_transmittance(p, psi + 2 * kPi),
                    1e-12);
    }
}

TEST(ResonatorProperties, transmission_peaks_on_resonance) {
    DeviceDraw draw(15);
    for (int i = 0; i < 200; ++i) {
        const DeviceParams p = draw.device(false);
        const double peak = ifm::monochromatic_transmittance(p, 0.0);
        for (int k = 1; k <= 100; ++k) {
            const double psi = -kPi + 2 * kPi * k / 101.0;
            EXPECT_LE(ifm::monochromatic_transmittance(p, psi), peak);
        }
    }
}

TEST(ResonatorProperties, closed_form_matches_partial_sum) {
    DeviceDraw draw(16);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const DeviceParams p = draw.device(false);
        const double psi = draw.phase();
        std::size_t n = 1;
        while (ifm::partial_sum_tail_bound(p, n) >= 1e-12) {
            n *= 2;
        }
        EXPECT_LT(std::abs(ifm::reflected_amplitude(p, psi) - ifm::partial_sum_reflected_amplitude(p, psi, n)), 1e-10);
        ++checked;
    }
    EXPECT_EQ(checked, 1000);
}

TEST(ResonatorProperties, opaque_object_reduction) {
    DeviceDraw draw(17);
    for (int i = 0; i < 200; ++i) {
        const double r1 = draw.unit();
        const double r2 = draw.unit();
        const DeviceParams p(r1, r2, 0.0);
        const double psi = draw.phase();
        const double refl = ifm::monochromatic_reflectance(p, psi);
        const double trans = ifm::monochromatic_transmittance(p, psi);
        EXPECT_NEAR(refl, r1, 1e-15);
        EXPECT_NEAR(1.0 - refl - trans, r2 * (1 - r1), 1e-15);
        EXPECT_NEAR(trans, (1 - r1) * (1 - r2), 1e-15);
    }
}
