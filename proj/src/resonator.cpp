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

#include <cmath>
#include <string>

#include "ifm/error.hpp"

namespace ifm {

namespace {

bool in_open_unit(double v) { return v > 0.0 && v < 1.0; }

void require_finite_phase(double psi) {
    if (!std::isfinite(psi)) {
        throw DomainError("round-trip phase must be finite");
    }
}

}  // namespace

DeviceParams::DeviceParams(double r1, double r2, double rho, double a) : r1_(r1), r2_(r2), rho_(rho), a_(a) {
    if (!in_open_unit(r1)) {
        throw DomainError("r1 must lie in (0, 1), got " + std::to_string(r1));
    }
    if (!in_open_unit(r2)) {
        throw DomainError("r2 must lie in (0, 1), got " + std::to_string(r2));
    }
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw DomainError("rho must lie in [0, 1], got " + std::to_string(rho));
    }
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError("coherence ratio a must be positive and finite, got " + std::to_string(a));
    }
}

double DeviceParams::loop_gain() const noexcept { return rho_ * std::sqrt(r1_ * r2_); }

double airy_denominator(double loop_gain, double psi) {
    const double s = std::sin(0.5 * psi);
    const double d = 1.0 - loop_gain;
    return d * d + 4.0 * loop_gain * s * s;
}

std::complex<double> reflected_amplitude(const DeviceParams &params, double psi) {
    require_finite_phase(psi);
    const double r1 = params.r1();
    const std::complex<double> phase = std::polar(1.0, psi);
    const std::complex<double> first_trip = (1.0 - r1) * params.rho() * std::sqrt(params.r2()) * phase;
    const std::complex<double> ratio = params.loop_gain() * phase;
    return -std::sqrt(r1) + first_trip / (1.0 - ratio);
}

double monochromatic_reflectance(const DeviceParams &params, double psi) {
    require_finite_phase(psi);
    const double rho = params.rho();
    const double numerator = (1.0 - params.r1()) * (1.0 - rho * rho * params.r2());
    return 1.0 - numerator / airy_denominator(params.loop_gain(), psi);
}

double monochromatic_transmittance(const DeviceParams &params, double psi) {
    require_finite_phase(psi);
    const double numerator = (1.0 - params.r1()) * (1.0 - params.r2());
    return numerator / airy_denominator(params.loop_gain(), psi);
}

std::complex<double> partial_sum_reflected_amplitude(const DeviceParams &params, double psi, std::size_t n_terms) {
    require_finite_phase(psi);
    if (n_terms == 0) {
        throw DomainError("partial sum needs at least one round trip");
    }
    const double r1 = params.r1();
    const std::complex<double> phase = std::polar(1.0, psi);
    const std::complex<double> ratio = params.loop_gain() * phase;
    std::complex<double> term = (1.0 - r1) * params.rho() * std::sqrt(params.r2()) * phase;
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t k = 0; k < n_terms; ++k) {
        sum += term;
        term *= ratio;
    }
    return -std::sqrt(r1) + sum;
}

double partial_sum_tail_bound(const DeviceParams &params, std::size_t n_terms) {
    const double q = params.loop_gain();
    const double first = (1.0 - params.r1()) * params.rho() * std::sqrt(params.r2());
    return first * std::pow(q, static_cast<double>(n_terms)) / (1.0 - q);
}

SpectralResponse spectral_response(const DeviceParams &params, double psi) {
    return SpectralResponse{
        psi,
        monochromatic_reflectance(params, psi),
        monochromatic_transmittance(params, psi),
        reflected_amplitude(params, psi),
    };
}

}  // namespace ifm
