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

#include <complex>
#include <cstddef>

#include "ifm/device.hpp"

namespace ifm {

/// Monochromatic response of the resonator at one round-trip phase.
struct SpectralResponse {
    double psi;
    double reflect_fraction;
    double transmit_fraction;
    std::complex<double> reflected_amplitude_factor;
};

/// B/A: the direct reflection -sqrt(R1) plus the closed-form sum of all
/// recirculated round trips. Throws DomainError for non-finite psi.
std::complex<double> reflected_amplitude(const DeviceParams &params, double psi);

/// |B|^2/|A|^2.
double monochromatic_reflectance(const DeviceParams &params, double psi);

/// |C|^2/|A|^2.
double monochromatic_transmittance(const DeviceParams &params, double psi);

/// Explicit truncated geometric series for B/A with `n_terms` round trips.
/// Independent of the closed form; kept as its oracle.
std::complex<double> partial_sum_reflected_amplitude(const DeviceParams &params, double psi, std::size_t n_terms);

/// Bound on |closed form - partial sum| after `n_terms` round trips.
double partial_sum_tail_bound(const DeviceParams &params, std::size_t n_terms);

SpectralResponse spectral_response(const DeviceParams &params, double psi);

/// Shared Airy denominator 1 - 2c cos(psi) + c^2 with c the loop gain,
/// evaluated as (1-c)^2 + 4c sin^2(psi/2) to keep precision near resonance.
double airy_denominator(double loop_gain, double psi);

}  // namespace ifm
