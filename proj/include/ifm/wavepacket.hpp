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

#include <cstddef>
#include <cstdint>
#include <optional>

#include "ifm/device.hpp"

namespace ifm {

/// Numerical settings for the Gaussian wave-packet integrals.
///
/// Integration runs over the dimensionless detuning x = (w - w_res) * coherence
/// time, where the round-trip phase is x / a and the spectral weight |A|^2 is
/// exp(-x^2). The window [-integration_halfwidth, integration_halfwidth]
/// replaces the physical half line; beyond |x| = 4 the weight is below 1e-7.
struct WavePacketSpec {
    /// Optional copy of the device coherence ratio. When set it must equal the
    /// DeviceParams value it is used with.
    std::optional<double> coherence_ratio;
    double integration_halfwidth = 8.0;
    double rel_tolerance = 1e-8;
    /// Multiplies the initial node count; 2 doubles the resolution of the first pass.
    std::size_t node_scale = 1;
    /// Integrand evaluations allowed per integral before a QuadratureError.
    std::size_t max_evaluations = std::size_t{1} << 25;

    /// Throws DomainError on x_max < 4, tolerance outside (0, 1e-3], or node_scale == 0.
    void validate() const;
};

struct PhiResult {
    double value;
    double rel_error;
    std::size_t evaluations;
};

/// Throughput and reflection-suppression efficiencies for a device without an object.
struct EfficiencyReport {
    double eta;
    double tau;
    double phi;
    /// Relative error of phi, and therefore of eta and tau.
    double quadrature_error;
    std::size_t evaluations;

    double reflected_energy_ratio() const noexcept { return 1.0 - eta; }
    double transmitted_energy_ratio() const noexcept { return tau; }
};

/// Energy ratios integrated directly from the monochromatic fractions.
struct EnergyRatios {
    double reflected;    // I_r / I_i
    double transmitted;  // I_t / I_i
    double reflected_abs_error;
    double transmitted_abs_error;
};

/// Number of nodes the first uniform pass uses for these parameters.
std::size_t initial_node_count(const DeviceParams &params, const WavePacketSpec &spec);

/// Gaussian-weighted average of 1/|1 - c e^{i psi}|^2 over the packet
/// spectrum, c being the loop gain. Equals 1 exactly when c == 0.
/// Throws QuadratureError when the node cap is reached first.
PhiResult compute_phi(const DeviceParams &params, const WavePacketSpec &spec);

EfficiencyReport efficiencies(const DeviceParams &params, const WavePacketSpec &spec);

/// Second route to 1 - eta and tau, which integrates
/// monochromatic_reflectance / monochromatic_transmittance against the
/// packet spectrum and divides by the numerically integrated packet energy.
/// Shares no code with the phi factorization beyond the integrator.
EnergyRatios energy_ratios(const DeviceParams &params, const WavePacketSpec &spec);

}  // namespace ifm
