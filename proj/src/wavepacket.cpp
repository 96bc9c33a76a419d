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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ifm/error.hpp"
#include "ifm/quadrature.hpp"
#include "ifm/resonator.hpp"
#include "ifm/simd/kernels.hpp"

namespace ifm {

namespace {

void check_inputs(const DeviceParams &params, const WavePacketSpec &spec) {
    spec.validate();
    if (spec.coherence_ratio && *spec.coherence_ratio != params.a()) {
        throw DomainError("wave-packet coherence ratio " + std::to_string(*spec.coherence_ratio) +
                          " disagrees with device coherence ratio " + std::to_string(params.a()));
    }
}

QuadratureOptions options_for(const DeviceParams &params, const WavePacketSpec &spec) {
    QuadratureOptions opt;
    opt.rel_tolerance = spec.rel_tolerance;
    opt.initial_nodes = initial_node_count(params, spec);
    opt.max_evaluations = spec.max_evaluations;
    return opt;
}

[[noreturn]] void fail(const char *what, const QuadratureResult &r) {
    throw QuadratureError(std::string(what) + ": tolerance not met within the node cap (achieved relative error " +
                              std::to_string(r.rel_error()) + ")",
                          r.rel_error());
}

}  // namespace

void WavePacketSpec::validate() const {
    if (!(integration_halfwidth >= 4.0) || !std::isfinite(integration_halfwidth)) {
        throw DomainError("integration half-width must be finite and >= 4");
    }
    if (!(rel_tolerance > 0.0 && rel_tolerance <= 1e-3)) {
        throw DomainError("relative tolerance must lie in (0, 1e-3]");
    }
    if (max_evaluations == 0) {
        throw DomainError("evaluation cap must be positive");
    }
    if (node_scale == 0) {
        throw DomainError("node scale must be positive");
    }
    if (coherence_ratio && !(*coherence_ratio > 0.0)) {
        throw DomainError("coherence ratio must be positive");
    }
}

std::size_t initial_node_count(const DeviceParams &params, const WavePacketSpec &spec) {
    const double linewidth = params.a() * (1.0 - params.loop_gain());
    const double resolve = std::max(1.0, 3.0 / linewidth);
    const double nodes = std::ceil(20.0 * spec.integration_halfwidth * resolve);
    const double capped = std::min(nodes, 1e8);
    return std::max<std::size_t>(2001, static_cast<std::size_t>(capped)) * spec.node_scale;
}

PhiResult compute_phi(const DeviceParams &params, const WavePacketSpec &spec) {
    check_inputs(params, spec);
    const double c = params.loop_gain();
    if (c == 0.0) {
        return PhiResult{1.0, 0.0, 0};
    }
    const double phase_scale = 1.0 / params.a();
    const BatchIntegrand integrand = [phase_scale, c](std::span<const double> x, std::span<double> out) {
        simd::gaussian_airy(x, phase_scale, c, out);
    };
    const double half = spec.integration_halfwidth;
    const QuadratureResult num = integrate_simpson(integrand, -half, half, options_for(params, spec));
    if (!num.converged) {
        fail("phi integral", num);
    }
    // Packet energy over the same window, in closed form.
    const double energy = std::sqrt(std::numbers::pi) * std::erf(half);
    return PhiResult{num.value / energy, num.rel_error(), num.evaluations};
}

EfficiencyReport efficiencies(const DeviceParams &params, const WavePacketSpec &spec) {
    const PhiResult phi = compute_phi(params, spec);
    const double rho = params.rho();
    const double coupling = 1.0 - params.r1();
    return EfficiencyReport{
        coupling * (1.0 - rho * rho * params.r2()) * phi.value,
        coupling * (1.0 - params.r2()) * phi.value,
        phi.value,
        phi.rel_error,
        phi.evaluations,
    };
}

EnergyRatios energy_ratios(const DeviceParams &params, const WavePacketSpec &spec) {
    check_inputs(params, spec);
    const double a = params.a();
    const double half = spec.integration_halfwidth;
    QuadratureOptions opt = options_for(params, spec);

    const BatchIntegrand incident = [](std::span<const double> x, std::span<double> out) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            out[i] = std::exp(-x[i] * x[i]);
        }
    };
    const QuadratureResult i_i = integrate_simpson(incident, -half, half, opt);
    if (!i_i.converged) {
        fail("incident energy", i_i);
    }

    const BatchIntegrand reflected = [&params, a](std::span<const double> x, std::span<double> out) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            out[i] = std::exp(-x[i] * x[i]) * monochromatic_reflectance(params, x[i] / a);
        }
    };
    const BatchIntegrand transmitted = [&params, a](std::span<const double> x, std::span<double> out) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            out[i] = std::exp(-x[i] * x[i]) * monochromatic_transmittance(params, x[i] / a);
        }
    };

    // The reflectance is a difference of O(1) terms; its rounding is relative to the packet energy.
    opt.rounding_scale = i_i.value;
    const QuadratureResult i_r = integrate_simpson(reflected, -half, half, opt);
    if (!i_r.converged) {
        fail("reflected energy", i_r);
    }
    opt.rounding_scale = 0.0;
    const QuadratureResult i_t = integrate_simpson(transmitted, -half, half, opt);
    if (!i_t.converged) {
        fail("transmitted energy", i_t);
    }

    const double r = i_r.value / i_i.value;
    const double t = i_t.value / i_i.value;
    const double incident_rel = i_i.rel_error();
    return EnergyRatios{
        r,
        t,
        i_r.abs_error / i_i.value + std::abs(r) * incident_rel,
        i_t.abs_error / i_i.value + std::abs(t) * incident_rel,
    };
}

}  // namespace ifm
