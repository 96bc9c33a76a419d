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

#include "ifm/schemes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ifm/error.hpp"

namespace ifm {

namespace {

double long_run(double detect, double hit) {
    const double informative = detect + hit;
    return informative > 0.0 ? detect / informative : 0.0;
}

// Object present: each of the N cycles survives with probability cos^2(angle).
double survival(double angle, unsigned n_cycles) {
    const double c = std::cos(angle);
    return std::pow(c * c, static_cast<double>(n_cycles));
}

}  // namespace

std::string_view to_string(Provenance p) noexcept {
    return p == Provenance::closed_form ? "closed_form" : "model_derived";
}

ZenoParams::ZenoParams(double alpha) : ZenoParams(alpha, 1) {
    const double n = std::round(std::numbers::pi / (2.0 * alpha));
    if (n < 1.0 || n > 4.0e9) {
        throw DomainError("rotation angle gives an unrepresentable cycle count");
    }
    n_cycles_ = static_cast<unsigned>(n);
}

ZenoParams::ZenoParams(double alpha, unsigned n_cycles) : alpha_(alpha), n_cycles_(n_cycles) {
    if (!(alpha > 0.0 && alpha <= std::numbers::pi / 2.0)) {
        throw DomainError("rotation angle must lie in (0, pi/2], got " + std::to_string(alpha));
    }
    if (n_cycles == 0) {
        throw DomainError("cycle count must be positive");
    }
}

SchemeResult elitzur_vaidman(double r) {
    if (!(r > 0.0 && r < 1.0)) {
        throw DomainError("beam splitter reflectivity must lie in (0, 1), got " + std::to_string(r));
    }
    const double detect = r * (1.0 - r);
    const double hit = 1.0 - r;
    return SchemeResult{detect, hit, r * r, long_run(detect, hit), 1.0, Provenance::closed_form};
}

SchemeResult zeno_scheme(const ZenoParams &params) {
    const double pass = survival(params.alpha(), params.n_cycles());
    const double hit = 1.0 - pass;
    const double s = std::sin(params.alpha() * params.n_cycles());
    return SchemeResult{pass, hit, 0.0, long_run(pass, hit), s * s, Provenance::closed_form};
}

SchemeResult two_cavity_scheme(unsigned n_cycles) {
    if (n_cycles == 0) {
        throw DomainError("cycle count must be positive");
    }
    const double step = std::numbers::pi / (2.0 * n_cycles);
    const double stay = survival(step, n_cycles);
    const double hit = 1.0 - stay;
    const double s = std::sin(step * n_cycles);
    return SchemeResult{stay, hit, 0.0, long_run(stay, hit), s * s, Provenance::model_derived};
}

SchemeResult resonator_opaque_object(double r1, double r2, double no_object_throughput) {
    if (!(r1 > 0.0 && r1 < 1.0) || !(r2 > 0.0 && r2 < 1.0)) {
        throw DomainError("coupling reflectivities must lie in (0, 1)");
    }
    const double detect = r1;
    const double hit = r2 * (1.0 - r1);
    const double exit = (1.0 - r1) * (1.0 - r2);
    return SchemeResult{detect, hit, exit, long_run(detect, hit), no_object_throughput, Provenance::closed_form};
}

}  // namespace ifm
