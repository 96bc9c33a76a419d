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

#include <string_view>

namespace ifm {

/// Where a scheme's numbers come from: a closed form quoted for the scheme,
/// or a dynamics model chosen here because none is given for it.
enum class Provenance { closed_form, model_derived };

std::string_view to_string(Provenance p) noexcept;

/// Outcome probabilities of one interaction-free scheme with the object present.
struct SchemeResult {
    double detect_no_hit_prob;
    double hit_prob;
    double inconclusive_prob;
    /// detect_no_hit / (detect_no_hit + hit): efficiency when inconclusive runs are repeated.
    double long_run_efficiency;
    /// Probability of the no-object signature when the object is absent.
    double no_object_signature_prob;
    Provenance provenance;
};

/// Polarization-rotation (Zeno) scheme: N passes, each rotating by alpha.
class ZenoParams {
   public:
    /// N = round(pi / (2 alpha)).
    explicit ZenoParams(double alpha);
    ZenoParams(double alpha, unsigned n_cycles);

    double alpha() const noexcept { return alpha_; }
    unsigned n_cycles() const noexcept { return n_cycles_; }

   private:
    double alpha_;
    unsigned n_cycles_;
};

/// Mach-Zehnder scheme with matched splitters of intensity reflectivity R and
/// the object in the transmitted arm of the first splitter.
SchemeResult elitzur_vaidman(double beam_splitter_reflectivity);

/// With the object each pass survives with the Malus probability cos^2(alpha).
/// Without it the polarization ends at angle N*alpha, reported as sin^2(N alpha).
SchemeResult zeno_scheme(const ZenoParams &params);

/// Coupled-cavity scheme, modeled as a two-level rotation by pi/(2N) per
/// cycle. Flagged model_derived.
SchemeResult two_cavity_scheme(unsigned n_cycles);

/// The resonator with an opaque object: D_r with R1, hit with R2(1-R1),
/// D_t with (1-R1)(1-R2). D_t firing is the inconclusive outcome here.
/// `no_object_throughput` is tau of the same device, the probability that D_t
/// signals absence.
SchemeResult resonator_opaque_object(double r1, double r2, double no_object_throughput);

}  // namespace ifm
