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

namespace ifm {

/// Design point of the four-prism ring resonator.
///
/// `r1` and `r2` are the intensity reflectivities of the input and output
/// coupling gaps. `rho` is the amplitude survival per round trip from the two
/// total reflections plus absorption and scatter; the two total reflectivities
/// only ever enter as their product, so they are not stored separately.
/// `a` is the coherence time measured in round-trip times.
///
/// rho == 0 is admitted: it is the opaque-object limit where no round trip
/// survives.
class DeviceParams {
   public:
    DeviceParams(double r1, double r2, double rho, double a = 500.0);

    double r1() const noexcept { return r1_; }
    double r2() const noexcept { return r2_; }
    double rho() const noexcept { return rho_; }
    double a() const noexcept { return a_; }

    /// Round-trip amplitude gain rho*sqrt(r1*r2) of the recirculating field.
    double loop_gain() const noexcept;

    /// Same device with a different loss factor. Used for the gray-object model.
    DeviceParams with_rho(double rho) const { return DeviceParams(r1_, r2_, rho, a_); }

    bool operator==(const DeviceParams &) const = default;

   private:
    double r1_;
    double r2_;
    double rho_;
    double a_;
};

}  // namespace ifm
