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

#include <stdexcept>
#include <string>

namespace ifm {

/// A value outside its admissible range (reflectivity, phase, trial count...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature hit its node cap before meeting the requested tolerance.
class QuadratureError : public std::runtime_error {
   public:
    QuadratureError(const std::string &what, double achieved_rel_error)
        : std::runtime_error(what), achieved_rel_error_(achieved_rel_error) {}

    double achieved_rel_error() const noexcept { return achieved_rel_error_; }

   private:
    double achieved_rel_error_;
};

/// The trial likelihood does not depend on the object grayness for these device parameters.
struct NonIdentifiableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No point of the search box satisfies the optimization constraint.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ifm
