// Copyright 2026 The weaksym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weaksym {

// Every failure the library reports. The grouping into categories drives the
// CLI exit codes.
enum class ErrorKind {
  // opcore
  NotHermitian,
  NotUnitary,
  DimensionMismatch,
  // symmetry
  ClusterAmbiguity,
  NotCommuting,
  // representation
  AllRatesZero,
  UnitarityViolation,
  HermiticityViolation,
  NotWeaklySymmetric,
  MixesShiftClasses,
  ShiftOnAsymmetricJump,
  // liouville
  NotCertified,
  NegativeTime,
  DegenerateSteadyState,
  // qjmc
  NormIncreased,
  InvalidU,
  ZeroTotalRate,
  ShiftLeavesSpectrum,
  NonUniqueSteadyState,
  InvalidWindow,
  // models
  DimCap,
  NonUniform,
  BoundViolated,
  // cli
  SchemaError,
  InvalidArgument,
};

enum class ErrorCategory { Schema, Certification, Numerical };

std::string_view to_string(ErrorKind kind);
ErrorCategory category(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace weaksym
