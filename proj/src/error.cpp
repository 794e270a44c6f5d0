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

#include "weaksym/error.hpp"

namespace weaksym {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ClusterAmbiguity: return "ClusterAmbiguity";
    case ErrorKind::NotCommuting: return "NotCommuting";
    case ErrorKind::AllRatesZero: return "AllRatesZero";
    case ErrorKind::UnitarityViolation: return "UnitarityViolation";
    case ErrorKind::HermiticityViolation: return "HermiticityViolation";
    case ErrorKind::NotWeaklySymmetric: return "NotWeaklySymmetric";
    case ErrorKind::MixesShiftClasses: return "MixesShiftClasses";
    case ErrorKind::ShiftOnAsymmetricJump: return "ShiftOnAsymmetricJump";
    case ErrorKind::NotCertified: return "NotCertified";
    case ErrorKind::NegativeTime: return "NegativeTime";
    case ErrorKind::DegenerateSteadyState: return "DegenerateSteadyState";
    case ErrorKind::NormIncreased: return "NormIncreased";
    case ErrorKind::InvalidU: return "InvalidU";
    case ErrorKind::ZeroTotalRate: return "ZeroTotalRate";
    case ErrorKind::ShiftLeavesSpectrum: return "ShiftLeavesSpectrum";
    case ErrorKind::NonUniqueSteadyState: return "NonUniqueSteadyState";
    case ErrorKind::InvalidWindow: return "InvalidWindow";
    case ErrorKind::DimCap: return "DimCap";
    case ErrorKind::NonUniform: return "NonUniform";
    case ErrorKind::BoundViolated: return "BoundViolated";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

ErrorCategory category(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SchemaError:
    case ErrorKind::InvalidArgument:
      return ErrorCategory::Schema;
    case ErrorKind::NotWeaklySymmetric:
    case ErrorKind::NotCertified:
    case ErrorKind::UnitarityViolation:
    case ErrorKind::HermiticityViolation:
    case ErrorKind::MixesShiftClasses:
    case ErrorKind::ShiftOnAsymmetricJump:
    case ErrorKind::ShiftLeavesSpectrum:
    case ErrorKind::NotCommuting:
    case ErrorKind::NonUniform:
    case ErrorKind::BoundViolated:
      return ErrorCategory::Certification;
    default:
      return ErrorCategory::Numerical;
  }
}

}  // namespace weaksym
