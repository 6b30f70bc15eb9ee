// Copyright 2026 The privcalc Authors
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

#include "privcalc/error.hpp"

namespace privcalc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIncompatibleMetric:
      return "IncompatibleMetric";
    case ErrorKind::kInvalidPrivacyMap:
      return "InvalidPrivacyMap";
    case ErrorKind::kNegativeDistance:
      return "NegativeDistance";
    case ErrorKind::kDomainMismatch:
      return "DomainMismatch";
    case ErrorKind::kBoundsInverted:
      return "BoundsInverted";
    case ErrorKind::kUnclampedDomain:
      return "UnclampedDomain";
    case ErrorKind::kOverlappingPieces:
      return "OverlappingPieces";
    case ErrorKind::kPartitionNotTotal:
      return "PartitionNotTotal";
    case ErrorKind::kHeterogeneousMeasures:
      return "HeterogeneousMeasures";
    case ErrorKind::kArityMismatch:
      return "ArityMismatch";
    case ErrorKind::kNegativeBudget:
      return "NegativeBudget";
    case ErrorKind::kBudgetExceeded:
      return "BudgetExceeded";
    case ErrorKind::kNonpositiveScale:
      return "NonpositiveScale";
    case ErrorKind::kInvalidProbability:
      return "InvalidProbability";
    case ErrorKind::kNonpositiveEpsilon:
      return "NonpositiveEpsilon";
    case ErrorKind::kTooFewBlocks:
      return "TooFewBlocks";
    case ErrorKind::kInvalidBeta:
      return "InvalidBeta";
    case ErrorKind::kNonpositiveAlpha:
      return "NonpositiveAlpha";
    case ErrorKind::kNotEnumerable:
      return "NotEnumerable";
    case ErrorKind::kInsufficientSamples:
      return "InsufficientSamples";
    case ErrorKind::kInvalidSchema:
      return "InvalidSchema";
    case ErrorKind::kInvalidRecord:
      return "InvalidRecord";
    case ErrorKind::kInvalidArgument:
      return "InvalidArgument";
    case ErrorKind::kPlanInvalid:
      return "PlanInvalid";
    case ErrorKind::kBudgetViolation:
      return "BudgetViolation";
    case ErrorKind::kDataError:
      return "DataError";
  }
  return "UnknownError";
}

}  // namespace privcalc
