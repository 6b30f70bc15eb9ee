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

#ifndef PRIVCALC_ERROR_HPP
#define PRIVCALC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace privcalc {

enum class ErrorKind {
  kIncompatibleMetric,
  kInvalidPrivacyMap,
  kNegativeDistance,
  kDomainMismatch,
  kBoundsInverted,
  kUnclampedDomain,
  kOverlappingPieces,
  kPartitionNotTotal,
  kHeterogeneousMeasures,
  kArityMismatch,
  kNegativeBudget,
  kBudgetExceeded,
  kNonpositiveScale,
  kInvalidProbability,
  kNonpositiveEpsilon,
  kTooFewBlocks,
  kInvalidBeta,
  kNonpositiveAlpha,
  kNotEnumerable,
  kInsufficientSamples,
  kInvalidSchema,
  kInvalidRecord,
  kInvalidArgument,
  kPlanInvalid,
  kBudgetViolation,
  kDataError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace privcalc

#endif  // PRIVCALC_ERROR_HPP
