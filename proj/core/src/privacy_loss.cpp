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

#include "privcalc/privacy_loss.hpp"

#include <sstream>

namespace privcalc {

std::string_view to_string(MeasureKind kind) {
  return kind == MeasureKind::kPureDP ? "pure_dp" : "approx_dp";
}

std::string PrivacyLoss::to_string() const {
  std::ostringstream out;
  out.precision(17);
  if (kind == MeasureKind::kPureDP) {
    out << "eps=" << epsilon;
  } else {
    out << "eps=" << epsilon << " delta=" << delta;
  }
  return out.str();
}

}  // namespace privcalc
