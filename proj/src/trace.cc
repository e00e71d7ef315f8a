// Copyright 2026 The sangernet Authors
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

#include "sangernet/trace.h"

#include <array>
#include <string_view>
#include <utility>

namespace sangernet {

std::string flag_names(std::uint32_t flags) {
  static constexpr std::array<std::pair<RunFlag, std::string_view>, 5> kNames = {{
      {kFlagStepAboveBound, "step_above_bound"},
      {kFlagInitOrthogonal, "init_orthogonal"},
      {kFlagInitNotUnit, "init_not_unit"},
      {kFlagNormBound, "norm_bound"},
      {kFlagNonFinite, "non_finite"},
  }};
  std::string out;
  for (const auto& [flag, name] : kNames) {
    if (flags & flag) {
      if (!out.empty()) out += ';';
      out += name;
    }
  }
  return out;
}

bool Trajectory::well_formed() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (!(r.error >= 0.0 && r.error <= 1.0)) return false;
    if (i == 0) continue;
    if (r.iteration <= rows[i - 1].iteration) return false;
    if (r.comm_units < rows[i - 1].comm_units) return false;
  }
  return true;
}

}  // namespace sangernet
