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

#ifndef SANGERNET_TRACE_H_
#define SANGERNET_TRACE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "sangernet/linalg.h"

namespace sangernet {

// Precondition and diagnostic flags attached to runs and trajectory rows.
// Violated sufficient conditions are reported, never fatal.
enum RunFlag : std::uint32_t {
  kFlagNone = 0,
  kFlagStepAboveBound = 1u << 0,  // alpha exceeds the step-size bound
  kFlagInitOrthogonal = 1u << 1,  // an init column has q_k^T x_k = 0
  kFlagInitNotUnit = 1u << 2,     // an init column is not unit norm
  kFlagNormBound = 1u << 3,       // a column norm reached sqrt(3)
  kFlagNonFinite = 1u << 4,       // the iterate stopped being finite
};

// ';'-joined flag names, empty for kFlagNone.
std::string flag_names(std::uint32_t flags);

// Estimates of every node at one iteration (a single entry for
// centralized runs).
struct Snapshot {
  std::int64_t iteration = 0;
  std::vector<Matrix> estimates;
};

struct TrajectoryRow {
  std::int64_t iteration = 0;
  double comm_units = 0.0;
  double error = 0.0;
  double consensus_dev = 0.0;
  std::uint32_t flags = kFlagNone;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;

  // True when iterations strictly increase, comm_units never decrease and
  // every error lies in [0, 1].
  bool well_formed() const;
};

}  // namespace sangernet

#endif  // SANGERNET_TRACE_H_
