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

#ifndef SANGERNET_ERROR_H_
#define SANGERNET_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sangernet {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidSpectrum,
  kInfeasiblePartition,
  kGenerationFailure,
  kDisconnectedGraph,
  kDegenerateSpectrum,
  kDegenerateIterate,
  kUndefinedAngle,
  kStateError,
  kInsufficientData,
  kConfigError,
  kIoError,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported through this exception type. The code
// lets callers (the CLI in particular) map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sangernet

#endif  // SANGERNET_ERROR_H_
