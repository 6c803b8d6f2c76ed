// SPDX-License-Identifier: Apache-2.0
//
// starris: STAR-RIS channel modelling and outage analysis
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "starris/error.hpp"

namespace starris {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::PassivityViolation: return "PASSIVITY_VIOLATION";
    case ErrorCode::DegenerateImpedance: return "DEGENERATE_IMPEDANCE";
    case ErrorCode::LengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::PartitionMismatch: return "PARTITION_MISMATCH";
    case ErrorCode::NonPositiveDistance: return "NON_POSITIVE_DISTANCE";
    case ErrorCode::TooCloseToSurface: return "TOO_CLOSE_TO_SURFACE";
    case ErrorCode::EmptyRegion: return "EMPTY_REGION";
    case ErrorCode::InsufficientPoints: return "INSUFFICIENT_POINTS";
    case ErrorCode::ZeroProbability: return "ZERO_PROBABILITY";
    case ErrorCode::ResolutionTooCoarse: return "RESOLUTION_TOO_COARSE";
    case ErrorCode::Schema: return "SCHEMA";
    case ErrorCode::Io: return "IO";
  }
  return "UNKNOWN";
}

}  // namespace starris
