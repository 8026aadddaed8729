// Copyright 2026 The hetdp Authors
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

#ifndef HETDP_ERROR_HPP_
#define HETDP_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hetdp {

// Failure classes surfaced by the library. The CLI maps these onto exit
// codes: ParseError -> 2, NonConvergence -> 10, everything else -> 3.
enum class ErrorKind {
  DuplicateVertex,
  SelfLoop,
  DuplicateEdge,
  NegativeEpsilon,
  NonPositiveEpsilon,
  Disconnected,
  UnknownVertex,
  ProbabilityOutOfRange,
  ZeroAlpha,
  EmptySeeds,
  BoundaryNotCovered,
  GraphTooLarge,
  EvenDimension,
  UnknownOverrideEdge,
  LengthMismatch,
  IncompleteQuery,
  IncompleteMechanism,
  ParseError,
  NonConvergence,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateVertex: return "DuplicateVertex";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::NegativeEpsilon: return "NegativeEpsilon";
    case ErrorKind::NonPositiveEpsilon: return "NonPositiveEpsilon";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorKind::ZeroAlpha: return "ZeroAlpha";
    case ErrorKind::EmptySeeds: return "EmptySeeds";
    case ErrorKind::BoundaryNotCovered: return "BoundaryNotCovered";
    case ErrorKind::GraphTooLarge: return "GraphTooLarge";
    case ErrorKind::EvenDimension: return "EvenDimension";
    case ErrorKind::UnknownOverrideEdge: return "UnknownOverrideEdge";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::IncompleteQuery: return "IncompleteQuery";
    case ErrorKind::IncompleteMechanism: return "IncompleteMechanism";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NonConvergence: return "NonConvergence";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hetdp

#endif  // HETDP_ERROR_HPP_
