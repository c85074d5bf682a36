// include/nvaug/errors.h

// Copyright 2026  The nvaug Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nvaug {

enum class ErrorKind {
  kEmptyInput,
  kDimensionMismatch,
  kZeroNorm,
  kParseError,
  kSchemaError,
  kInvariantViolation,
  kMissingTier,
  kNoCandidates,
  kInvalidTemperature,
  kInvalidK,
  kEmptySegments,
  kFrameIndexOutOfRange,
  kNoNVSpan,
  kPlanMismatch,
  kMalformedMaskLayout,
  kMalformedDelayLayout,
  kLabelMismatch,
  kUnknownLabel,
  kOutOfRangeLocation,
  kNoPairs,
  kNoNeutralData,
  kIo,
  kConfig,
};

std::string_view ErrorKindName(ErrorKind kind);

// Process exit code for an error kind: 1 I/O, 2 data/validation, 3 config.
int ExitCodeFor(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + what),
        kind_(kind),
        detail_(what) {}

  ErrorKind kind() const { return kind_; }
  // Message without the kind prefix.
  const std::string &detail() const { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace nvaug
