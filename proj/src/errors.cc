// src/errors.cc

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

#include "nvaug/errors.h"

namespace nvaug {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kZeroNorm: return "ZeroNorm";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kSchemaError: return "SchemaError";
    case ErrorKind::kInvariantViolation: return "InvariantViolation";
    case ErrorKind::kMissingTier: return "MissingTier";
    case ErrorKind::kNoCandidates: return "NoCandidates";
    case ErrorKind::kInvalidTemperature: return "InvalidTemperature";
    case ErrorKind::kInvalidK: return "InvalidK";
    case ErrorKind::kEmptySegments: return "EmptySegments";
    case ErrorKind::kFrameIndexOutOfRange: return "FrameIndexOutOfRange";
    case ErrorKind::kNoNVSpan: return "NoNVSpan";
    case ErrorKind::kPlanMismatch: return "PlanMismatch";
    case ErrorKind::kMalformedMaskLayout: return "MalformedMaskLayout";
    case ErrorKind::kMalformedDelayLayout: return "MalformedDelayLayout";
    case ErrorKind::kLabelMismatch: return "LabelMismatch";
    case ErrorKind::kUnknownLabel: return "UnknownLabel";
    case ErrorKind::kOutOfRangeLocation: return "OutOfRangeLocation";
    case ErrorKind::kNoPairs: return "NoPairs";
    case ErrorKind::kNoNeutralData: return "NoNeutralData";
    case ErrorKind::kIo: return "IoError";
    case ErrorKind::kConfig: return "ConfigError";
  }
  return "Unknown";
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo:
      return 1;
    case ErrorKind::kConfig:
    case ErrorKind::kInvalidK:
    case ErrorKind::kInvalidTemperature:
      return 3;
    default:
      return 2;
  }
}

}  // namespace nvaug
