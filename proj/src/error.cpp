// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#include "optra/error.hpp"

namespace optra {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidMatrix: return "InvalidMatrix";
    case ErrorCode::kShapeError: return "ShapeError";
    case ErrorCode::kInvalidSize: return "InvalidSize";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kInvalidEigengap: return "InvalidEigengap";
    case ErrorCode::kIndexError: return "IndexError";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kDimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::kReferenceSolveFailed: return "ReferenceSolveFailed";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kLabelError: return "LabelError";
    case ErrorCode::kStepSizeInfeasible: return "StepSizeInfeasible";
    case ErrorCode::kScheduleExhausted: return "ScheduleExhausted";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kBudgetTooSmall: return "BudgetTooSmall";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace optra
