// Copyright 2026 The optra Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef OPTRA_ERROR_HPP
#define OPTRA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace optra {

// Numeric values are mirrored by optra_status in optra.h; keep them in sync.
enum class ErrorCode : int {
  kInvalidMatrix = 1,
  kShapeError = 2,
  kInvalidSize = 3,
  kDisconnectedGraph = 4,
  kInvalidEigengap = 5,
  kIndexError = 6,
  kInvalidParameter = 7,
  kDimensionTooSmall = 8,
  kReferenceSolveFailed = 9,
  kParseError = 10,
  kLabelError = 11,
  kStepSizeInfeasible = 12,
  kScheduleExhausted = 13,
  kConfigError = 14,
  kBudgetTooSmall = 15,
  kIoError = 16,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace optra

#endif  // OPTRA_ERROR_HPP
