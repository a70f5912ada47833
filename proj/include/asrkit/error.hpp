// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace asrkit {

enum class ErrorCode {
  kInvalidArgument = 1,
  kParse = 2,
  kInsufficientStatistics = 3,
  kOutOfRange = 4,
  kInternal = 5,
};

/// Every failure in the core library is reported as an Error. The code maps
/// one to one onto the status values of the C interface.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A parse failure that carries the 1-based line number of the offending
/// input line (0 when the location is the input as a whole).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorCode::kParse, line == 0 ? message
                                           : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace asrkit
