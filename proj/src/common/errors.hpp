// Copyright 2026 The Agentopic Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace agentopic {

// Stable error categories. The C API maps these one-to-one onto agt_status.
enum class ErrorCode {
  kInvalidArgument = 1,
  kIo = 2,
  kNotFound = 3,
  kMalformed = 4,
  kDuplicateId = 5,
  kEmpty = 6,
  kDimensionMismatch = 7,
  kZeroVector = 8,
  kTransport = 9,
  kRateLimited = 10,
  kFixtureMiss = 11,
  kUnparseableReply = 12,
  kInvalidHierarchy = 13,
  kStructuralViolation = 14,
  kEvaluation = 15,
  kInternal = 99,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& m) : Error(ErrorCode::kInvalidArgument, m) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& m) : Error(ErrorCode::kIo, m) {}
};

class FileNotFound : public Error {
 public:
  explicit FileNotFound(const std::string& path)
      : Error(ErrorCode::kNotFound, "file not found: " + path), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// A record in an input file could not be parsed. `line` is 1-based.
class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t line, const std::string& reason)
      : Error(ErrorCode::kMalformed,
              "malformed record at line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error(ErrorCode::kMalformed,
              "parse error at line " + std::to_string(line) + ": " + reason),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateId : public Error {
 public:
  explicit DuplicateId(const std::string& id)
      : Error(ErrorCode::kDuplicateId, "duplicate id: " + id), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class EmptyInput : public Error {
 public:
  explicit EmptyInput(const std::string& m) : Error(ErrorCode::kEmpty, m) {}
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error(ErrorCode::kDimensionMismatch,
              "dimension mismatch: expected " + std::to_string(expected) + ", got " +
                  std::to_string(actual)) {}
};

class ZeroVector : public Error {
 public:
  ZeroVector() : Error(ErrorCode::kZeroVector, "cosine of an all-zero vector") {}
};

class CorruptStore : public Error {
 public:
  explicit CorruptStore(const std::string& reason)
      : Error(ErrorCode::kMalformed, "corrupt store: " + reason) {}
};

// Carries a list of violations (hierarchy invariants, review failures).
class ViolationError : public Error {
 public:
  ViolationError(ErrorCode code, const std::string& what, std::vector<std::string> violations)
      : Error(code, compose(what, violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string compose(const std::string& what, const std::vector<std::string>& v) {
    std::string out = what;
    for (const auto& s : v) out += "\n  " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

class InvalidHierarchy : public ViolationError {
 public:
  explicit InvalidHierarchy(std::vector<std::string> v)
      : ViolationError(ErrorCode::kInvalidHierarchy, "invalid hierarchy:", std::move(v)) {}
};

class StructuralViolation : public ViolationError {
 public:
  StructuralViolation(const std::string& stage, std::vector<std::string> v)
      : ViolationError(ErrorCode::kStructuralViolation,
                       "structural violation in " + stage + ":", std::move(v)) {}
};

class EvaluationError : public Error {
 public:
  explicit EvaluationError(const std::string& m) : Error(ErrorCode::kEvaluation, m) {}
};

}  // namespace agentopic
