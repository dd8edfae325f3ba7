/*
 * Copyright 2026 The pcong Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PCONG_ERROR_HPP
#define PCONG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pcong {

enum class ErrorCode {
  InvalidArgument = 1,
  Schema = 2,
  NonConvergence = 3,
  Configuration = 4,
  Io = 5,
  Internal = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Distribution or model parameters violate their invariants.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorCode::InvalidArgument, what) {}
};

/// A model combination that cannot be evaluated (e.g. grid step wider than the
/// conditional support, a segment shorter than half the intent support).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::Configuration, what) {}
};

/// Scenario file does not follow the schema. `path()` names the offending field,
/// e.g. "sectors[3].capacity".
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(ErrorCode::Schema, path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

/// Adaptive integration ran out of subdivisions. Carries the best estimate.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(double value, double error_estimate)
      : Error(ErrorCode::NonConvergence, "quadrature did not converge within max_subdivisions"),
        value_(value),
        error_(error_estimate) {}

  double value() const noexcept { return value_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double value_;
  double error_;
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorCode::Internal, what) {}
};

}  // namespace pcong

#endif  // PCONG_ERROR_HPP
