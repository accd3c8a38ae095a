// Copyright 2026 The Solfi Authors
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

#ifndef SOLFI_ERROR_H_
#define SOLFI_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace solfi {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error("syntax error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class EmitError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

// A site that no longer satisfies its operator's condition.
class SiteMismatch : public Error {
 public:
  using Error::Error;
};

// Persisted file with a missing or unsupported schema version, or a
// structurally invalid body.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class UnsupportedType : public Error {
 public:
  using Error::Error;
};

class CompilerUnavailable : public Error {
 public:
  using Error::Error;
};

class ExecutorFault : public Error {
 public:
  using Error::Error;
};

class DeployError : public Error {
 public:
  using Error::Error;
};

class WorkloadMismatch : public Error {
 public:
  using Error::Error;
};

class ScriptError : public Error {
 public:
  using Error::Error;
};

// A malformed trace, including one that violates the rollback invariant
// (failed status with writes).
class TraceError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// An invalid campaign configuration value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace solfi

#endif  // SOLFI_ERROR_H_
