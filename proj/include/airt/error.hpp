// Copyright 2026 The airt-cpp Authors
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

#ifndef AIRT_ERROR_HPP_
#define AIRT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace airt {

// Base class for every error raised by the library. `module()` names the
// pipeline stage that failed ("ingest", "crm", ...) so the CLI can report it.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }
  virtual const char* kind() const noexcept { return "error"; }

 private:
  std::string module_;
};

#define AIRT_DEFINE_ERROR(Name, tag)                           \
  class Name : public Error {                                  \
   public:                                                     \
    using Error::Error;                                        \
    const char* kind() const noexcept override { return tag; } \
  }

AIRT_DEFINE_ERROR(LoadError, "load");
AIRT_DEFINE_ERROR(FormatError, "format");
AIRT_DEFINE_ERROR(ConsistencyError, "consistency");
AIRT_DEFINE_ERROR(DomainError, "domain");
AIRT_DEFINE_ERROR(DegenerateError, "degenerate");
AIRT_DEFINE_ERROR(FitError, "fit");
AIRT_DEFINE_ERROR(ConfigError, "config");
AIRT_DEFINE_ERROR(LookupError, "lookup");
AIRT_DEFINE_ERROR(SplineError, "spline");

#undef AIRT_DEFINE_ERROR

// Parse failure at a known position in an input file.
class ParseError : public Error {
 public:
  ParseError(std::string module, const std::string& what, long line,
             long column = -1)
      : Error(std::move(module), what), line_(line), column_(column) {}

  long line() const noexcept { return line_; }
  long column() const noexcept { return column_; }
  const char* kind() const noexcept override { return "parse"; }

 private:
  long line_;
  long column_;
};

// A constant-performance algorithm: its response column has zero variance.
class DegenerateItemError : public Error {
 public:
  DegenerateItemError(std::string module, std::string algorithm, int index)
      : Error(std::move(module),
              "algorithm '" + algorithm + "' has constant performance"),
        algorithm_(std::move(algorithm)),
        index_(index) {}

  const std::string& algorithm() const noexcept { return algorithm_; }
  int index() const noexcept { return index_; }
  const char* kind() const noexcept override { return "degenerate"; }

 private:
  std::string algorithm_;
  int index_;
};

// Raised when the log-likelihood stops being finite during EM.
class NumericalError : public Error {
 public:
  NumericalError(std::string module, const std::string& what, int cycle)
      : Error(std::move(module), what), cycle_(cycle) {}

  int cycle() const noexcept { return cycle_; }
  const char* kind() const noexcept override { return "numerical"; }

 private:
  int cycle_;
};

}  // namespace airt

#endif  // AIRT_ERROR_HPP_
