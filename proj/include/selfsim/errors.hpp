// Copyright 2026 The selfsim Authors
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

namespace selfsim {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands built over different recursion tables.
class TableMismatch : public Error {
 public:
  TableMismatch() : Error("elements belong to different recursion tables") {}
};

// A caller-visible precondition was violated (bad depth, epsilon out of range, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Malformed recursion-spec text or word.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A configured resource budget ran out. `completed` carries the last fully
// finished unit of work (a radius for ball enumeration, 0 otherwise).
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, long long completed = -1)
      : Error(what), completed_(completed) {}
  long long completed() const { return completed_; }

 private:
  long long completed_;
};

}  // namespace selfsim
