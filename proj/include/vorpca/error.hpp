// Copyright 2026 The vorpca Authors
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

namespace vorpca {

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on a parameter or on the shape of an input was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The exact subset enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string what, double subsets, double budget)
      : Error(std::move(what)), subsets_(subsets), budget_(budget) {}
  double subsets() const { return subsets_; }
  double budget() const { return budget_; }

 private:
  double subsets_;
  double budget_;
};

/// The farthest inlier sits on the subspace, so the relative gap is undefined.
class DegenerateGap : public Error {
 public:
  DegenerateGap(std::string what, double d1, double d2)
      : Error(std::move(what)), d1_(d1), d2_(d2) {}
  double d1() const { return d1_; }
  double d2() const { return d2_; }

 private:
  double d1_;
  double d2_;
};

/// Malformed text input. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace vorpca
