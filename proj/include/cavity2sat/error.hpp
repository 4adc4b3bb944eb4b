// Copyright 2026 The cavity2sat Authors
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

#ifndef CAVITY2SAT_ERROR_HPP
#define CAVITY2SAT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cavity2sat {

// Numeric values are shared with the C API status codes.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kParse = 2,
  kComponentTooLarge = 3,
  kOutOfRegime = 4,
  kUnsatisfiable = 5,
  kInfeasibleBoundary = 6,
  kTreeTooLarge = 7,
  kIo = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::kInvalidArgument, what) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::kParse,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ComponentTooLarge : public Error {
 public:
  ComponentTooLarge(std::size_t component, std::size_t size, std::size_t cap)
      : Error(ErrorCode::kComponentTooLarge,
              "ComponentTooLarge: component " + std::to_string(component) +
                  " has " + std::to_string(size) + " variables (cap " +
                  std::to_string(cap) + ")"),
        component_(component),
        size_(size) {}
  std::size_t component() const noexcept { return component_; }
  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t component_;
  std::size_t size_;
};

class OutOfRegime : public Error {
 public:
  explicit OutOfRegime(const std::string& what)
      : Error(ErrorCode::kOutOfRegime, "OutOfRegime: " + what) {}
};

class Unsatisfiable : public Error {
 public:
  Unsatisfiable() : Error(ErrorCode::kUnsatisfiable, "Unsatisfiable formula") {}
};

class InfeasibleBoundary : public Error {
 public:
  InfeasibleBoundary()
      : Error(ErrorCode::kInfeasibleBoundary,
              "InfeasibleBoundary: no satisfying assignment agrees with the "
              "boundary condition") {}
};

class TreeTooLarge : public Error {
 public:
  explicit TreeTooLarge(std::size_t limit)
      : Error(ErrorCode::kTreeTooLarge,
              "TreeTooLarge: sampling exceeded " + std::to_string(limit) +
                  " nodes") {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

}  // namespace cavity2sat

#endif  // CAVITY2SAT_ERROR_HPP
