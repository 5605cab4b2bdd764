// Copyright 2026 The onmfkit Authors.
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

#ifndef ONMF_ERRORS_HPP_
#define ONMF_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace onmf {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// The input matrix is identically zero where a nonzero one is required.
class ZeroMatrixError : public Error {
 public:
  using Error::Error;
};

// A projection or solve is not uniquely defined because the input is
// (numerically) rank deficient.
class RankDeficientError : public Error {
 public:
  using Error::Error;
};

// A clustering problem cannot be posed, e.g. more clusters than points.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class NegativeValueError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace onmf

#endif  // ONMF_ERRORS_HPP_
