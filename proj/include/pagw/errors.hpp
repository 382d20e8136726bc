// Copyright 2026 The pagw Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PAGW_ERRORS_HPP_
#define PAGW_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace pagw {

// Bad argument value (negative rate, alpha outside (1,2), size mismatch...).
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// Vertex index outside [0, n).
class IndexError : public std::out_of_range {
 public:
  explicit IndexError(const std::string& what) : std::out_of_range(what) {}
};

// Exact subset enumeration requested above the configured vertex cap.
class CapExceeded : public std::invalid_argument {
 public:
  explicit CapExceeded(const std::string& what) : std::invalid_argument(what) {}
};

// Not enough usable points for a regression or a test.
class InsufficientData : public std::runtime_error {
 public:
  explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file or configuration.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pagw

#endif  // PAGW_ERRORS_HPP_
