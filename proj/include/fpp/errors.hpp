// Copyright 2026 The fpp Authors
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

#include <stdexcept>
#include <string>

namespace fpp {

// Argument outside the mathematical domain of an operation (bad word, bad n).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string &what) : std::invalid_argument(what) {}
};

class RangeError : public std::out_of_range {
 public:
  explicit RangeError(const std::string &what) : std::out_of_range(what) {}
};

// Requested combination is valid in principle but deliberately not supported.
class UnsupportedError : public std::logic_error {
 public:
  explicit UnsupportedError(const std::string &what) : std::logic_error(what) {}
};

// A circuit references wires or control states that do not fit together.
class StructuralError : public std::logic_error {
 public:
  explicit StructuralError(const std::string &what) : std::logic_error(what) {}
};

class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string &what)
      : std::logic_error(what) {}
};

}  // namespace fpp
