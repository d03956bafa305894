// Copyright 2026 The urysohn Authors
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

namespace urysohn {

/// Base of every error thrown by the library.  `kind()` is a stable
/// identifier (e.g. "TriangleViolation") used by the CLI and tests.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what) : std::runtime_error(what), kind_(std::move(kind)) {}
  [[nodiscard]] const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t size, std::size_t cap)
      : Error("CapExceeded", "instance size " + std::to_string(size) + " exceeds cap " + std::to_string(cap)),
        size_(size), cap_(cap) {}
  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] std::size_t cap() const { return cap_; }

 private:
  std::size_t size_, cap_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& msg)
      : Error("SyntaxError", msg + " (at " + std::to_string(position) + ")"), position_(position) {}
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace urysohn
