// Copyright 2026 The resmatch Authors
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

#ifndef RESMATCH_ERROR_HPP_
#define RESMATCH_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace resmatch {

// Malformed or inconsistent input: parse errors, dangling references,
// duplicate ids, score ties, negative capacities. Carries the source
// position when one is known (line 0 means "no position").
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& message)
      : std::runtime_error(message) {}
  InputError(std::string source, std::size_t line, std::string field,
             const std::string& message);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string source_;
  std::size_t line_ = 0;
  std::string field_;
};

// A call made outside an operation's domain, e.g. asking for the restricted
// merit order of a category that is not reserved.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& message)
      : std::invalid_argument(message) {}
};

}  // namespace resmatch

#endif  // RESMATCH_ERROR_HPP_
