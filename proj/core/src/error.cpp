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

#include "resmatch/error.hpp"

#include <sstream>
#include <utility>

namespace resmatch {
namespace {

std::string format_position(const std::string& source, std::size_t line,
                            const std::string& field,
                            const std::string& message) {
  std::ostringstream out;
  out << source;
  if (line > 0) out << ':' << line;
  out << ": ";
  if (!field.empty()) out << "field '" << field << "': ";
  out << message;
  return out.str();
}

}  // namespace

InputError::InputError(std::string source, std::size_t line, std::string field,
                       const std::string& message)
    : std::runtime_error(format_position(source, line, field, message)),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)) {}

}  // namespace resmatch
