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

#include "resmatch/category.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "resmatch/error.hpp"

namespace resmatch {

CategoryScheme::CategoryScheme(std::string open,
                               std::vector<std::string> reserved,
                               std::vector<std::string> dereservable) {
  if (open.empty()) throw InputError("category scheme: empty open category");
  names_.push_back(std::move(open));
  for (auto& name : reserved) {
    if (name.empty()) throw InputError("category scheme: empty category name");
    if (name == "GC") {
      throw InputError("category scheme: 'GC' is reserved for the general category");
    }
    if (std::find(names_.begin(), names_.end(), name) != names_.end()) {
      throw InputError("category scheme: duplicate category '" + name + "'");
    }
    reserved_.emplace_back(names_.size());
    names_.push_back(std::move(name));
  }
  if (names_.front() == "GC") {
    throw InputError("category scheme: 'GC' is reserved for the general category");
  }
  dereservable_flag_.assign(names_.size(), false);
  for (const auto& name : dereservable) {
    auto c = find(name);
    if (!c || !is_reserved(*c)) {
      throw InputError("category scheme: de-reservable category '" + name +
                       "' is not reserved");
    }
    if (dereservable_flag_[c->value()]) {
      throw InputError("category scheme: duplicate de-reservable category '" +
                       name + "'");
    }
    dereservable_flag_[c->value()] = true;
  }
  for (CategoryId c : reserved_) {
    if (dereservable_flag_[c.value()]) dereservable_.push_back(c);
  }
}

CategoryScheme CategoryScheme::india() {
  return CategoryScheme("o", {"SC", "ST", "OBC"}, {"OBC"});
}

bool CategoryScheme::is_reserved(CategoryId c) const {
  return c.value() > 0 && c.value() < names_.size();
}

bool CategoryScheme::is_dereservable(CategoryId c) const {
  return c.value() < dereservable_flag_.size() && dereservable_flag_[c.value()];
}

std::optional<CategoryId> CategoryScheme::find(std::string_view name) const {
  for (std::size_t k = 0; k < names_.size(); ++k) {
    if (names_[k] == name) return CategoryId{k};
  }
  return std::nullopt;
}

CapacityVector::CapacityVector(std::initializer_list<int> seats)
    : CapacityVector(std::vector<int>(seats)) {}

CapacityVector::CapacityVector(std::vector<int> seats) : seats_(std::move(seats)) {
  for (int v : seats_) {
    if (v < 0) throw DomainError("capacity vector: negative seat count");
  }
}

void CapacityVector::set(CategoryId c, int seats) {
  if (seats < 0) throw DomainError("capacity vector: negative seat count");
  seats_.at(c.value()) = seats;
}

int CapacityVector::total() const {
  return std::accumulate(seats_.begin(), seats_.end(), 0);
}

void CapacityVector::transfer(CategoryId from, CategoryId to, int seats) {
  if (seats < 0 || seats_.at(from.value()) < seats) {
    throw DomainError("capacity vector: transfer exceeds available seats");
  }
  seats_.at(from.value()) -= seats;
  seats_.at(to.value()) += seats;
}

}  // namespace resmatch
