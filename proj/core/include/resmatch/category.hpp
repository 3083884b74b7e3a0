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

#ifndef RESMATCH_CATEGORY_HPP_
#define RESMATCH_CATEGORY_HPP_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace resmatch {

// Dense index into one of the market's tables. The tag keeps applicant,
// institution and category indices from being mixed up.
template <typename Tag>
class Index {
 public:
  constexpr Index() = default;
  constexpr explicit Index(std::size_t value) : value_(value) {}

  constexpr std::size_t value() const { return value_; }

  friend constexpr auto operator<=>(Index, Index) = default;

 private:
  std::size_t value_ = 0;
};

using CategoryId = Index<struct CategoryTag>;

// The position categories of a market. Exactly one category is open; every
// other category is reserved, and a subset of the reserved categories is
// de-reservable (their vacancies revert to open).
class CategoryScheme {
 public:
  // Category order is `open` followed by `reserved` in the given order.
  // Throws InputError on duplicate names, an empty open name, or a
  // de-reservable category that is not reserved.
  CategoryScheme(std::string open, std::vector<std::string> reserved,
                 std::vector<std::string> dereservable);

  // o, SC, ST, OBC with OBC de-reservable.
  static CategoryScheme india();

  std::size_t size() const { return names_.size(); }
  CategoryId open() const { return CategoryId{0}; }
  bool is_open(CategoryId c) const { return c == open(); }
  bool is_reserved(CategoryId c) const;
  bool is_dereservable(CategoryId c) const;

  // Reserved categories in processing order.
  std::span<const CategoryId> reserved() const { return reserved_; }
  std::span<const CategoryId> dereservable() const { return dereservable_; }

  const std::string& name(CategoryId c) const { return names_.at(c.value()); }
  std::optional<CategoryId> find(std::string_view name) const;

  bool operator==(const CategoryScheme&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<CategoryId> reserved_;
  std::vector<CategoryId> dereservable_;
  std::vector<bool> dereservable_flag_;
};

// Seats per category at one institution.
class CapacityVector {
 public:
  CapacityVector() = default;
  explicit CapacityVector(std::size_t categories) : seats_(categories, 0) {}
  // Throws DomainError on a negative entry.
  CapacityVector(std::initializer_list<int> seats);
  explicit CapacityVector(std::vector<int> seats);

  std::size_t size() const { return seats_.size(); }
  int operator[](CategoryId c) const { return seats_.at(c.value()); }
  // Throws DomainError if `seats` is negative.
  void set(CategoryId c, int seats);
  int total() const;

  // Moves `seats` positions from category `from` into category `to`; the
  // total is unchanged. Throws DomainError if `from` has fewer seats.
  void transfer(CategoryId from, CategoryId to, int seats);

  std::span<const int> values() const { return seats_; }

  bool operator==(const CapacityVector&) const = default;

 private:
  std::vector<int> seats_;
};

}  // namespace resmatch

#endif  // RESMATCH_CATEGORY_HPP_
