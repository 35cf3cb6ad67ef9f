// Copyright 2026 The Authors.
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

#ifndef PROBING_ELEMENT_SET_H_
#define PROBING_ELEMENT_SET_H_

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace probing {

// Ground sets are dense ids 0..n-1 with n <= kMaxElements.
inline constexpr int kMaxElements = 64;

// A subset of the ground set stored as a 64-bit mask.
class ElementSet {
 public:
  class Iterator {
   public:
    explicit constexpr Iterator(uint64_t rest) : rest_(rest) {}
    int operator*() const { return std::countr_zero(rest_); }
    Iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    bool operator==(const Iterator& o) const { return rest_ == o.rest_; }

   private:
    uint64_t rest_;
  };

  constexpr ElementSet() = default;
  constexpr explicit ElementSet(uint64_t bits) : bits_(bits) {}

  static constexpr ElementSet Full(int n) {
    return ElementSet(n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1);
  }
  static constexpr ElementSet Single(int e) {
    return ElementSet(uint64_t{1} << e);
  }
  static ElementSet Of(const std::vector<int>& elements) {
    ElementSet s;
    for (int e : elements) s.Insert(e);
    return s;
  }

  constexpr bool Contains(int e) const { return (bits_ >> e) & 1; }
  constexpr void Insert(int e) { bits_ |= uint64_t{1} << e; }
  constexpr void Erase(int e) { bits_ &= ~(uint64_t{1} << e); }
  constexpr ElementSet With(int e) const {
    return ElementSet(bits_ | (uint64_t{1} << e));
  }
  constexpr ElementSet Without(int e) const {
    return ElementSet(bits_ & ~(uint64_t{1} << e));
  }
  constexpr int Size() const { return std::popcount(bits_); }
  constexpr bool Empty() const { return bits_ == 0; }
  constexpr uint64_t bits() const { return bits_; }
  constexpr bool SubsetOf(ElementSet o) const {
    return (bits_ & ~o.bits_) == 0;
  }

  constexpr ElementSet operator|(ElementSet o) const {
    return ElementSet(bits_ | o.bits_);
  }
  constexpr ElementSet operator&(ElementSet o) const {
    return ElementSet(bits_ & o.bits_);
  }
  constexpr ElementSet operator-(ElementSet o) const {
    return ElementSet(bits_ & ~o.bits_);
  }
  constexpr bool operator==(const ElementSet&) const = default;
  constexpr auto operator<=>(const ElementSet&) const = default;

  Iterator begin() const { return Iterator(bits_); }
  Iterator end() const { return Iterator(0); }

  std::vector<int> ToVector() const {
    std::vector<int> out;
    out.reserve(Size());
    for (int e : *this) out.push_back(e);
    return out;
  }

  // "{0,3,5}"
  std::string ToString() const {
    std::string out = "{";
    bool first = true;
    for (int e : *this) {
      if (!first) out += ",";
      out += std::to_string(e);
      first = false;
    }
    return out + "}";
  }

 private:
  uint64_t bits_ = 0;
};

}  // namespace probing

#endif  // PROBING_ELEMENT_SET_H_
