// Copyright 2026 The brudno Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace brudno {

using Symbol = std::uint8_t;

// A finite word over the alphabet {0, ..., alphabet_size - 1}.
class SymbolString {
 public:
  explicit SymbolString(unsigned alphabet_size = 2);
  SymbolString(std::vector<Symbol> symbols, unsigned alphabet_size);

  // Digits '0'..'9' only, so alphabets up to 10 symbols.
  static SymbolString parse(std::string_view digits, unsigned alphabet_size = 2);

  unsigned alphabet_size() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }

  void push_back(Symbol s);
  SymbolString prefix(std::size_t n) const;
  std::string to_string() const;

  friend bool operator==(const SymbolString&, const SymbolString&) = default;
  friend auto operator<=>(const SymbolString&, const SymbolString&) = default;

 private:
  std::vector<Symbol> symbols_;
  unsigned alphabet_;
};

// Words of a fixed length n are numbered 0..k^n-1 by reading the word as a
// base-k integer with the first symbol most significant.
std::uint64_t word_code(const SymbolString& s);
SymbolString word_from_code(std::uint64_t code, std::size_t length, unsigned alphabet_size);

// k^n, or throws ResourceLimit when it exceeds `cap`.
std::uint64_t word_count(unsigned alphabet_size, std::size_t length, std::uint64_t cap);

}  // namespace brudno
