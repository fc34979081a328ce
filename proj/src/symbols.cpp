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

#include "brudno/symbols.hpp"

#include <fmt/core.h>

#include "brudno/error.hpp"

namespace brudno {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::ResourceLimit: return "resource-limit";
    case ErrorKind::PositivityViolation: return "positivity-violation";
    case ErrorKind::InvalidState: return "invalid-state";
    case ErrorKind::InvalidFamily: return "invalid-family";
    case ErrorKind::InvalidSequence: return "invalid-sequence";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::DegenerateTypicality: return "degenerate-typicality";
  }
  return "unknown";
}

SymbolString::SymbolString(unsigned alphabet_size) : alphabet_(alphabet_size) {
  if (alphabet_size < 2 || alphabet_size > 256)
    throw Error(ErrorKind::InvalidInput, fmt::format("alphabet size {} outside [2, 256]", alphabet_size));
}

SymbolString::SymbolString(std::vector<Symbol> symbols, unsigned alphabet_size)
    : SymbolString(alphabet_size) {
  for (Symbol s : symbols)
    if (s >= alphabet_size)
      throw Error(ErrorKind::InvalidInput, fmt::format("symbol {} not below alphabet size {}", s, alphabet_size));
  symbols_ = std::move(symbols);
}

SymbolString SymbolString::parse(std::string_view digits, unsigned alphabet_size) {
  std::vector<Symbol> out;
  out.reserve(digits.size());
  for (char c : digits) {
    if (c < '0' || c > '9') throw Error(ErrorKind::InvalidInput, fmt::format("'{}' is not a digit", c));
    out.push_back(static_cast<Symbol>(c - '0'));
  }
  return SymbolString(std::move(out), alphabet_size);
}

void SymbolString::push_back(Symbol s) {
  if (s >= alphabet_) throw Error(ErrorKind::InvalidInput, "symbol outside alphabet");
  symbols_.push_back(s);
}

SymbolString SymbolString::prefix(std::size_t n) const {
  SymbolString out(alphabet_);
  out.symbols_.assign(symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(std::min(n, size())));
  return out;
}

std::string SymbolString::to_string() const {
  std::string out;
  out.reserve(size());
  for (Symbol s : symbols_) out.push_back(s < 10 ? static_cast<char>('0' + s) : '?');
  return out;
}

std::uint64_t word_code(const SymbolString& s) {
  std::uint64_t code = 0;
  for (Symbol c : s.symbols()) code = code * s.alphabet_size() + c;
  return code;
}

SymbolString word_from_code(std::uint64_t code, std::size_t length, unsigned alphabet_size) {
  std::vector<Symbol> out(length);
  for (std::size_t i = length; i-- > 0;) {
    out[i] = static_cast<Symbol>(code % alphabet_size);
    code /= alphabet_size;
  }
  return SymbolString(std::move(out), alphabet_size);
}

std::uint64_t word_count(unsigned alphabet_size, std::size_t length, std::uint64_t cap) {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (count > cap / alphabet_size)
      throw Error(ErrorKind::ResourceLimit,
                  fmt::format("{}^{} words exceed the enumeration cap {}", alphabet_size, length, cap));
    count *= alphabet_size;
  }
  if (count > cap)
    throw Error(ErrorKind::ResourceLimit,
                fmt::format("{}^{} words exceed the enumeration cap {}", alphabet_size, length, cap));
  return count;
}

}  // namespace brudno
