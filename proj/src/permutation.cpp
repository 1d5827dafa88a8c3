// Copyright 2026 The qapland Authors
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

#include "qapland/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qapland {

void CheckProblemSize(int n) {
  if (n < kMinSize) {
    throw std::invalid_argument("problem size n=" + std::to_string(n) +
                                " is below the minimum of " +
                                std::to_string(kMinSize));
  }
}

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  const int n = size();
  CheckProblemSize(n);
  std::vector<bool> seen(mapping_.size(), false);
  for (int v : mapping_) {
    if (v < 0 || v >= n) {
      throw std::invalid_argument("permutation entry " + std::to_string(v) +
                                  " out of range for n=" + std::to_string(n));
    }
    if (seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("not a bijection: " + std::to_string(v) +
                                  " appears more than once");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::Identity(int n) {
  CheckProblemSize(n);
  std::vector<int> m(static_cast<std::size_t>(n));
  std::iota(m.begin(), m.end(), 0);
  return Permutation(std::move(m), Unchecked{});
}

Permutation Permutation::Swapped(int u, int v) const {
  const int n = size();
  if (u < 0 || u >= n || v < 0 || v >= n) {
    throw std::out_of_range("swap index out of range");
  }
  if (u == v) throw std::invalid_argument("swap requires u != v");
  std::vector<int> m = mapping_;
  std::swap(m[static_cast<std::size_t>(u)], m[static_cast<std::size_t>(v)]);
  return Permutation(std::move(m), Unchecked{});
}

std::string Permutation::ToString() const {
  std::string out;
  for (std::size_t i = 0; i < mapping_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(mapping_[i]);
  }
  return out;
}

bool PermutationCursor::NextLexicographic() {
  return std::next_permutation(current_.mapping_.begin(), current_.mapping_.end());
}

std::vector<Permutation> Neighbors(const Permutation& x) {
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(NeighborhoodSize(x.size())));
  ForEachNeighbor(x, [&](const Permutation& y) { out.push_back(y); });
  return out;
}

Permutation ParsePermutation(const std::string& text) {
  std::vector<int> m;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view tok(text.data() + pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw std::invalid_argument("malformed permutation entry '" +
                                  std::string(tok) + "'");
    }
    m.push_back(v);
    pos = comma + 1;
  }
  return Permutation(std::move(m));
}

std::uint64_t Factorial(int n) {
  if (n < 0 || n > 20) throw std::overflow_error("factorial out of 64-bit range");
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

std::uint64_t LexicographicRank(const Permutation& x) {
  const int n = x.size();
  std::uint64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    // Lehmer digit: later entries smaller than x[i].
    std::uint64_t smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += x[j] < x[i] ? 1 : 0;
    rank = rank * static_cast<std::uint64_t>(n - i) + smaller;
  }
  return rank;
}

std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("UniformBelow: empty range");
  // Largest multiple of bound representable; reject the tail.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v > limit);
  return v % bound;
}

Permutation RandomPermutation(int n, std::mt19937_64& rng) {
  PermutationCursor cursor(Permutation::Identity(n));
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(UniformBelow(rng, static_cast<std::uint64_t>(i) + 1));
    if (j != i) cursor.SwapInPlace(i, j);
  }
  return cursor.get();
}

}  // namespace qapland
