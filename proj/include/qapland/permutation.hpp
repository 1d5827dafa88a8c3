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

#ifndef QAPLAND_PERMUTATION_HPP_
#define QAPLAND_PERMUTATION_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qapland {

// Smallest problem size accepted anywhere in the library.
inline constexpr int kMinSize = 3;

// Throws std::invalid_argument when n < kMinSize.
void CheckProblemSize(int n);

// A point of the search space S_n. mapping()[i] is the location assigned to
// facility i. Indices are 0-based; the usual textbook notation x(1..n) maps to
// x[0..n-1].
class Permutation {
 public:
  // Validates that `mapping` is a bijection on {0..n-1} with n >= kMinSize.
  explicit Permutation(std::vector<int> mapping);

  static Permutation Identity(int n);

  int size() const { return static_cast<int>(mapping_.size()); }
  int operator[](int i) const { return mapping_[static_cast<std::size_t>(i)]; }
  std::span<const int> mapping() const { return mapping_; }

  // Returns y with y(u) = x(v), y(v) = x(u). Requires u != v, both in range.
  Permutation Swapped(int u, int v) const;

  // Comma-separated 0-based list, e.g. "2,0,1".
  std::string ToString() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<int> mapping, Unchecked) : mapping_(std::move(mapping)) {}

  std::vector<int> mapping_;

  friend class PermutationCursor;
};

inline Permutation Swap(const Permutation& x, int u, int v) { return x.Swapped(u, v); }

// d = n(n-1)/2, the size of the swap neighborhood.
inline std::int64_t NeighborhoodSize(int n) {
  return static_cast<std::int64_t>(n) * (n - 1) / 2;
}

// All d swap neighbors of x, in lexicographic (u, v) order with u < v.
std::vector<Permutation> Neighbors(const Permutation& x);

// Calls fn(y) for every neighbor y of x, in the same order as Neighbors(),
// without allocating one permutation per neighbor.
template <typename Fn>
void ForEachNeighbor(const Permutation& x, Fn&& fn);

// Calls fn(x) for every x in S_n in lexicographic order of the mapping.
template <typename Fn>
void ForEachPermutation(int n, Fn&& fn);

// Parses "2,0,1". Throws std::invalid_argument on malformed input, naming
// the reason ("not a bijection", ...).
Permutation ParsePermutation(const std::string& text);

// n! as a 64-bit count. Throws std::overflow_error past 20!.
std::uint64_t Factorial(int n);

// Position of x in the lexicographic enumeration of S_n (identity is 0).
// Matches the visiting order of ForEachPermutation.
std::uint64_t LexicographicRank(const Permutation& x);

// Uniform draw from {0..bound-1} by rejection on raw 64-bit output. Unlike
// std::uniform_int_distribution this is identical on every standard library.
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound);

// Fisher-Yates over the identity, driven by UniformBelow.
Permutation RandomPermutation(int n, std::mt19937_64& rng);

// Mutable in-place view used by the enumeration helpers. Exposes a
// Permutation that is re-pointed without reallocation.
class PermutationCursor {
 public:
  explicit PermutationCursor(const Permutation& x) : current_(x) {}

  const Permutation& get() const { return current_; }
  void SwapInPlace(int u, int v) {
    std::swap(current_.mapping_[static_cast<std::size_t>(u)],
              current_.mapping_[static_cast<std::size_t>(v)]);
  }
  bool NextLexicographic();

 private:
  Permutation current_;
};

template <typename Fn>
void ForEachNeighbor(const Permutation& x, Fn&& fn) {
  PermutationCursor cursor(x);
  const int n = x.size();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      cursor.SwapInPlace(u, v);
      fn(cursor.get());
      cursor.SwapInPlace(u, v);
    }
  }
}

template <typename Fn>
void ForEachPermutation(int n, Fn&& fn) {
  PermutationCursor cursor(Permutation::Identity(n));
  do {
    fn(cursor.get());
  } while (cursor.NextLexicographic());
}

}  // namespace qapland

#endif  // QAPLAND_PERMUTATION_HPP_
