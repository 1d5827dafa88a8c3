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

// Brute-force ground truth. No closed-form mean or wave-equation prediction
// is used here; every statistic comes from enumerating neighbors or the whole
// search space of a black-box function.

#ifndef QAPLAND_ORACLE_HPP_
#define QAPLAND_ORACLE_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qapland/decomposition.hpp"
#include "qapland/permutation.hpp"
#include "qapland/scalar.hpp"

namespace qapland {

inline constexpr int kDefaultEnumerationCap = 8;

template <ScalarType T>
using PermutationFunction = std::function<T(const Permutation&)>;

// Mean and population variance over all n! points.
template <ScalarType T>
struct SpaceStats {
  T mean;
  T variance;
  std::uint64_t count = 0;
};

template <ScalarType T>
struct ElementarityReport {
  bool is_elementary = false;
  // Set when the fit is not degenerate and the residual vanishes.
  std::optional<T> fitted_k;
  // Least-squares fit of the neighborhood mean against f: avg = a f + b.
  T slope;
  T intercept;
  T max_residual;
  Permutation worst_point = Permutation::Identity(kMinSize);
  T mean;
  // f is constant on S_n; any k satisfies the wave equation.
  bool degenerate = false;
};

namespace detail {
inline void CheckEnumerable(int n, int cap) {
  CheckProblemSize(n);
  if (n > cap) {
    throw std::invalid_argument("n=" + std::to_string(n) +
                                " exceeds the enumeration cap of " + std::to_string(cap));
  }
}

// f at every point of S_n, indexed by LexicographicRank.
template <ScalarType T>
std::vector<T> TabulateSpace(const PermutationFunction<T>& fn, int n, int cap) {
  CheckEnumerable(n, cap);
  std::vector<T> values;
  values.reserve(static_cast<std::size_t>(Factorial(n)));
  ForEachPermutation(n, [&](const Permutation& x) { values.push_back(fn(x)); });
  return values;
}

template <ScalarType T>
T MeanOf(const std::vector<T>& v) {
  T s = 0;
  for (const T& e : v) s += e;
  T m = s / FromInt<T>(static_cast<std::int64_t>(v.size()));
  return m;
}

// Population covariance; two-pass in floating point.
template <ScalarType T>
T CovarianceOf(const std::vector<T>& a, const std::vector<T>& b) {
  if constexpr (ScalarTraits<T>::kExact) {
    // Exact arithmetic has no cancellation error; one pass keeps the
    // denominators small.
    T sa = 0, sb = 0, sab = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      sa += a[k];
      sb += b[k];
      sab += a[k] * b[k];
    }
    const T count = FromInt<T>(static_cast<std::int64_t>(a.size()));
    T c = (sab - sa * sb / count) / count;
    return c;
  }
  const T ma = MeanOf(a);
  const T mb = MeanOf(b);
  T s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - ma) * (b[k] - mb);
  T c = s / FromInt<T>(static_cast<std::int64_t>(a.size()));
  return c;
}
}  // namespace detail

// (1/d) sum_{y in N(x)} fn(y).
template <ScalarType T>
T NeighborhoodAvgBrute(const PermutationFunction<T>& fn, const Permutation& x) {
  T s = 0;
  ForEachNeighbor(x, [&](const Permutation& y) { s += fn(y); });
  T avg = s / FromInt<T>(NeighborhoodSize(x.size()));
  return avg;
}

template <ScalarType T>
SpaceStats<T> EnumerateSpace(const PermutationFunction<T>& fn, int n,
                             int cap = kDefaultEnumerationCap) {
  const std::vector<T> values = detail::TabulateSpace(fn, n, cap);
  SpaceStats<T> stats;
  stats.count = values.size();
  stats.mean = detail::MeanOf(values);
  stats.variance = detail::CovarianceOf(values, values);
  return stats;
}

// Fits avg_{N(x)} f = a f(x) + b by least squares over all of S_n and reports
// the largest absolute residual. When the fit is exact, k = d (1 - a).
template <ScalarType T>
ElementarityReport<T> CheckElementary(const PermutationFunction<T>& fn, int n,
                                      int cap = kDefaultEnumerationCap) {
  const std::vector<T> f = detail::TabulateSpace(fn, n, cap);
  const T d = FromInt<T>(NeighborhoodSize(n));

  std::vector<T> g;
  g.reserve(f.size());
  ForEachPermutation(n, [&](const Permutation& x) {
    T s = 0;
    ForEachNeighbor(x, [&](const Permutation& y) {
      s += f[static_cast<std::size_t>(LexicographicRank(y))];
    });
    g.push_back(s / d);
  });

  ElementarityReport<T> report;
  report.mean = detail::MeanOf(f);
  const T var_f = detail::CovarianceOf(f, f);
  const T mean_g = detail::MeanOf(g);
  T scale = 0;
  for (const T& v : f) scale = std::max<T>(scale, Abs(v));

  if (WithinTolerance<T>(var_f, scale * scale)) {
    report.degenerate = true;
    report.slope = 1;
    report.intercept = 0;
  } else {
    report.slope = detail::CovarianceOf(f, g) / var_f;
    report.intercept = mean_g - report.slope * report.mean;
  }

  report.max_residual = 0;
  std::size_t worst = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    T res = Abs<T>(g[k] - report.slope * f[k] - report.intercept);
    if (res > report.max_residual) {
      report.max_residual = res;
      worst = k;
    }
  }
  std::size_t k = 0;
  ForEachPermutation(n, [&](const Permutation& x) {
    if (k++ == worst) report.worst_point = x;
  });

  report.is_elementary = WithinTolerance<T>(report.max_residual, scale);
  if (report.is_elementary && !report.degenerate) {
    T fitted = d * (FromInt<T>(1) - report.slope);
    report.fitted_k = fitted;
  }
  return report;
}

// Optional fallback for variance_triple beyond the enumeration cap.
struct SamplingSpec {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Population variances of the three components and of f, together with the
// pairwise covariances of the components.
template <ScalarType T>
struct VarianceTriple {
  T var_c1, var_c2, var_c3, var_total;
  T cov12, cov13, cov23;
  bool exact = false;
  std::uint64_t count = 0;

  const T& operator[](int m) const {
    return m == 1 ? var_c1 : (m == 2 ? var_c2 : var_c3);
  }
};

// `components(x)` returns {c1, c2, c3, f}. Enumerates S_n when n <= cap;
// otherwise draws `sampling->samples` uniform permutations from a
// mt19937_64 seeded with `sampling->seed`.
template <ScalarType T, typename ComponentFn>
VarianceTriple<T> ComputeVarianceTriple(ComponentFn&& components, int n, int cap,
                                        const std::optional<SamplingSpec>& sampling) {
  CheckProblemSize(n);
  std::vector<T> c1, c2, c3, f;
  auto record = [&](const Permutation& x) {
    const std::array<T, 4> v = components(x);
    c1.push_back(v[0]);
    c2.push_back(v[1]);
    c3.push_back(v[2]);
    f.push_back(v[3]);
  };
  VarianceTriple<T> out;
  if (n <= cap) {
    ForEachPermutation(n, record);
    out.exact = true;
  } else if (sampling && sampling->samples > 1) {
    std::mt19937_64 rng(sampling->seed);
    for (std::uint64_t s = 0; s < sampling->samples; ++s) record(RandomPermutation(n, rng));
  } else {
    throw std::invalid_argument("n=" + std::to_string(n) + " exceeds the enumeration cap of " +
                                std::to_string(cap) + " and no sampling fallback was given");
  }
  out.count = f.size();
  out.var_c1 = detail::CovarianceOf(c1, c1);
  out.var_c2 = detail::CovarianceOf(c2, c2);
  out.var_c3 = detail::CovarianceOf(c3, c3);
  out.var_total = detail::CovarianceOf(f, f);
  out.cov12 = detail::CovarianceOf(c1, c2);
  out.cov13 = detail::CovarianceOf(c1, c3);
  out.cov23 = detail::CovarianceOf(c2, c3);
  return out;
}

// Variance triple of a QapInstance or GeneralTensor landscape.
template <typename Landscape>
auto VarianceTripleOf(const Landscape& l, int cap = kDefaultEnumerationCap,
                      const std::optional<SamplingSpec>& sampling = std::nullopt) {
  using T = std::decay_t<decltype(Evaluate(l, Permutation::Identity(l.size())))>;
  return ComputeVarianceTriple<T>(
      [&](const Permutation& x) {
        const ComponentTriple<T> c = Decompose(l, x);
        return std::array<T, 4>{c.c1, c.c2, c.c3, Evaluate(l, x)};
      },
      l.size(), cap, sampling);
}

}  // namespace qapland

#endif  // QAPLAND_ORACLE_HPP_
