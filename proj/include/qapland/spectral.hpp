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

// Random-walk autocorrelation under the swap neighborhood.
//
// Each component f_cm is an eigenfunction of the neighborhood averaging
// operator with eigenvalue lambda_m = 1 - k_m/d, and components with distinct
// k are uncorrelated over S_n. For a uniform random walk started from the
// stationary distribution this gives
//
//   r(s) = sum_m W_m lambda_m^s,   W_m = Var(f_cm) / Var(f).
//
// The autocorrelation coefficient is xi = 1 / (1 - r(1)) = 1 / sum_m W_m k_m/d.
// Since k_m/d ranges over [2/(n-1), 4/(n-1)], (n-1)/4 <= xi <= (n-1)/2.

#ifndef QAPLAND_SPECTRAL_HPP_
#define QAPLAND_SPECTRAL_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "qapland/decomposition.hpp"
#include "qapland/oracle.hpp"
#include "qapland/permutation.hpp"
#include "qapland/scalar.hpp"

namespace qapland {

template <ScalarType T>
struct WalkSeries {
  std::vector<T> values;  // steps + 1 entries, values[0] is the start
  std::uint64_t seed = 0;
  Permutation start = Permutation::Identity(kMinSize);
  std::int64_t steps = 0;
};

// Maps a pair index in [0, d) to the (u, v), u < v, at that position of the
// lexicographic neighbor order.
std::pair<int, int> SwapPairAt(int n, std::int64_t index);

// Uniform random walk on the swap graph. Each step draws one of the d swaps
// with UniformBelow from a mt19937_64 seeded with `seed`. Without `start`,
// the walk begins at RandomPermutation(n) drawn from the same stream.
template <typename Landscape>
auto RandomWalk(const Landscape& l, std::optional<Permutation> start, std::int64_t steps,
                std::uint64_t seed) {
  using T = std::decay_t<decltype(Evaluate(l, Permutation::Identity(l.size())))>;
  if (steps < 1) throw std::invalid_argument("random walk needs at least one step");
  const int n = l.size();
  std::mt19937_64 rng(seed);
  Permutation x0 = start ? *start : RandomPermutation(n, rng);
  detail::CheckSameSize(n, x0.size());

  WalkSeries<T> series;
  series.seed = seed;
  series.start = x0;
  series.steps = steps;
  series.values.reserve(static_cast<std::size_t>(steps) + 1);

  PermutationCursor cursor(x0);
  series.values.push_back(Evaluate(l, cursor.get()));
  const auto d = static_cast<std::uint64_t>(NeighborhoodSize(n));
  for (std::int64_t t = 0; t < steps; ++t) {
    const auto [u, v] = SwapPairAt(n, static_cast<std::int64_t>(UniformBelow(rng, d)));
    cursor.SwapInPlace(u, v);
    series.values.push_back(Evaluate(l, cursor.get()));
  }
  return series;
}

// Standard biased estimator
//   r^(s) = sum_t (f_t - m)(f_{t+s} - m) / sum_t (f_t - m)^2
// for s = 0..max_lag, evaluated in double. Requires max_lag < steps/10 and a
// non-constant series.
std::vector<double> EmpiricalAutocorr(const std::vector<double>& values, int max_lag);

template <ScalarType T>
std::vector<double> EmpiricalAutocorr(const WalkSeries<T>& series, int max_lag) {
  if (static_cast<std::int64_t>(max_lag) * 10 >= series.steps) {
    throw std::invalid_argument("max_lag must be below steps/10");
  }
  std::vector<double> v;
  v.reserve(series.values.size());
  for (const T& e : series.values) v.push_back(ToDouble(e));
  return EmpiricalAutocorr(v, max_lag);
}

// W_m = Var(f_cm) / sum_m Var(f_cm). The denominator equals Var(f) whenever
// the variances are exact; with sampled variances it keeps sum W_m = 1.
template <ScalarType T>
std::array<T, 3> AutocorrWeights(const VarianceTriple<T>& v) {
  T total = v.var_c1 + v.var_c2 + v.var_c3;
  if (ScalarTraits<T>::IsZero(total) || ScalarTraits<T>::IsZero(v.var_total)) {
    throw std::invalid_argument("fitness has zero variance; autocorrelation undefined");
  }
  return {T(v.var_c1 / total), T(v.var_c2 / total), T(v.var_c3 / total)};
}

// lambda_m = 1 - k_m/d: 1 - 4/(n-1), 1 - 4/n, 1 - 2/(n-1).
template <ScalarType T>
T WalkEigenvalue(int m, int n) {
  T out = FromInt<T>(1) - WaveCoefficient<T>(m, n);
  return out;
}

template <ScalarType T>
std::vector<T> TheoreticalAutocorr(const VarianceTriple<T>& v, int n, int max_lag) {
  if (max_lag < 0) throw std::invalid_argument("max_lag must be non-negative");
  const std::array<T, 3> w = AutocorrWeights(v);
  std::array<T, 3> power = {FromInt<T>(1), FromInt<T>(1), FromInt<T>(1)};
  std::vector<T> r;
  r.reserve(static_cast<std::size_t>(max_lag) + 1);
  for (int s = 0; s <= max_lag; ++s) {
    T sum = 0;
    for (int m = 1; m <= 3; ++m) {
      const auto k = static_cast<std::size_t>(m - 1);
      sum += w[k] * power[k];
      power[k] *= WalkEigenvalue<T>(m, n);
    }
    r.push_back(sum);
  }
  return r;
}

// Where the component variances come from: full enumeration (n <= cap) or a
// seeded uniform sample.
struct VarianceSource {
  int cap = kDefaultEnumerationCap;
  std::optional<SamplingSpec> sampling;
};

template <typename Landscape>
auto TheoreticalAutocorr(const Landscape& l, int max_lag, const VarianceSource& src) {
  return TheoreticalAutocorr(VarianceTripleOf(l, src.cap, src.sampling), l.size(), max_lag);
}

template <ScalarType T>
struct AutocorrCoefficient {
  T xi;
  T lo;  // (n-1)/4
  T hi;  // (n-1)/2
};

template <ScalarType T>
AutocorrCoefficient<T> ComputeAutocorrCoefficient(const VarianceTriple<T>& v, int n) {
  const std::array<T, 3> w = AutocorrWeights(v);
  T rate = 0;
  for (int m = 1; m <= 3; ++m) rate += w[static_cast<std::size_t>(m - 1)] * WaveCoefficient<T>(m, n);
  AutocorrCoefficient<T> out;
  out.xi = FromInt<T>(1) / rate;
  out.lo = Ratio<T>(n - 1, 4);
  out.hi = Ratio<T>(n - 1, 2);
  return out;
}

template <typename Landscape>
auto ComputeAutocorrCoefficient(const Landscape& l, const VarianceSource& src) {
  return ComputeAutocorrCoefficient(VarianceTripleOf(l, src.cap, src.sampling), l.size());
}

template <ScalarType T>
struct AutocorrReport {
  std::vector<double> empirical;
  std::vector<T> theoretical;
  std::array<T, 3> weights;
  AutocorrCoefficient<T> coefficient;
  VarianceTriple<T> variances;
};

template <typename Landscape, ScalarType T>
AutocorrReport<T> BuildAutocorrReport(const Landscape& l, const WalkSeries<T>& walk,
                                      int max_lag, const VarianceSource& src) {
  AutocorrReport<T> report;
  report.variances = VarianceTripleOf(l, src.cap, src.sampling);
  report.weights = AutocorrWeights(report.variances);
  report.theoretical = TheoreticalAutocorr(report.variances, l.size(), max_lag);
  report.coefficient = ComputeAutocorrCoefficient(report.variances, l.size());
  report.empirical = EmpiricalAutocorr(walk, max_lag);
  return report;
}

// "step,fitness" header then one row per entry of the series.
template <ScalarType T>
void WriteWalkCsv(const WalkSeries<T>& series, std::ostream& out) {
  out << "step,fitness\n";
  for (std::size_t t = 0; t < series.values.size(); ++t) {
    out << t << ',' << ToString(series.values[t]) << '\n';
  }
}

}  // namespace qapland

#endif  // QAPLAND_SPECTRAL_HPP_
