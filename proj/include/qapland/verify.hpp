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

// Instance-level verification suite: checks every identity of the
// decomposition against brute force on one QAP instance and reports the
// largest residual per claim.

#ifndef QAPLAND_VERIFY_HPP_
#define QAPLAND_VERIFY_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qapland/decomposition.hpp"
#include "qapland/instance.hpp"
#include "qapland/oracle.hpp"
#include "qapland/permutation.hpp"
#include "qapland/scalar.hpp"

namespace qapland {

template <ScalarType T>
struct ClaimResult {
  std::string name;
  T residual = 0;  // largest absolute residual seen
  T scale = 1;     // magnitude the float-mode tolerance is relative to
  std::uint64_t checks = 0;
  bool skipped = false;
  std::string note;

  bool passed() const { return skipped || WithinTolerance<T>(residual, scale); }
};

template <ScalarType T>
struct VerifyOptions {
  int cap = kDefaultEnumerationCap;
  // Random permutations checked when n > cap, and for the O(n^4) reference
  // comparison at any n.
  std::uint64_t sample_perms = 200;
  std::uint64_t seed = 1;
  // Largest n at which the dense reference evaluator is run.
  int reference_max_n = 12;
  // Constants under test. Anything but Standard(n) should fail.
  std::optional<DecompositionConstants<T>> constants;
};

template <ScalarType T>
bool AllPassed(const std::vector<ClaimResult<T>>& claims) {
  for (const auto& c : claims)
    if (!c.passed()) return false;
  return true;
}

namespace detail {

template <ScalarType T>
void Track(ClaimResult<T>& claim, const T& a, const T& b) {
  T diff = Abs<T>(a - b);
  if (diff > claim.residual) claim.residual = diff;
  ++claim.checks;
}

}  // namespace detail

template <ScalarType T>
std::vector<ClaimResult<T>> RunVerification(const QapInstance<T>& inst,
                                            const VerifyOptions<T>& opt) {
  const int n = inst.size();
  const DecompositionConstants<T> c =
      opt.constants ? *opt.constants : DecompositionConstants<T>::Standard(n);
  const bool enumerate = n <= opt.cap;

  // {c1, c2, c3, f} at x; f always comes straight from Fitness.
  auto point_values = [&](const Permutation& x) {
    const ComponentTriple<T> t = Decompose(inst, x, c);
    return std::array<T, 4>{t.c1, t.c2, t.c3, Fitness(inst, x)};
  };

  std::vector<Permutation> points;
  std::vector<std::array<T, 4>> table;  // by LexicographicRank when enumerating
  if (enumerate) {
    table.reserve(static_cast<std::size_t>(Factorial(n)));
    ForEachPermutation(n, [&](const Permutation& x) {
      points.push_back(x);
      table.push_back(point_values(x));
    });
  } else {
    std::mt19937_64 rng(opt.seed);
    for (std::uint64_t s = 0; s < opt.sample_perms; ++s) points.push_back(RandomPermutation(n, rng));
  }
  auto values_at = [&](const Permutation& x) {
    return enumerate ? table[static_cast<std::size_t>(LexicographicRank(x))] : point_values(x);
  };

  T scale = 1;
  for (const auto& x : points) scale = std::max<T>(scale, Abs<T>(values_at(x)[3]));

  std::vector<ClaimResult<T>> claims;
  auto make = [&](std::string name) {
    ClaimResult<T> r;
    r.name = std::move(name);
    r.scale = scale;
    return r;
  };

  // Decomposition identity.
  {
    ClaimResult<T> claim = make("decomposition_identity");
    for (const auto& x : points) {
      const auto v = values_at(x);
      T sum = v[0] + v[1] + v[2];
      detail::Track(claim, sum, v[3]);
    }
    claims.push_back(std::move(claim));
  }

  // Per-component wave equation and the composite neighborhood average.
  {
    std::array<ClaimResult<T>, 3> wave = {make("wave_equation_c1"), make("wave_equation_c2"),
                                          make("wave_equation_c3")};
    ClaimResult<T> avg = make("neighborhood_average");
    const T d = FromInt<T>(NeighborhoodSize(n));
    const AverageTriple<T> means = ComponentAverages(inst, c);
    for (const auto& x : points) {
      std::array<T, 4> sum = {T(0), T(0), T(0), T(0)};
      ForEachNeighbor(x, [&](const Permutation& y) {
        const auto v = values_at(y);
        for (std::size_t k = 0; k < 4; ++k) sum[k] += v[k];
      });
      const auto here = values_at(x);
      const ComponentTriple<T> comp{here[0], here[1], here[2], T(here[0] + here[1] + here[2])};
      for (int m = 1; m <= 3; ++m) {
        const auto k = static_cast<std::size_t>(m - 1);
        T brute = sum[k] / d;
        detail::Track(wave[k], brute, WavePrediction(m, n, here[k], means[m], c));
      }
      T brute = sum[3] / d;
      detail::Track(avg, brute, NeighborhoodAvgPrediction(n, here[3], comp, means, c));
    }
    for (auto& w : wave) claims.push_back(std::move(w));
    claims.push_back(std::move(avg));
  }

  // Closed-form means, variance orthogonality and component elementarity
  // need the whole space.
  {
    ClaimResult<T> means = make("closed_form_averages");
    ClaimResult<T> orth = make("variance_orthogonality");
    std::array<ClaimResult<T>, 3> elem = {make("elementary_c1"), make("elementary_c2"),
                                          make("elementary_c3")};
    if (enumerate) {
      const AverageTriple<T> avg = ComponentAverages(inst, c);
      std::array<std::vector<T>, 4> cols;
      for (const auto& row : table)
        for (std::size_t k = 0; k < 4; ++k) cols[k].push_back(row[k]);
      for (int m = 1; m <= 3; ++m) detail::Track(means, detail::MeanOf(cols[static_cast<std::size_t>(m - 1)]), avg[m]);
      detail::Track(means, detail::MeanOf(cols[3]), avg.total);

      T var_sum = 0;
      for (std::size_t k = 0; k < 3; ++k) var_sum += detail::CovarianceOf(cols[k], cols[k]);
      detail::Track(orth, detail::CovarianceOf(cols[3], cols[3]), var_sum);
      detail::Track(orth, detail::CovarianceOf(cols[0], cols[1]), T(0));
      detail::Track(orth, detail::CovarianceOf(cols[0], cols[2]), T(0));
      detail::Track(orth, detail::CovarianceOf(cols[1], cols[2]), T(0));

      for (int m = 1; m <= 3; ++m) {
        const auto k = static_cast<std::size_t>(m - 1);
        ClaimResult<T>& claim = elem[k];
        const ElementarityReport<T> rep = CheckElementary<T>(
            [&](const Permutation& x) { return table[static_cast<std::size_t>(LexicographicRank(x))][k]; },
            n, opt.cap);
        if (rep.degenerate) {
          claim.skipped = true;
          claim.note = "component is constant on S_n";
          continue;
        }
        detail::Track(claim, rep.max_residual, T(0));
        if (rep.fitted_k) {
          detail::Track(claim, *rep.fitted_k, FromInt<T>(CharacteristicConstant(m, n)));
        }
      }
    } else {
      for (ClaimResult<T>* claim : {&means, &orth, &elem[0], &elem[1], &elem[2]}) {
        claim->skipped = true;
        claim->note = "n exceeds the enumeration cap";
      }
    }
    claims.push_back(std::move(means));
    claims.push_back(std::move(orth));
    for (auto& e : elem) claims.push_back(std::move(e));
  }

  // Dense reference evaluator against the O(n^2) regrouping.
  {
    ClaimResult<T> claim = make("fast_vs_reference");
    if (n <= opt.reference_max_n && n <= kMaxTensorSize) {
      const GeneralTensor<T> tensor = TensorFromQap(inst);
      std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
      for (std::uint64_t s = 0; s < opt.sample_perms; ++s) {
        const Permutation x = RandomPermutation(n, rng);
        for (int m = 1; m <= 3; ++m) {
          detail::Track(claim, ComponentValueRef(tensor, m, x, c), ComponentValueFast(inst, m, x, c));
        }
      }
    } else {
      claim.skipped = true;
      claim.note = "n exceeds the reference evaluator limit";
    }
    claims.push_back(std::move(claim));
  }

  // Closed-form Omega neighbor sums against enumeration, at this n.
  {
    ClaimResult<T> claim = make("omega_neighbor_sums");
    claim.scale = FromInt<T>(static_cast<std::int64_t>(n) * n * n);
    std::mt19937_64 rng(opt.seed + 17);
    const std::uint64_t tuples = n <= 5 ? 0 : 64;  // 0: all tuples
    for (int s = 0; s < 8; ++s) {
      const Permutation x = RandomPermutation(n, rng);
      auto check = [&](int i, int j, int p, int q) {
        for (OmegaKind kind : kAllOmegaKinds) {
          T brute = 0;
          ForEachNeighbor(x, [&](const Permutation& y) { brute += Omega<T>(kind, i, j, p, q, y); });
          detail::Track(claim, brute, OmegaNeighborhoodSumOracle<T>(kind, i, j, p, q, x));
        }
      };
      if (tuples == 0) {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int p = 0; p < n; ++p)
              for (int q = 0; q < n; ++q)
                if (i != j && p != q) check(i, j, p, q);
      } else {
        const auto un = static_cast<std::uint64_t>(n);
        for (std::uint64_t t = 0; t < tuples; ++t) {
          const int i = static_cast<int>(UniformBelow(rng, un));
          const int j = static_cast<int>((static_cast<std::uint64_t>(i) + 1 + UniformBelow(rng, un - 1)) % un);
          const int p = static_cast<int>(UniformBelow(rng, un));
          const int q = static_cast<int>((static_cast<std::uint64_t>(p) + 1 + UniformBelow(rng, un - 1)) % un);
          check(i, j, p, q);
        }
      }
    }
    claims.push_back(std::move(claim));
  }

  return claims;
}

}  // namespace qapland

#endif  // QAPLAND_VERIFY_HPP_
