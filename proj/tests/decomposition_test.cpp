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

#include "qapland/decomposition.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace qapland {
namespace {

using testing::AllPermutations;
using testing::BruteNeighborMean;
using testing::Q;
using testing::RandomPermutations;
using testing::SmallInstance;

// Finds a permutation with x(i0)=a and x(i1)=b.
Permutation WithImages(int n, int i0, int a, int i1, int b) {
  for (const auto& x : AllPermutations(n))
    if (x[i0] == a && x[i1] == b) return x;
  throw std::logic_error("no such permutation");
}

TEST(PhiDiagTest, Examples) {
  const auto id = Permutation::Identity(4);
  EXPECT_EQ(PhiDiag<Rational>(2, 2, id), 1);
  EXPECT_EQ(PhiDiag<Rational>(0, 1, id), 0);
  EXPECT_THROW(PhiDiag<Rational>(4, 0, id), std::out_of_range);
}

TEST(PhiDiagTest, MeanIsOneOverN) {
  const auto all = AllPermutations(4);
  for (int i = 0; i < 4; ++i) {
    for (int p = 0; p < 4; ++p) {
      Rational sum = 0;
      for (const auto& x : all) sum += PhiDiag<Rational>(i, p, x);
      EXPECT_EQ(sum / static_cast<long>(all.size()), Q(1, 4));
    }
  }
}

TEST(OmegaTest, Examples) {
  const int n = 5;
  // x(0)=1, x(1)=3: case alpha for (i,j,p,q)=(0,1,1,3).
  const Permutation x = WithImages(n, 0, 1, 1, 3);
  EXPECT_EQ(Omega<Rational>(OmegaKind::kOmega1, 0, 1, 1, 3, x), 2);
  // Neither x(0) nor x(1) in {0, 2}: zeta.
  EXPECT_EQ(Omega<Rational>(OmegaKind::kOmega2, 0, 1, 0, 2, x), 1);
  // x(0)=q and x(1)=p: beta.
  EXPECT_EQ(Omega<Rational>(OmegaKind::kOmega3, 0, 1, 3, 1, x), 1);
  EXPECT_THROW(Omega<Rational>(OmegaKind::kOmega1, 1, 1, 0, 2, x), std::invalid_argument);
  EXPECT_THROW(Omega<Rational>(OmegaKind::kOmega1, 0, 1, 2, 2, x), std::invalid_argument);
}

TEST(OmegaTest, ParameterVectors) {
  for (int n = 3; n <= 9; ++n) {
    const auto o1 = OmegaParameters<Rational>(OmegaKind::kOmega1, n);
    const auto o2 = OmegaParameters<Rational>(OmegaKind::kOmega2, n);
    const auto o3 = OmegaParameters<Rational>(OmegaKind::kOmega3, n);
    EXPECT_EQ(o1.alpha, n - 3); EXPECT_EQ(o1.beta, 1 - n); EXPECT_EQ(o1.gamma, -2);
    EXPECT_EQ(o1.epsilon, 0); EXPECT_EQ(o1.zeta, -1);
    EXPECT_EQ(o2.alpha, n - 3); EXPECT_EQ(o2.beta, n - 3); EXPECT_EQ(o2.gamma, 0);
    EXPECT_EQ(o2.epsilon, 0); EXPECT_EQ(o2.zeta, 1);
    EXPECT_EQ(o3.alpha, 2 * n - 3); EXPECT_EQ(o3.beta, 1); EXPECT_EQ(o3.gamma, n - 2);
    EXPECT_EQ(o3.epsilon, 0); EXPECT_EQ(o3.zeta, -1);
    EXPECT_EQ(CharacteristicConstant(1, n), 2 * n);
    EXPECT_EQ(CharacteristicConstant(2, n), 2 * (n - 1));
    EXPECT_EQ(CharacteristicConstant(3, n), n);
  }
}

// Case labels computed from the raw definition, independent of the library.
TEST(OmegaTest, CasesAreExhaustiveAndExclusive) {
  for (int n = 3; n <= 5; ++n) {
    for (const auto& x : AllPermutations(n)) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
              if (i == j || p == q) continue;
              const bool a = x[i] == p && x[j] == q;
              const bool b = x[i] == q && x[j] == p;
              const bool g = (x[i] == p) != (x[j] == q);
              const bool e = (x[i] == q) != (x[j] == p);
              const bool z = x[i] != p && x[i] != q && x[j] != p && x[j] != q;
              ASSERT_EQ(a + b + g + e + z, 1);
              const OmegaCase c = ClassifyOmegaCase(i, j, p, q, x);
              const OmegaCase want = a ? OmegaCase::kAlpha
                                   : b ? OmegaCase::kBeta
                                   : g ? OmegaCase::kGamma
                                   : e ? OmegaCase::kEpsilon
                                       : OmegaCase::kZeta;
              ASSERT_EQ(c, want);
            }
    }
  }
}

TEST(OmegaTest, MeansOverTheSpace) {
  for (int n = 4; n <= 6; ++n) {
    const auto all = AllPermutations(n);
    for (OmegaKind kind : kAllOmegaKinds) {
      Rational sum = 0;
      for (const auto& x : all) sum += Omega<Rational>(kind, 0, 2, 1, 3, x);
      const Rational mean = sum / static_cast<long>(all.size());
      const Rational want = kind == OmegaKind::kOmega1   ? Q(-1)
                            : kind == OmegaKind::kOmega2 ? Q(n - 3, n - 1)
                                                         : Q(1);
      EXPECT_EQ(mean, want) << "n=" << n << " kind=" << static_cast<int>(kind);
      EXPECT_EQ(OmegaMean<Rational>(kind, n), want);
    }
  }
}

TEST(OmegaOracleTest, HandComputedAlphaCase) {
  const Permutation x = WithImages(5, 0, 1, 1, 3);
  EXPECT_EQ(OmegaNeighborhoodSumOracle<Rational>(OmegaKind::kOmega1, 0, 1, 1, 3, x), -10);
  Rational brute = 0;
  for (const auto& y : Neighbors(x)) brute += Omega<Rational>(OmegaKind::kOmega1, 0, 1, 1, 3, y);
  EXPECT_EQ(brute, -10);
}

TEST(OmegaOracleTest, ZetaCaseFormula) {
  const int n = 6, d = 15;
  const Permutation x = WithImages(n, 0, 4, 1, 5);
  for (OmegaKind kind : kAllOmegaKinds) {
    const auto o = OmegaParameters<Rational>(kind, n);
    EXPECT_EQ(OmegaNeighborhoodSumOracle<Rational>(kind, 0, 1, 2, 3, x),
              2 * o.gamma + 2 * o.epsilon + (d - 4) * o.zeta);
  }
}

TEST(OmegaOracleTest, MatchesEnumerationOnS4) {
  const int n = 4;
  for (const auto& x : AllPermutations(n)) {
    const auto ns = Neighbors(x);
    for (OmegaKind kind : kAllOmegaKinds)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
              if (i == j || p == q) continue;
              Rational brute = 0;
              for (const auto& y : ns) brute += Omega<Rational>(kind, i, j, p, q, y);
              ASSERT_EQ(OmegaNeighborhoodSumOracle<Rational>(kind, i, j, p, q, x), brute);
            }
  }
}

TEST(ComponentRefTest, SingleEntryTensorAtFive) {
  const int n = 5;
  GeneralTensor<Rational> t(n);
  t(0, 1, 2, 3) = 1;
  const Permutation alpha = WithImages(n, 0, 2, 1, 3);
  EXPECT_EQ(ComponentValueRef(t, 1, alpha), Q(1, 5));
  EXPECT_EQ(ComponentValueRef(t, 2, alpha), Q(1, 3));
  EXPECT_EQ(ComponentValueRef(t, 3, alpha), Q(7, 15));
  const Permutation beta = WithImages(n, 0, 3, 1, 2);
  EXPECT_EQ(ComponentValueRef(t, 1, beta), Q(1 - n, 2 * n));
  EXPECT_EQ(ComponentValueRef(t, 2, beta), Q(n - 3, 2 * (n - 2)));
  EXPECT_EQ(ComponentValueRef(t, 3, beta), Q(1, n * (n - 2)));
  const auto ta = Decompose(t, alpha);
  EXPECT_EQ(ta.total, 1);
  EXPECT_EQ(Decompose(t, beta).total, 0);
}

TEST(ComponentRefTest, WeightedOmegasReproduceTheIndicator) {
  for (int n = 4; n <= 5; ++n) {
    const auto c = DecompositionConstants<Rational>::Standard(n);
    for (const auto& x : AllPermutations(n))
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
              if (i == j || p == q) continue;
              Rational sum = 0;
              for (int m = 1; m <= 3; ++m)
                sum += c.WeightOf(m) * Omega<Rational>(KindForComponent(m), i, j, p, q, x);
              ASSERT_EQ(sum, (x[i] == p && x[j] == q) ? 1 : 0);
            }
  }
}

TEST(ComponentRefTest, ZeroTensor) {
  const GeneralTensor<Rational> t(4);
  for (int m = 1; m <= 3; ++m) EXPECT_EQ(ComponentValueRef(t, m, Permutation::Identity(4)), 0);
}

// Entries with exactly one of i=j, p=q never fire under a bijection.
TEST(ComponentRefTest, MixedDiagonalEntriesContributeNothing) {
  const int n = 4;
  GeneralTensor<Rational> t(n);
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        if (p != q) t(i, i, p, q) = 7;   // i = j, p != q
        if (p != q) t(p, q, i, i) = -3;  // i != j, p = q
      }
  for (const auto& x : AllPermutations(n)) {
    EXPECT_EQ(FitnessGeneral(t, x), 0);
    for (int m = 1; m <= 3; ++m) EXPECT_EQ(ComponentValueRef(t, m, x), 0);
  }
}

TEST(ComponentFastTest, MatchesReferenceOnAllOfS4) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto inst = SmallInstance(4, seed);
    const auto t = TensorFromQap(inst);
    for (const auto& x : AllPermutations(4))
      for (int m = 1; m <= 3; ++m) EXPECT_EQ(ComponentValueFast(inst, m, x), ComponentValueRef(t, m, x));
  }
}

TEST(ComponentFastTest, MatchesReferenceAtSix) {
  const auto inst = GenerateInstance(6, 8, -20, 20);
  const auto t = TensorFromQap(inst);
  for (const auto& x : RandomPermutations(6, 50, 4))
    for (int m = 1; m <= 3; ++m) EXPECT_EQ(ComponentValueFast(inst, m, x), ComponentValueRef(t, m, x));
}

TEST(ComponentFastTest, MatchesReferenceWithFractionalEntries) {
  auto base = GenerateInstance(5, 3, -9, 9);
  SquareMatrix<Rational> r = base.distances(), w = base.flows();
  r(1, 3) = Q(-7, 4);
  w(2, 0) = Q(5, 8);
  const QapInstance<Rational> inst(r, w);
  ASSERT_FALSE(inst.marginals().integral);
  const auto t = TensorFromQap(inst);
  for (const auto& x : AllPermutations(5))
    for (int m = 1; m <= 3; ++m) EXPECT_EQ(ComponentValueFast(inst, m, x), ComponentValueRef(t, m, x));
}

TEST(ComponentFastTest, ZeroInstance) {
  const QapInstance<Rational> inst(SquareMatrix<Rational>(5), SquareMatrix<Rational>(5));
  for (int m = 1; m <= 3; ++m) EXPECT_EQ(ComponentValueFast(inst, m, Permutation::Identity(5)), 0);
  const auto tri = Decompose(inst, Permutation::Identity(5));
  EXPECT_EQ(tri.c1, 0); EXPECT_EQ(tri.c2, 0); EXPECT_EQ(tri.c3, 0); EXPECT_EQ(tri.total, 0);
}

TEST(DecomposeTest, SumsToFitness) {
  const auto inst = SmallInstance(5, 77);
  for (const auto& x : RandomPermutations(5, 20, 6)) {
    const auto tri = Decompose(inst, x);
    EXPECT_EQ(tri.c1 + tri.c2 + tri.c3, Fitness(inst, x));
    EXPECT_EQ(tri.total, Fitness(inst, x));
  }
}

TEST(DecomposeTest, FloatModeWithinTolerance) {
  const auto inst = ConvertInstance<double>(GenerateInstance(7, 2, -50, 50));
  for (const auto& x : RandomPermutations(7, 20, 1)) {
    const auto tri = Decompose(inst, x);
    const double f = Fitness(inst, x);
    EXPECT_TRUE(WithinTolerance<double>(std::abs(tri.c1 + tri.c2 + tri.c3 - f), f));
  }
}

TEST(ComponentAverageTest, ZeroInstance) {
  const QapInstance<Rational> inst(SquareMatrix<Rational>(4), SquareMatrix<Rational>(4));
  for (int m = 1; m <= 3; ++m) EXPECT_EQ(ComponentAverage(inst, m), 0);
}

TEST(ComponentAverageTest, MatchesEnumeration) {
  for (int n = 3; n <= 5; ++n) {
    const auto inst = SmallInstance(n, 5);
    const auto t = TensorFromQap(inst);
    const auto all = AllPermutations(n);
    std::array<Rational, 3> sums = {0, 0, 0};
    Rational fsum = 0;
    for (const auto& x : all) {
      for (int m = 1; m <= 3; ++m) sums[static_cast<std::size_t>(m - 1)] += ComponentValueRef(t, m, x);
      fsum += Fitness(inst, x);
    }
    const auto avg = ComponentAverages(inst);
    const long count = static_cast<long>(all.size());
    for (int m = 1; m <= 3; ++m) EXPECT_EQ(avg[m], sums[static_cast<std::size_t>(m - 1)] / count);
    EXPECT_EQ(avg.total, fsum / count);
    // The tensor path agrees with the product-form closed form.
    EXPECT_EQ(ComponentAverages(t).total, avg.total);
    if (n == 3) {
      EXPECT_EQ(avg.a2, 0);
    }
  }
}

TEST(WaveTest, CoefficientsSimplify) {
  for (int n = 3; n <= 12; ++n) {
    EXPECT_EQ(WaveCoefficient<Rational>(1, n), Q(4, n - 1));
    EXPECT_EQ(WaveCoefficient<Rational>(2, n), Q(4, n));
    EXPECT_EQ(WaveCoefficient<Rational>(3, n), Q(2, n - 1));
  }
}

TEST(WaveTest, PerComponentPredictionOnS4) {
  const auto inst = SmallInstance(4, 21);
  const auto t = TensorFromQap(inst);
  for (const auto& x : AllPermutations(4)) {
    for (int m = 1; m <= 3; ++m) {
      const Rational brute =
          BruteNeighborMean(x, [&](const Permutation& y) { return ComponentValueRef(t, m, y); });
      EXPECT_EQ(WavePredictComponent(m, inst, x), brute);
      EXPECT_EQ(WavePredictComponent(m, t, x), brute);
    }
  }
}

TEST(WaveTest, ZeroInstance) {
  const QapInstance<Rational> inst(SquareMatrix<Rational>(4), SquareMatrix<Rational>(4));
  EXPECT_EQ(WavePredictComponent(2, inst, Permutation::Identity(4)), 0);
  EXPECT_EQ(NeighborhoodAvgWave(inst, Permutation::Identity(4)), 0);
}

TEST(WaveTest, NeighborhoodAverageMatchesBruteForce) {
  const auto inst = SmallInstance(5, 13);
  for (const auto& x : RandomPermutations(5, 20, 9)) {
    const Rational brute = BruteNeighborMean(x, [&](const Permutation& y) { return Fitness(inst, y); });
    EXPECT_EQ(NeighborhoodAvgWave(inst, x), brute);
  }
}

TEST(WaveTest, ConstantInstanceIsAFixedPoint) {
  const auto inst = testing::ConstantInstance(5, 1);
  for (const auto& x : AllPermutations(5)) {
    const Rational brute = BruteNeighborMean(x, [&](const Permutation& y) { return Fitness(inst, y); });
    EXPECT_EQ(brute, Fitness(inst, x));
    EXPECT_EQ(NeighborhoodAvgWave(inst, x), brute);
  }
}

}  // namespace
}  // namespace qapland
