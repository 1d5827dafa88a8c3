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

// Elementary-landscape decomposition of the QAP objective under the swap
// neighborhood.
//
// For i != j and p != q the indicator [x(i)=p][x(j)=q] splits into three
// functions of the five-state family Omega (see OmegaCase), each of which
// satisfies Grover's wave equation
//
//   avg_{y in N(x)} g(y) = g(x) + (k/d) (mean(g) - g(x)),  d = n(n-1)/2,
//
// with k = 2n, 2(n-1) and n. Weighting them by 1/(2n), 1/(2(n-2)) and
// 1/(n(n-2)) and summing against psi gives the components f_c1, f_c2, f_c3.
// The diagonal indicators [x(i)=p] are elementary with k = n and are folded
// into f_c3. Mixed terms (i == j, p != q or i != j, p == q) are identically
// zero on permutations and are skipped.

#ifndef QAPLAND_DECOMPOSITION_HPP_
#define QAPLAND_DECOMPOSITION_HPP_

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "qapland/instance.hpp"
#include "qapland/permutation.hpp"
#include "qapland/scalar.hpp"

namespace qapland {

enum class OmegaKind { kOmega1 = 1, kOmega2 = 2, kOmega3 = 3 };

inline constexpr std::array<OmegaKind, 3> kAllOmegaKinds = {
    OmegaKind::kOmega1, OmegaKind::kOmega2, OmegaKind::kOmega3};

// Which of the five mutually exclusive branches a permutation falls in,
// relative to a fixed (i, j, p, q).
enum class OmegaCase {
  kAlpha,    // x(i) = p and x(j) = q
  kBeta,     // x(i) = q and x(j) = p
  kGamma,    // exactly one of x(i) = p, x(j) = q
  kEpsilon,  // exactly one of x(i) = q, x(j) = p
  kZeta,     // x(i), x(j) both outside {p, q}
};

template <ScalarType T>
struct OmegaParams {
  T alpha, beta, gamma, epsilon, zeta;

  const T& ValueFor(OmegaCase c) const {
    switch (c) {
      case OmegaCase::kAlpha: return alpha;
      case OmegaCase::kBeta: return beta;
      case OmegaCase::kGamma: return gamma;
      case OmegaCase::kEpsilon: return epsilon;
      case OmegaCase::kZeta: return zeta;
    }
    throw std::logic_error("unreachable OmegaCase");
  }
};

// Omega1: (n-3, 1-n, -2, 0, -1)
// Omega2: (n-3, n-3,  0, 0,  1)
// Omega3: (2n-3, 1, n-2, 0, -1)
template <ScalarType T>
OmegaParams<T> OmegaParameters(OmegaKind kind, int n) {
  switch (kind) {
    case OmegaKind::kOmega1:
      return {FromInt<T>(n - 3), FromInt<T>(1 - n), FromInt<T>(-2), FromInt<T>(0),
              FromInt<T>(-1)};
    case OmegaKind::kOmega2:
      return {FromInt<T>(n - 3), FromInt<T>(n - 3), FromInt<T>(0), FromInt<T>(0),
              FromInt<T>(1)};
    case OmegaKind::kOmega3:
      return {FromInt<T>(2 * n - 3), FromInt<T>(1), FromInt<T>(n - 2), FromInt<T>(0),
              FromInt<T>(-1)};
  }
  throw std::invalid_argument("unknown OmegaKind");
}

// Throws std::invalid_argument unless m is 1, 2 or 3.
void CheckComponent(int m);

inline OmegaKind KindForComponent(int m) {
  CheckComponent(m);
  return static_cast<OmegaKind>(m);
}

// k_1 = 2n, k_2 = 2(n-1), k_3 = n.
std::int64_t CharacteristicConstant(int m, int n);

// Search-space mean of each Omega: -1, (n-3)/(n-1), 1.
template <ScalarType T>
T OmegaMean(OmegaKind kind, int n) {
  switch (kind) {
    case OmegaKind::kOmega1: return FromInt<T>(-1);
    case OmegaKind::kOmega2: return Ratio<T>(n - 3, n - 1);
    case OmegaKind::kOmega3: return FromInt<T>(1);
  }
  throw std::invalid_argument("unknown OmegaKind");
}

// Constants that define the decomposition: the weight applied to each Omega
// and the characteristic constant k_m used in the wave equation. Standard()
// is the only correct choice; the struct exists so the verifier can be
// exercised against a deliberately corrupted set.
template <ScalarType T>
struct DecompositionConstants {
  std::array<T, 3> weight;  // 1/(2n), 1/(2(n-2)), 1/(n(n-2))
  std::array<T, 3> k;       // 2n, 2(n-1), n

  static DecompositionConstants Standard(int n) {
    CheckProblemSize(n);
    return {{Ratio<T>(1, 2 * n), Ratio<T>(1, 2 * (n - 2)), Ratio<T>(1, n * (n - 2))},
            {FromInt<T>(CharacteristicConstant(1, n)),
             FromInt<T>(CharacteristicConstant(2, n)),
             FromInt<T>(CharacteristicConstant(3, n))}};
  }

  const T& WeightOf(int m) const { return weight[static_cast<std::size_t>(m - 1)]; }
  const T& KOf(int m) const { return k[static_cast<std::size_t>(m - 1)]; }
};

// k_m / d. Equals 4/(n-1), 4/n and 2/(n-1) for the standard constants.
template <ScalarType T>
T WaveCoefficient(int m, int n, const DecompositionConstants<T>& c) {
  CheckComponent(m);
  T out = c.KOf(m) / FromInt<T>(NeighborhoodSize(n));
  return out;
}

template <ScalarType T>
T WaveCoefficient(int m, int n) {
  return WaveCoefficient<T>(m, n, DecompositionConstants<T>::Standard(n));
}

template <ScalarType T>
struct ComponentTriple {
  T c1, c2, c3, total;

  const T& operator[](int m) const {
    CheckComponent(m);
    return m == 1 ? c1 : (m == 2 ? c2 : c3);
  }
};

template <ScalarType T>
struct AverageTriple {
  T a1, a2, a3, total;

  const T& operator[](int m) const {
    CheckComponent(m);
    return m == 1 ? a1 : (m == 2 ? a2 : a3);
  }
};

// ---------------------------------------------------------------------------
// Elementary building blocks.

// [x(i) = p]. Elementary with k = n and mean 1/n.
template <ScalarType T>
T PhiDiag(int i, int p, const Permutation& x) {
  const int n = x.size();
  if (i < 0 || i >= n || p < 0 || p >= n) throw std::out_of_range("PhiDiag index");
  return x[i] == p ? FromInt<T>(1) : FromInt<T>(0);
}

// Classifies x against (i, j, p, q). Throws std::invalid_argument if i == j or
// p == q, and std::logic_error if the five branches do not fire exactly once.
OmegaCase ClassifyOmegaCase(int i, int j, int p, int q, const Permutation& x);

template <ScalarType T>
T Omega(OmegaKind kind, int i, int j, int p, int q, const Permutation& x) {
  const OmegaCase c = ClassifyOmegaCase(i, j, p, q, x);
  return OmegaParameters<T>(kind, x.size()).ValueFor(c);
}

// Closed-form sum of Omega over N(x), one formula per case of x:
//   alpha:   beta  + 2(n-2) gamma   + (d-2n+3) alpha
//   beta:    alpha + 2(n-2) epsilon + (d-2n+3) beta
//   gamma:   alpha + 2 epsilon + (n-3) zeta + (d-n) gamma
//   epsilon: beta  + 2 gamma   + (n-3) zeta + (d-n) epsilon
//   zeta:    2 gamma + 2 epsilon + (d-4) zeta
// Meant as a test oracle against literal enumeration of the neighbors.
template <ScalarType T>
T OmegaNeighborhoodSumOracle(OmegaKind kind, int i, int j, int p, int q,
                             const Permutation& x) {
  const int n = x.size();
  const std::int64_t d = NeighborhoodSize(n);
  const OmegaParams<T> o = OmegaParameters<T>(kind, n);
  T s = 0;
  switch (ClassifyOmegaCase(i, j, p, q, x)) {
    case OmegaCase::kAlpha:
      s = o.beta + FromInt<T>(2 * (n - 2)) * o.gamma + FromInt<T>(d - 2 * n + 3) * o.alpha;
      break;
    case OmegaCase::kBeta:
      s = o.alpha + FromInt<T>(2 * (n - 2)) * o.epsilon + FromInt<T>(d - 2 * n + 3) * o.beta;
      break;
    case OmegaCase::kGamma:
      s = o.alpha + FromInt<T>(2) * o.epsilon + FromInt<T>(n - 3) * o.zeta +
          FromInt<T>(d - n) * o.gamma;
      break;
    case OmegaCase::kEpsilon:
      s = o.beta + FromInt<T>(2) * o.gamma + FromInt<T>(n - 3) * o.zeta +
          FromInt<T>(d - n) * o.epsilon;
      break;
    case OmegaCase::kZeta:
      s = FromInt<T>(2) * o.gamma + FromInt<T>(2) * o.epsilon + FromInt<T>(d - 4) * o.zeta;
      break;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Component evaluators.

// Literal O(n^4) evaluation against a general tensor:
//   f_cm(x) = weight_m * sum_{i!=j, p!=q} psi[i][j][p][q] Omega^m(x)
// plus, for m = 3, sum_{i,p} psi[i][i][p][p] [x(i)=p].
template <ScalarType T>
T ComponentValueRef(const GeneralTensor<T>& t, int m, const Permutation& x,
                    const DecompositionConstants<T>& c) {
  CheckComponent(m);
  const int n = t.size();
  detail::CheckSameSize(n, x.size());
  const OmegaParams<T> o = OmegaParameters<T>(KindForComponent(m), n);
  T off = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
          if (p == q) continue;
          const T& psi = t(i, j, p, q);
          if (ScalarTraits<T>::IsZero(psi)) continue;
          off += psi * o.ValueFor(ClassifyOmegaCase(i, j, p, q, x));
        }
      }
    }
  }
  T value = c.WeightOf(m) * off;
  if (m == 3) {
    for (int i = 0; i < n; ++i)
      for (int p = 0; p < n; ++p) value += t(i, i, p, p) * PhiDiag<T>(i, p, x);
  }
  return value;
}

template <ScalarType T>
T ComponentValueRef(const GeneralTensor<T>& t, int m, const Permutation& x) {
  return ComponentValueRef(t, m, x, DecompositionConstants<T>::Standard(t.size()));
}

// For product-form psi = r (x) w the off-diagonal sum regroups per facility
// pair (i, j). With a = x(i), b = x(j) the locations (p, q), p != q, split
// into the five Omega cases whose w-sums need only row sums, column sums and
// the diagonal of w:
//   alpha:   w(a,b)
//   beta:    w(b,a)
//   gamma:   (row(a) - w(a,a) - w(a,b)) + (col(b) - w(b,b) - w(a,b))
//   epsilon: (col(a) - w(a,a) - w(b,a)) + (row(b) - w(b,b) - w(b,a))
//   zeta:    offdiag(w) minus the four sets above
// CaseSums holds sum_{i!=j} r(i,j) * (case w-sum) for each case.
template <ScalarType T>
struct OmegaCaseSums {
  T alpha, beta, gamma, epsilon, zeta;
  T diagonal;  // sum_i r(i,i) w(x(i), x(i))

  T Contract(const OmegaParams<T>& o) const {
    T s = o.alpha * alpha + o.beta * beta + o.gamma * gamma + o.epsilon * epsilon +
          o.zeta * zeta;
    return s;
  }
};

namespace detail {

// alpha = sum_{i!=j} r(i,j) w(x(i),x(j)), beta = sum_{i!=j} r(i,j) w(x(j),x(i)).
template <ScalarType T>
void PairSums(const QapInstance<T>& inst, const Permutation& x, T& alpha, T& beta) {
  const int n = inst.size();
  if constexpr (std::is_same_v<T, Rational>) {
    // Integer data accumulates in mpz with fused multiply-adds, avoiding a
    // rational temporary per term.
    if (inst.marginals().integral) {
      mpz_class sa = 0, sb = 0;
      for (int i = 0; i < n; ++i) {
        const int a = x[i];
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          mpz_srcptr rij = inst.r(i, j).get_num_mpz_t();
          if (mpz_sgn(rij) == 0) continue;
          const int b = x[j];
          mpz_addmul(sa.get_mpz_t(), rij, inst.w(a, b).get_num_mpz_t());
          mpz_addmul(sb.get_mpz_t(), rij, inst.w(b, a).get_num_mpz_t());
        }
      }
      alpha += Rational(sa);
      beta += Rational(sb);
      return;
    }
  }
  for (int i = 0; i < n; ++i) {
    const int a = x[i];
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const T& rij = inst.r(i, j);
      if (ScalarTraits<T>::IsZero(rij)) continue;
      const int b = x[j];
      alpha += rij * inst.w(a, b);
      beta += rij * inst.w(b, a);
    }
  }
}

}  // namespace detail

// Only alpha and beta need the pair loop. Summed against r, the remaining
// case sets factor through the marginals R_out(i) = sum_{j!=i} r(i,j) and
// R_in(j) = sum_{i!=j} r(i,j):
//   gamma   = sum_i R_out(i) (row(a_i) - w(a_i,a_i)) + sum_j R_in(j) (col(b_j) - w(b_j,b_j)) - 2 alpha
//   epsilon = sum_i R_out(i) (col(a_i) - w(a_i,a_i)) + sum_j R_in(j) (row(b_j) - w(b_j,b_j)) - 2 beta
//   zeta    = offdiag(r) offdiag(w) - alpha - beta - gamma - epsilon
template <ScalarType T>
OmegaCaseSums<T> ComputeOmegaCaseSums(const QapInstance<T>& inst, const Permutation& x) {
  const int n = inst.size();
  detail::CheckSameSize(n, x.size());
  const QapMarginals<T>& mg = inst.marginals();
  const std::vector<T>& row = mg.w_row;
  const std::vector<T>& col = mg.w_col;
  const std::vector<T>& r_out = mg.r_out;
  const std::vector<T>& r_in = mg.r_in;
  OmegaCaseSums<T> s{T(0), T(0), T(0), T(0), T(0), T(0)};
  T t;
  for (int i = 0; i < n; ++i) {
    const int a = x[i];
    const auto ui = static_cast<std::size_t>(i);
    const auto ua = static_cast<std::size_t>(a);
    const T& waa = inst.w(a, a);
    s.diagonal += inst.r(i, i) * waa;
    t = row[ua] - waa;
    s.gamma += r_out[ui] * t;
    t = col[ua] - waa;
    s.gamma += r_in[ui] * t;
    s.epsilon += r_out[ui] * t;
    t = row[ua] - waa;
    s.epsilon += r_in[ui] * t;
  }
  detail::PairSums(inst, x, s.alpha, s.beta);
  s.gamma -= 2 * s.alpha;
  s.epsilon -= 2 * s.beta;
  s.zeta = mg.r_off * mg.w_off - s.alpha - s.beta - s.gamma - s.epsilon;
  return s;
}

// O(n^2) evaluation for product-form instances. Agrees exactly with
// ComponentValueRef(TensorFromQap(inst), m, x).
template <ScalarType T>
T ComponentValueFast(const QapInstance<T>& inst, int m, const Permutation& x,
                     const DecompositionConstants<T>& c) {
  CheckComponent(m);
  const OmegaCaseSums<T> s = ComputeOmegaCaseSums(inst, x);
  T value = c.WeightOf(m) * s.Contract(OmegaParameters<T>(KindForComponent(m), inst.size()));
  if (m == 3) value += s.diagonal;
  return value;
}

template <ScalarType T>
T ComponentValueFast(const QapInstance<T>& inst, int m, const Permutation& x) {
  return ComponentValueFast(inst, m, x, DecompositionConstants<T>::Standard(inst.size()));
}

// ---------------------------------------------------------------------------
// Landscape-generic operations. A landscape is either a QapInstance (fast
// path) or a GeneralTensor (reference path).

template <ScalarType T>
T Evaluate(const QapInstance<T>& inst, const Permutation& x) {
  return Fitness(inst, x);
}

template <ScalarType T>
T Evaluate(const GeneralTensor<T>& t, const Permutation& x) {
  return FitnessGeneral(t, x);
}

template <ScalarType T>
T ComponentValue(const QapInstance<T>& inst, int m, const Permutation& x,
                 const DecompositionConstants<T>& c) {
  return ComponentValueFast(inst, m, x, c);
}

template <ScalarType T>
T ComponentValue(const GeneralTensor<T>& t, int m, const Permutation& x,
                 const DecompositionConstants<T>& c) {
  return ComponentValueRef(t, m, x, c);
}

template <ScalarType T>
ComponentTriple<T> Decompose(const QapInstance<T>& inst, const Permutation& x,
                             const DecompositionConstants<T>& c) {
  const OmegaCaseSums<T> s = ComputeOmegaCaseSums(inst, x);
  const int n = inst.size();
  ComponentTriple<T> out;
  out.c1 = c.WeightOf(1) * s.Contract(OmegaParameters<T>(OmegaKind::kOmega1, n));
  out.c2 = c.WeightOf(2) * s.Contract(OmegaParameters<T>(OmegaKind::kOmega2, n));
  out.c3 = c.WeightOf(3) * s.Contract(OmegaParameters<T>(OmegaKind::kOmega3, n)) + s.diagonal;
  out.total = out.c1 + out.c2 + out.c3;
  return out;
}

template <ScalarType T>
ComponentTriple<T> Decompose(const GeneralTensor<T>& t, const Permutation& x,
                             const DecompositionConstants<T>& c) {
  ComponentTriple<T> out;
  out.c1 = ComponentValueRef(t, 1, x, c);
  out.c2 = ComponentValueRef(t, 2, x, c);
  out.c3 = ComponentValueRef(t, 3, x, c);
  out.total = out.c1 + out.c2 + out.c3;
  return out;
}

template <typename Landscape>
auto Decompose(const Landscape& l, const Permutation& x) {
  using T = std::decay_t<decltype(Evaluate(l, x))>;
  return Decompose(l, x, DecompositionConstants<T>::Standard(l.size()));
}

template <typename Landscape>
auto ComponentValue(const Landscape& l, int m, const Permutation& x) {
  using T = std::decay_t<decltype(Evaluate(l, x))>;
  return ComponentValue(l, m, x, DecompositionConstants<T>::Standard(l.size()));
}

// Sums of psi over the off-diagonal block {i!=j, p!=q} and the diagonal block
// {i=j, p=q}; the two quantities every closed-form mean depends on.
template <ScalarType T>
struct PsiBlockSums {
  T off, diag;
};

template <ScalarType T>
PsiBlockSums<T> BlockSums(const QapInstance<T>& inst) {
  const int n = inst.size();
  T r_all = 0, r_diag = 0, w_all = 0, w_diag = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      r_all += inst.r(i, j);
      w_all += inst.w(i, j);
    }
    r_diag += inst.r(i, i);
    w_diag += inst.w(i, i);
  }
  PsiBlockSums<T> s;
  s.off = (r_all - r_diag) * (w_all - w_diag);
  s.diag = r_diag * w_diag;
  return s;
}

template <ScalarType T>
PsiBlockSums<T> BlockSums(const GeneralTensor<T>& t) {
  const int n = t.size();
  PsiBlockSums<T> s{T(0), T(0)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          if (i != j && p != q) s.off += t(i, j, p, q);
          if (i == j && p == q) s.diag += t(i, j, p, q);
        }
  return s;
}

// Closed-form search-space means by linearity:
//   mean f_c1 = -S_off / (2n)
//   mean f_c2 = S_off (n-3) / (2 (n-2) (n-1))
//   mean f_c3 = S_off / (n (n-2)) + S_diag / n
template <typename Landscape, ScalarType T>
AverageTriple<T> ComponentAverages(const Landscape& l, const DecompositionConstants<T>& c) {
  const int n = l.size();
  const PsiBlockSums<T> s = BlockSums(l);
  AverageTriple<T> out;
  out.a1 = c.WeightOf(1) * OmegaMean<T>(OmegaKind::kOmega1, n) * s.off;
  out.a2 = c.WeightOf(2) * OmegaMean<T>(OmegaKind::kOmega2, n) * s.off;
  out.a3 = c.WeightOf(3) * OmegaMean<T>(OmegaKind::kOmega3, n) * s.off +
           s.diag / FromInt<T>(n);
  out.total = out.a1 + out.a2 + out.a3;
  return out;
}

template <ScalarType T>
AverageTriple<T> ComponentAverages(const QapInstance<T>& inst) {
  return ComponentAverages(inst, DecompositionConstants<T>::Standard(inst.size()));
}

template <ScalarType T>
AverageTriple<T> ComponentAverages(const GeneralTensor<T>& t) {
  return ComponentAverages(t, DecompositionConstants<T>::Standard(t.size()));
}

template <typename Landscape>
auto ComponentAverage(const Landscape& l, int m) {
  CheckComponent(m);
  const auto avg = ComponentAverages(l);
  using T = std::decay_t<decltype(avg.total)>;
  T out = avg[m];
  return out;
}

// Wave-equation prediction of the neighborhood mean of f_cm at x:
//   f_cm(x) + (k_m/d) (mean f_cm - f_cm(x)).
template <ScalarType T>
T WavePrediction(int m, int n, const T& value, const T& mean,
                 const DecompositionConstants<T>& c) {
  T out = value + WaveCoefficient<T>(m, n, c) * (mean - value);
  return out;
}

template <typename Landscape, ScalarType T>
T WavePredictComponent(int m, const Landscape& l, const Permutation& x,
                       const DecompositionConstants<T>& c) {
  const T value = ComponentValue(l, m, x, c);
  const AverageTriple<T> avg = ComponentAverages(l, c);
  return WavePrediction(m, l.size(), value, avg[m], c);
}

template <typename Landscape>
auto WavePredictComponent(int m, const Landscape& l, const Permutation& x) {
  using T = std::decay_t<decltype(Evaluate(l, x))>;
  return WavePredictComponent(m, l, x, DecompositionConstants<T>::Standard(l.size()));
}

// Neighborhood mean of f predicted from the decomposition:
//   f(x) + 4/(n-1) (mean f_c1 - f_c1(x)) + 4/n (mean f_c2 - f_c2(x))
//        + 2/(n-1) (mean f_c3 - f_c3(x)).
template <ScalarType T>
T NeighborhoodAvgPrediction(int n, const T& fitness, const ComponentTriple<T>& comp,
                            const AverageTriple<T>& avg, const DecompositionConstants<T>& c) {
  T out = fitness;
  for (int m = 1; m <= 3; ++m) out += WaveCoefficient<T>(m, n, c) * (avg[m] - comp[m]);
  return out;
}

template <typename Landscape, ScalarType T>
T NeighborhoodAvgWave(const Landscape& l, const Permutation& x,
                      const DecompositionConstants<T>& c) {
  return NeighborhoodAvgPrediction(l.size(), T(Evaluate(l, x)), Decompose(l, x, c),
                                   ComponentAverages(l, c), c);
}

template <typename Landscape>
auto NeighborhoodAvgWave(const Landscape& l, const Permutation& x) {
  using T = std::decay_t<decltype(Evaluate(l, x))>;
  return NeighborhoodAvgWave(l, x, DecompositionConstants<T>::Standard(l.size()));
}

}  // namespace qapland

#endif  // QAPLAND_DECOMPOSITION_HPP_
