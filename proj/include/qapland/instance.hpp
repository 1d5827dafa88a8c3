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

#ifndef QAPLAND_INSTANCE_HPP_
#define QAPLAND_INSTANCE_HPP_

#include <stdexcept>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "qapland/permutation.hpp"
#include "qapland/scalar.hpp"

namespace qapland {

// Dense row-major square matrix.
template <ScalarType T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n, const T& fill = T(0))
      : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}

  int size() const { return n_; }
  T& operator()(int i, int j) { return data_[Index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[Index(i, j)]; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t Index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<T> data_;
};

// Row and column sums the O(n^2) component evaluator needs, computed once
// per instance. Off-diagonal means i != j.
template <ScalarType T>
struct QapMarginals {
  std::vector<T> w_row, w_col;  // full row / column sums of w
  std::vector<T> r_out, r_in;   // off-diagonal row / column sums of r
  T w_off = 0, r_off = 0;       // off-diagonal totals
  bool integral = false;        // exact mode with every entry an integer

  friend bool operator==(const QapMarginals&, const QapMarginals&) = default;
};

// Problem data: distances r (between facilities i, j) and flows w (between
// locations p, q). The cost of x is sum_{i,j} r(i,j) * w(x(i), x(j)) over all
// ordered pairs, diagonal included. No symmetry or zero diagonal is assumed.
template <ScalarType T>
class QapInstance {
 public:
  QapInstance(SquareMatrix<T> distances, SquareMatrix<T> flows)
      : r_(std::move(distances)), w_(std::move(flows)) {
    CheckProblemSize(r_.size());
    if (w_.size() != r_.size()) {
      throw std::invalid_argument("distance and flow matrices differ in size");
    }
    ComputeMarginals();
  }

  int size() const { return r_.size(); }
  const SquareMatrix<T>& distances() const { return r_; }
  const SquareMatrix<T>& flows() const { return w_; }
  const T& r(int i, int j) const { return r_(i, j); }
  const T& w(int p, int q) const { return w_(p, q); }
  const QapMarginals<T>& marginals() const { return m_; }

  friend bool operator==(const QapInstance& a, const QapInstance& b) {
    return a.r_ == b.r_ && a.w_ == b.w_;
  }

 private:
  void ComputeMarginals() {
    const int n = size();
    const auto un = static_cast<std::size_t>(n);
    m_.w_row.assign(un, T(0));
    m_.w_col.assign(un, T(0));
    m_.r_out.assign(un, T(0));
    m_.r_in.assign(un, T(0));
    m_.integral = ScalarTraits<T>::kExact;
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        const auto up = static_cast<std::size_t>(p), uq = static_cast<std::size_t>(q);
        m_.w_row[up] += w_(p, q);
        m_.w_col[uq] += w_(p, q);
        if constexpr (ScalarTraits<T>::kExact) {
          if (r_(p, q).get_den() != 1 || w_(p, q).get_den() != 1) m_.integral = false;
        }
        if (p == q) continue;
        m_.w_off += w_(p, q);
        m_.r_off += r_(p, q);
        m_.r_out[up] += r_(p, q);
        m_.r_in[uq] += r_(p, q);
      }
    }
  }

  SquareMatrix<T> r_;
  SquareMatrix<T> w_;
  QapMarginals<T> m_;
};

// Largest n for which a dense n^4 coefficient tensor may be built.
inline constexpr int kMaxTensorSize = 32;

// Four-index coefficient array psi[i][j][p][q] generalizing r(i,j) * w(p,q).
// The cost of x is sum_{i,j} psi[i][j][x(i)][x(j)].
template <ScalarType T>
class GeneralTensor {
 public:
  explicit GeneralTensor(int n) : n_(n) {
    CheckProblemSize(n);
    if (n > kMaxTensorSize) {
      throw std::invalid_argument("n=" + std::to_string(n) +
                                  " exceeds the dense tensor limit of " +
                                  std::to_string(kMaxTensorSize));
    }
    const auto nn = static_cast<std::size_t>(n);
    data_.assign(nn * nn * nn * nn, T(0));
  }

  int size() const { return n_; }
  T& operator()(int i, int j, int p, int q) { return data_[Index(i, j, p, q)]; }
  const T& operator()(int i, int j, int p, int q) const {
    return data_[Index(i, j, p, q)];
  }

 private:
  std::size_t Index(int i, int j, int p, int q) const {
    const auto n = static_cast<std::size_t>(n_);
    return ((static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n +
            static_cast<std::size_t>(p)) * n +
           static_cast<std::size_t>(q);
  }

  int n_;
  std::vector<T> data_;
};

namespace detail {
inline void CheckSameSize(int a, int b) {
  if (a != b) {
    throw std::invalid_argument("dimension mismatch: instance n=" + std::to_string(a) +
                                ", permutation n=" + std::to_string(b));
  }
}
}  // namespace detail

template <ScalarType T>
T Fitness(const QapInstance<T>& inst, const Permutation& x) {
  const int n = inst.size();
  detail::CheckSameSize(n, x.size());
  T total = 0;
  for (int i = 0; i < n; ++i) {
    const int xi = x[i];
    for (int j = 0; j < n; ++j) total += inst.r(i, j) * inst.w(xi, x[j]);
  }
  return total;
}

template <ScalarType T>
T FitnessGeneral(const GeneralTensor<T>& t, const Permutation& x) {
  const int n = t.size();
  detail::CheckSameSize(n, x.size());
  T total = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) total += t(i, j, x[i], x[j]);
  }
  return total;
}

// psi[i][j][p][q] = r(i,j) * w(p,q).
template <ScalarType T>
GeneralTensor<T> TensorFromQap(const QapInstance<T>& inst) {
  const int n = inst.size();
  GeneralTensor<T> t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) t(i, j, p, q) = inst.r(i, j) * inst.w(p, q);
  return t;
}

// Converts an exact instance to the requested arithmetic.
template <ScalarType T>
QapInstance<T> ConvertInstance(const QapInstance<Rational>& inst) {
  if constexpr (std::is_same_v<T, Rational>) {
    return inst;
  } else {
    const int n = inst.size();
    SquareMatrix<T> r(n), w(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        r(i, j) = ScalarTraits<T>::FromRational(inst.r(i, j));
        w(i, j) = ScalarTraits<T>::FromRational(inst.w(i, j));
      }
    }
    return QapInstance<T>(std::move(r), std::move(w));
  }
}

// True when every entry of r and w is an integer.
bool IsIntegral(const QapInstance<Rational>& inst);

// Integer-valued instances analyse exactly; anything else in double.
inline ArithmeticMode DefaultMode(const QapInstance<Rational>& inst) {
  return IsIntegral(inst) ? ArithmeticMode::kRational : ArithmeticMode::kFloat;
}

}  // namespace qapland

#endif  // QAPLAND_INSTANCE_HPP_
