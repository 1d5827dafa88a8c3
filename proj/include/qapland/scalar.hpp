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

#ifndef QAPLAND_SCALAR_HPP_
#define QAPLAND_SCALAR_HPP_

#include <gmpxx.h>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>

namespace qapland {

// Exact arbitrary-precision rational. Every analysis is templated on either
// Rational (exact mode) or double (float mode); the two never mix.
using Rational = mpq_class;

enum class ArithmeticMode { kRational, kFloat };

// Relative tolerance used by every identity check in float mode.
inline constexpr double kFloatRelTol = 1e-9;

template <typename T>
concept ScalarType = std::same_as<T, Rational> || std::same_as<T, double>;

template <ScalarType T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr ArithmeticMode kMode = ArithmeticMode::kRational;
  static constexpr bool kExact = true;

  static Rational FromInt(std::int64_t v) {
    // mpq_class has no int64 constructor on every platform; go through mpz.
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
    return Rational(z);
  }
  static Rational Ratio(std::int64_t num, std::int64_t den) {
    Rational q = FromInt(num) / FromInt(den);
    q.canonicalize();
    return q;
  }
  static Rational FromRational(const Rational& q) { return q; }
  static double ToDouble(const Rational& q) { return q.get_d(); }
  static Rational Abs(const Rational& q) { return abs(q); }
  static bool IsZero(const Rational& q) { return sgn(q) == 0; }
  // "p/q", or "p" when the denominator is one.
  static std::string ToString(const Rational& q) { return q.get_str(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr ArithmeticMode kMode = ArithmeticMode::kFloat;
  static constexpr bool kExact = false;

  static double FromInt(std::int64_t v) { return static_cast<double>(v); }
  static double Ratio(std::int64_t num, std::int64_t den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double FromRational(const Rational& q) { return q.get_d(); }
  static double ToDouble(double v) { return v; }
  static double Abs(double v) { return std::fabs(v); }
  static bool IsZero(double v) { return v == 0.0; }
  static std::string ToString(double v);
};

template <ScalarType T>
T FromInt(std::int64_t v) {
  return ScalarTraits<T>::FromInt(v);
}

template <ScalarType T>
T Ratio(std::int64_t num, std::int64_t den) {
  return ScalarTraits<T>::Ratio(num, den);
}

template <ScalarType T>
double ToDouble(const T& v) {
  return ScalarTraits<T>::ToDouble(v);
}

template <ScalarType T>
T Abs(const T& v) {
  return ScalarTraits<T>::Abs(v);
}

template <ScalarType T>
std::string ToString(const T& v) {
  return ScalarTraits<T>::ToString(v);
}

// True when `residual` is zero (exact mode) or within kFloatRelTol of
// `scale` (float mode; scale is clamped below at 1).
template <ScalarType T>
bool WithinTolerance(const T& residual, const T& scale) {
  if constexpr (ScalarTraits<T>::kExact) {
    (void)scale;
    return ScalarTraits<T>::IsZero(residual);
  } else {
    return std::fabs(residual) <= kFloatRelTol * std::fmax(1.0, std::fabs(scale));
  }
}

const char* ModeName(ArithmeticMode mode);

}  // namespace qapland

#endif  // QAPLAND_SCALAR_HPP_
