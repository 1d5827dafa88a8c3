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

#ifndef QAPLAND_QAPLIB_HPP_
#define QAPLAND_QAPLIB_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qapland/instance.hpp"

namespace qapland {

class QaplibParseError : public std::runtime_error {
 public:
  QaplibParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Exact value of [+-]digits[.digits][(e|E)[+-]digits]; nullopt otherwise.
std::optional<Rational> ParseExactNumber(std::string_view s);

// QAPLIB text: an integer n followed by 2n^2 numeric tokens separated by any
// whitespace. The first matrix is read as distances r and the second as flows
// w, unless `flow_first` is set. Numbers may be integers or decimals with an
// optional exponent and are read exactly. Throws QaplibParseError.
QapInstance<Rational> ParseQaplib(std::string_view text, bool flow_first = false);

QapInstance<Rational> ReadQaplibFile(const std::string& path, bool flow_first = false);

// Inverse of ParseQaplib: n on the first line, then one matrix row per line
// with a blank line between the matrices.
std::string SerializeQaplib(const QapInstance<Rational>& inst, bool flow_first = false);

// Uniform integer instance. A mt19937_64 seeded with `seed` fills r and then
// w in row-major order, each entry lo + UniformBelow(hi - lo + 1), so the
// result is the same on every platform.
QapInstance<Rational> GenerateInstance(int n, std::uint64_t seed, std::int64_t lo,
                                       std::int64_t hi);

}  // namespace qapland

#endif  // QAPLAND_QAPLIB_HPP_
