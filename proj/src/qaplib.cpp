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

#include "qapland/qaplib.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

namespace qapland {
namespace {

struct Token {
  std::string_view text;
  std::size_t offset;
};

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) break;
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    tokens.push_back({text.substr(start, pos - start), start});
  }
  return tokens;
}

}  // namespace

std::optional<Rational> ParseExactNumber(std::string_view s) {
  std::size_t k = 0;
  bool negative = false;
  if (k < s.size() && (s[k] == '+' || s[k] == '-')) negative = s[k++] == '-';
  std::string digits;
  std::int64_t scale = 0;
  while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) digits += s[k++];
  if (k < s.size() && s[k] == '.') {
    ++k;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
      digits += s[k++];
      --scale;
    }
  }
  if (digits.empty()) return std::nullopt;
  if (k < s.size() && (s[k] == 'e' || s[k] == 'E')) {
    ++k;
    bool exp_negative = false;
    if (k < s.size() && (s[k] == '+' || s[k] == '-')) exp_negative = s[k++] == '-';
    std::int64_t exponent = 0;
    bool any = false;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
      exponent = exponent * 10 + (s[k++] - '0');
      if (exponent > 4096) return std::nullopt;
      any = true;
    }
    if (!any) return std::nullopt;
    scale += exp_negative ? -exponent : exponent;
  }
  if (k != s.size()) return std::nullopt;

  mpz_class num(digits, 10);
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational q = scale < 0 ? Rational(num, pow10) : Rational(num * pow10);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

QapInstance<Rational> ParseQaplib(std::string_view text, bool flow_first) {
  const std::vector<Token> tokens = Tokenize(text);
  if (tokens.empty()) throw QaplibParseError("empty input: expected problem size", 0);

  const Token& head = tokens.front();
  const std::optional<Rational> size_value = ParseExactNumber(head.text);
  if (!size_value || size_value->get_den() != 1 || !size_value->get_num().fits_sint_p()) {
    throw QaplibParseError("problem size '" + std::string(head.text) + "' is not an integer",
                           head.offset);
  }
  const long n = size_value->get_num().get_si();
  if (n < kMinSize) {
    throw QaplibParseError("problem size n=" + std::to_string(n) + " is below the minimum of " +
                               std::to_string(kMinSize),
                           head.offset);
  }
  if (n > 100000) throw QaplibParseError("problem size n=" + std::to_string(n) + " too large", head.offset);

  const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  const std::size_t expected = 1 + 2 * cells;
  if (tokens.size() != expected) {
    const std::size_t at = tokens.size() < expected ? text.size() : tokens[expected].offset;
    throw QaplibParseError("token count mismatch: expected " + std::to_string(expected) +
                               " tokens (n=" + std::to_string(n) + "), found " +
                               std::to_string(tokens.size()),
                           at);
  }

  const int size = static_cast<int>(n);
  SquareMatrix<Rational> first(size), second(size);
  for (std::size_t k = 1; k < expected; ++k) {
    const std::optional<Rational> v = ParseExactNumber(tokens[k].text);
    if (!v) {
      throw QaplibParseError("non-numeric token '" + std::string(tokens[k].text) + "'",
                             tokens[k].offset);
    }
    const std::size_t cell = (k - 1) % cells;
    const int i = static_cast<int>(cell / static_cast<std::size_t>(size));
    const int j = static_cast<int>(cell % static_cast<std::size_t>(size));
    (k <= cells ? first : second)(i, j) = *v;
  }
  if (flow_first) return QapInstance<Rational>(std::move(second), std::move(first));
  return QapInstance<Rational>(std::move(first), std::move(second));
}

QapInstance<Rational> ReadQaplibFile(const std::string& path, bool flow_first) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseQaplib(buf.str(), flow_first);
}

std::string SerializeQaplib(const QapInstance<Rational>& inst, bool flow_first) {
  const int n = inst.size();
  std::ostringstream out;
  out << n << "\n\n";
  auto write = [&](const SquareMatrix<Rational>& m) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (j) out << ' ';
        const Rational& v = m(i, j);
        if (v.get_den() == 1) {
          out << v.get_num().get_str();
        } else {
          // QAPLIB has no fraction syntax; only 2^a 5^b denominators are
          // writable as exact decimals.
          mpz_class den = v.get_den();
          int twos = 0, fives = 0;
          while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
          while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
          if (den != 1) {
            throw std::invalid_argument("entry " + v.get_str() +
                                        " has no finite decimal representation");
          }
          const int digits = std::max(twos, fives);
          mpz_class scale;
          mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
          mpz_class scaled = v.get_num() * scale / v.get_den();
          std::string s = mpz_class(abs(scaled)).get_str();
          if (s.size() <= static_cast<std::size_t>(digits)) {
            s.insert(0, static_cast<std::size_t>(digits) - s.size() + 1, '0');
          }
          s.insert(s.size() - static_cast<std::size_t>(digits), ".");
          if (sgn(scaled) < 0) s.insert(0, "-");
          out << s;
        }
      }
      out << '\n';
    }
  };
  write(flow_first ? inst.flows() : inst.distances());
  out << '\n';
  write(flow_first ? inst.distances() : inst.flows());
  return out.str();
}

QapInstance<Rational> GenerateInstance(int n, std::uint64_t seed, std::int64_t lo,
                                       std::int64_t hi) {
  CheckProblemSize(n);
  if (lo > hi) throw std::invalid_argument("generator bounds require lo <= hi");
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  std::mt19937_64 rng(seed);
  auto draw = [&]() -> Rational {
    // span == 0 means the full 64-bit range wrapped around.
    const std::uint64_t u = span == 0 ? rng() : UniformBelow(rng, span);
    return ScalarTraits<Rational>::FromInt(
        static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + u));
  };
  SquareMatrix<Rational> r(n), w(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = draw();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = draw();
  return QapInstance<Rational>(std::move(r), std::move(w));
}

}  // namespace qapland
