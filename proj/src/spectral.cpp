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

#include "qapland/spectral.hpp"

namespace qapland {

std::pair<int, int> SwapPairAt(int n, std::int64_t index) {
  if (index < 0 || index >= NeighborhoodSize(n)) {
    throw std::out_of_range("swap pair index out of range");
  }
  int u = 0;
  std::int64_t row = n - 1;  // pairs (u, v) with this u
  while (index >= row) {
    index -= row;
    ++u;
    --row;
  }
  return {u, u + 1 + static_cast<int>(index)};
}

std::vector<double> EmpiricalAutocorr(const std::vector<double>& values, int max_lag) {
  if (max_lag < 0) throw std::invalid_argument("max_lag must be non-negative");
  const std::size_t len = values.size();
  if (len <= static_cast<std::size_t>(max_lag)) {
    throw std::invalid_argument("series shorter than max_lag");
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(len);

  double denom = 0.0;
  for (double v : values) denom += (v - mean) * (v - mean);
  if (denom == 0.0) {
    throw std::invalid_argument("constant series: autocorrelation undefined");
  }

  std::vector<double> r(static_cast<std::size_t>(max_lag) + 1);
  for (int s = 0; s <= max_lag; ++s) {
    const auto lag = static_cast<std::size_t>(s);
    double num = 0.0;
    for (std::size_t t = 0; t + lag < len; ++t) {
      num += (values[t] - mean) * (values[t + lag] - mean);
    }
    r[lag] = num / denom;
  }
  return r;
}

}  // namespace qapland
