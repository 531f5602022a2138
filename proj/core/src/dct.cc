// Copyright 2026 The fmc Authors.
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

#include "fmc/dct.h"

#include <cmath>
#include <numbers>

namespace fmc {
namespace {

// kBasis[k][n] = c(k) * cos((2n + 1) k pi / 16), c(0) = sqrt(1/8),
// c(k > 0) = sqrt(2/8).
struct Basis {
  double m[8][8];
  Basis() {
    for (int k = 0; k < 8; ++k) {
      const double c = k == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (int n = 0; n < 8; ++n) {
        m[k][n] = c * std::cos((2 * n + 1) * k * std::numbers::pi / 16.0);
      }
    }
  }
};

const Basis& GetBasis() {
  static const Basis basis;
  return basis;
}

}  // namespace

Block8x8 Dct8Forward(const Block8x8& samples) {
  const auto& b = GetBasis().m;
  Block8x8 tmp{};
  // Rows.
  for (int y = 0; y < 8; ++y) {
    for (int k = 0; k < 8; ++k) {
      double acc = 0.0;
      for (int n = 0; n < 8; ++n) acc += b[k][n] * samples[y * 8 + n];
      tmp[y * 8 + k] = acc;
    }
  }
  Block8x8 out{};
  // Columns.
  for (int x = 0; x < 8; ++x) {
    for (int k = 0; k < 8; ++k) {
      double acc = 0.0;
      for (int n = 0; n < 8; ++n) acc += b[k][n] * tmp[n * 8 + x];
      out[k * 8 + x] = acc;
    }
  }
  return out;
}

Block8x8 Dct8Inverse(const Block8x8& coeffs) {
  const auto& b = GetBasis().m;
  Block8x8 tmp{};
  for (int x = 0; x < 8; ++x) {
    for (int n = 0; n < 8; ++n) {
      double acc = 0.0;
      for (int k = 0; k < 8; ++k) acc += b[k][n] * coeffs[k * 8 + x];
      tmp[n * 8 + x] = acc;
    }
  }
  Block8x8 out{};
  for (int y = 0; y < 8; ++y) {
    for (int n = 0; n < 8; ++n) {
      double acc = 0.0;
      for (int k = 0; k < 8; ++k) acc += b[k][n] * tmp[y * 8 + k];
      out[y * 8 + n] = acc;
    }
  }
  return out;
}

}  // namespace fmc
