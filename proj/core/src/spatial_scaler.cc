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

#include "fmc/spatial_scaler.h"

#include <algorithm>
#include <cmath>

namespace fmc {
namespace {

double RoundMicro(double v) { return std::round(v * 1e6) / 1e6; }

}  // namespace

double BlockStdDev(const Plane& plane, int bx, int by) {
  const int x0 = bx * kTransformBlock;
  const int y0 = by * kTransformBlock;
  const int x1 = std::min(x0 + kTransformBlock, plane.width());
  const int y1 = std::min(y0 + kTransformBlock, plane.height());
  const int n = (x1 - x0) * (y1 - y0);
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) sum += plane.at(x, y);
  }
  const double mean = sum / n;
  double ss = 0.0;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      const double d = plane.at(x, y) - mean;
      ss += d * d;
    }
  }
  return std::sqrt(ss / (n - 1));
}

SpatialScalerMap DeriveSpatialScalers(const Plane& context) {
  const int bw = BlocksFor(context.width());
  const int bh = BlocksFor(context.height());
  std::vector<double> sigma(static_cast<size_t>(bw) * bh);
  double total = 0.0;
  for (int by = 0; by < bh; ++by) {
    for (int bx = 0; bx < bw; ++bx) {
      const double s = BlockStdDev(context, bx, by);
      sigma[static_cast<size_t>(by) * bw + bx] = s;
      total += s;
    }
  }
  SpatialScalerMap map(bw, bh, 1.0);
  const double mean = RoundMicro(total / static_cast<double>(sigma.size()));
  if (mean == 0.0) return map;
  for (int by = 0; by < bh; ++by) {
    for (int bx = 0; bx < bw; ++bx) {
      const double s = RoundMicro(sigma[static_cast<size_t>(by) * bw + bx]);
      double w = 0.5;
      if (s < 0.5 * mean) {
        w = 1.414;
      } else if (s < mean) {
        w = 1.0;
      } else if (s < 2.0 * mean) {
        w = 0.707;
      }
      map.at(bx, by) = w;
    }
  }
  return map;
}

}  // namespace fmc
