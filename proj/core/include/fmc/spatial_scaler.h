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

#ifndef FMC_SPATIAL_SCALER_H_
#define FMC_SPATIAL_SCALER_H_

#include <array>
#include <vector>

#include "fmc/frame.h"

namespace fmc {

inline constexpr int kTransformBlock = 8;
inline constexpr std::array<double, 5> kSpatialScalerLevels = {
    0.5, 0.707, 1.0, 1.414, 2.0};

// Per-8x8-block multiplier applied on top of the global scaler. Entries are
// always one of kSpatialScalerLevels.
class SpatialScalerMap {
 public:
  SpatialScalerMap(int blocks_x, int blocks_y, double fill = 1.0)
      : blocks_x_(blocks_x),
        blocks_y_(blocks_y),
        w_(static_cast<size_t>(blocks_x) * blocks_y, fill) {}

  int blocks_x() const { return blocks_x_; }
  int blocks_y() const { return blocks_y_; }
  double at(int bx, int by) const {
    return w_[static_cast<size_t>(by) * blocks_x_ + bx];
  }
  double& at(int bx, int by) {
    return w_[static_cast<size_t>(by) * blocks_x_ + bx];
  }

  bool operator==(const SpatialScalerMap&) const = default;

 private:
  int blocks_x_;
  int blocks_y_;
  std::vector<double> w_;
};

inline int BlocksFor(int dim) {
  return (dim + kTransformBlock - 1) / kTransformBlock;
}

// Sample standard deviation of one 8x8 block (clipped to the plane).
double BlockStdDev(const Plane& plane, int bx, int by);

// Content-adaptive map from decoded context. With sigma the block std-dev
// and mean_sigma its plane average (both rounded to 6 decimals):
//   sigma < 0.5 mean -> 1.414, < mean -> 1.0, < 2 mean -> 0.707, else 0.5.
// A flat context (mean_sigma == 0) maps to 1.0 everywhere.
SpatialScalerMap DeriveSpatialScalers(const Plane& context);

}  // namespace fmc

#endif  // FMC_SPATIAL_SCALER_H_
