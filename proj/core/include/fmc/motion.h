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

// Block motion estimation on 16x16 luma blocks with half-pel vectors.

#ifndef FMC_MOTION_H_
#define FMC_MOTION_H_

#include <vector>

#include "fmc/frame.h"

namespace fmc {

inline constexpr int kMotionBlock = 16;
inline constexpr int kDefaultSearchRange = 16;

// Half-pel units: the block samples the reference at (x + dx/2, y + dy/2).
struct MotionVector {
  int dx = 0;
  int dy = 0;
  bool operator==(const MotionVector&) const = default;
};

class MotionField {
 public:
  MotionField() = default;
  MotionField(int blocks_x, int blocks_y)
      : blocks_x_(blocks_x),
        blocks_y_(blocks_y),
        mv_(static_cast<size_t>(blocks_x) * blocks_y) {}

  // Grid covering a width x height frame.
  static MotionField ForFrame(int width, int height) {
    return MotionField((width + kMotionBlock - 1) / kMotionBlock,
                       (height + kMotionBlock - 1) / kMotionBlock);
  }

  int blocks_x() const { return blocks_x_; }
  int blocks_y() const { return blocks_y_; }
  size_t size() const { return mv_.size(); }
  MotionVector& at(int bx, int by) {
    return mv_[static_cast<size_t>(by) * blocks_x_ + bx];
  }
  const MotionVector& at(int bx, int by) const {
    return mv_[static_cast<size_t>(by) * blocks_x_ + bx];
  }
  std::vector<MotionVector>& vectors() { return mv_; }
  const std::vector<MotionVector>& vectors() const { return mv_; }

  bool IsZero() const;
  bool operator==(const MotionField&) const = default;

 private:
  int blocks_x_ = 0;
  int blocks_y_ = 0;
  std::vector<MotionVector> mv_;
};

struct MotionSearchOptions {
  int search_range = kDefaultSearchRange;  // full-pel
  bool half_pel = true;
};

// Diamond search on the luma plane. Candidates are ranked by (SAD,
// |dx|+|dy|, dy, dx); every reported vector satisfies |dx|,|dy| <=
// 2 * search_range.
MotionField EstimateMotion(const Plane& current, const Plane& reference,
                           const MotionSearchOptions& options = {});
MotionField EstimateMotion(const Frame& current, const Frame& reference,
                           const MotionSearchOptions& options = {});

// SAD of one block against the bilinear (binary32) prediction; used by the
// search and exposed for oracles.
double BlockSad(const Plane& current, const Plane& reference, int bx, int by,
                MotionVector mv);

}  // namespace fmc

#endif  // FMC_MOTION_H_
