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

// Bilinear motion-compensated warping with selectable coordinate precision.
//
// Per output sample (x, y) with block vector (dx, dy) the reference is read
// at p = (x + dx/2, y + dy/2), clamp-to-edge. Binary16 rounding steps:
//   kFp32               none; everything in binary32.
//   kFp16Absolute       p.x and p.y (absolute, pixel units) are rounded to
//                       binary16; floor/fraction/weights follow in binary32.
//   kFp16RelativeOffset the integer base x + floor(dx/2) stays exact; the
//                       fractional offsets fx, fy and the weights 1 - fx,
//                       1 - fy are rounded to binary16.
// Interpolation is separable: top = wx0*a + wx1*b, bottom = wx0*c + wx1*d,
// out = wy0*top + wy1*bottom.

#ifndef FMC_WARP_H_
#define FMC_WARP_H_

#include <cstddef>
#include <string_view>

#include "fmc/frame.h"
#include "fmc/motion.h"

namespace fmc {

enum class WarpPrecision { kFp32, kFp16Absolute, kFp16RelativeOffset };

std::string_view WarpPrecisionName(WarpPrecision mode);

float SampleBilinear(const Plane& reference, int x, int y, MotionVector mv,
                     WarpPrecision mode = WarpPrecision::kFp32);

Plane WarpPlane(const Plane& reference, const MotionField& field,
                WarpPrecision mode = WarpPrecision::kFp32);
// All three planes must have the same dimensions (4:4:4 or RGB).
Frame WarpFrame(const Frame& reference, const MotionField& field,
                WarpPrecision mode = WarpPrecision::kFp32);

struct WarpErrorStats {
  double error_ratio = 0.0;   // fraction of samples beyond tolerance
  double max_abs_err = 0.0;
  size_t samples = 0;
  double tolerance = 0.0;     // relative
  double abs_floor = 0.0;
};

// Compares `mode` against kFp32. A sample counts as an error when
// |mode - fp32| > max(tolerance * |fp32|, abs_floor). Reference values are
// expected in [0, 1).
WarpErrorStats WarpErrorRatio(const Frame& reference, const MotionField& field,
                              WarpPrecision mode, double tolerance = 1e-2,
                              double abs_floor = 1e-3);

}  // namespace fmc

#endif  // FMC_WARP_H_
