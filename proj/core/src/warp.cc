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

#include "fmc/warp.h"

#include <algorithm>
#include <cmath>

#include "fmc/error.h"
#include "fmc/half.h"

namespace fmc {
namespace {

int FloorDiv2(int v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

float Interpolate(const Plane& ref, int x0, int y0, float wx0, float wx1,
                  float wy0, float wy1) {
  const float a = ref.clamped(x0, y0);
  const float b = ref.clamped(x0 + 1, y0);
  const float c = ref.clamped(x0, y0 + 1);
  const float d = ref.clamped(x0 + 1, y0 + 1);
  const float top = wx0 * a + wx1 * b;
  const float bottom = wx0 * c + wx1 * d;
  return wy0 * top + wy1 * bottom;
}

void CheckCoverage(const Plane& plane, const MotionField& field) {
  const MotionField expected =
      MotionField::ForFrame(plane.width(), plane.height());
  Require(expected.blocks_x() == field.blocks_x() &&
              expected.blocks_y() == field.blocks_y(),
          "motion field grid does not cover the plane");
}

}  // namespace

std::string_view WarpPrecisionName(WarpPrecision mode) {
  switch (mode) {
    case WarpPrecision::kFp32:
      return "fp32";
    case WarpPrecision::kFp16Absolute:
      return "fp16_absolute";
    case WarpPrecision::kFp16RelativeOffset:
      return "fp16_relative_offset";
  }
  return "unknown";
}

float SampleBilinear(const Plane& ref, int x, int y, MotionVector mv,
                     WarpPrecision mode) {
  switch (mode) {
    case WarpPrecision::kFp32:
    case WarpPrecision::kFp16Absolute: {
      float px = static_cast<float>(x) + 0.5f * static_cast<float>(mv.dx);
      float py = static_cast<float>(y) + 0.5f * static_cast<float>(mv.dy);
      if (mode == WarpPrecision::kFp16Absolute) {
        px = RoundToHalf(px);
        py = RoundToHalf(py);
      }
      const float fx0 = std::floor(px);
      const float fy0 = std::floor(py);
      const float fx = px - fx0;
      const float fy = py - fy0;
      return Interpolate(ref, static_cast<int>(fx0), static_cast<int>(fy0),
                         1.0f - fx, fx, 1.0f - fy, fy);
    }
    case WarpPrecision::kFp16RelativeOffset: {
      const int x0 = x + FloorDiv2(mv.dx);
      const int y0 = y + FloorDiv2(mv.dy);
      const float fx = RoundToHalf(0.5f * static_cast<float>(mv.dx & 1));
      const float fy = RoundToHalf(0.5f * static_cast<float>(mv.dy & 1));
      return Interpolate(ref, x0, y0, RoundToHalf(1.0f - fx), fx,
                         RoundToHalf(1.0f - fy), fy);
    }
  }
  return 0.0f;
}

Plane WarpPlane(const Plane& reference, const MotionField& field,
                WarpPrecision mode) {
  CheckCoverage(reference, field);
  Plane out(reference.width(), reference.height());
  for (int y = 0; y < reference.height(); ++y) {
    const int by = y / kMotionBlock;
    for (int x = 0; x < reference.width(); ++x) {
      const MotionVector mv = field.at(x / kMotionBlock, by);
      out.at(x, y) = SampleBilinear(reference, x, y, mv, mode);
    }
  }
  return out;
}

Frame WarpFrame(const Frame& reference, const MotionField& field,
                WarpPrecision mode) {
  Require(reference.format() != PixelFormat::kYuv420P8,
          "WarpFrame needs full-resolution planes");
  Frame out = reference;
  for (int c = 0; c < 3; ++c) {
    out.plane(c) = WarpPlane(reference.plane(c), field, mode);
  }
  return out;
}

WarpErrorStats WarpErrorRatio(const Frame& reference, const MotionField& field,
                              WarpPrecision mode, double tolerance,
                              double abs_floor) {
  WarpErrorStats stats;
  stats.tolerance = tolerance;
  stats.abs_floor = abs_floor;
  size_t errors = 0;
  for (int c = 0; c < 3; ++c) {
    const Plane& ref = reference.plane(c);
    CheckCoverage(ref, field);
    for (int y = 0; y < ref.height(); ++y) {
      for (int x = 0; x < ref.width(); ++x) {
        const MotionVector mv =
            field.at(x / kMotionBlock, y / kMotionBlock);
        const double exact = SampleBilinear(ref, x, y, mv, WarpPrecision::kFp32);
        const double test = mode == WarpPrecision::kFp32
                                ? exact
                                : SampleBilinear(ref, x, y, mv, mode);
        const double err = std::abs(test - exact);
        stats.max_abs_err = std::max(stats.max_abs_err, err);
        if (err > std::max(tolerance * std::abs(exact), abs_floor)) ++errors;
        ++stats.samples;
      }
    }
  }
  stats.error_ratio =
      stats.samples == 0 ? 0.0 : static_cast<double>(errors) / stats.samples;
  return stats;
}

}  // namespace fmc
