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

#include "fmc/frame.h"

#include <cmath>
#include <string>

#include "fmc/error.h"

namespace fmc {

Plane::Plane(int width, int height, float fill)
    : width_(width),
      height_(height),
      data_(static_cast<size_t>(width) * height, fill) {
  Require(width > 0 && height > 0, "plane dimensions must be positive");
}

Frame::Frame(int width, int height, PixelFormat format, float fill)
    : width_(width), height_(height), format_(format) {
  Require(width >= kMinFrameDim && height >= kMinFrameDim,
          "frame must be at least 16x16, got " + std::to_string(width) + "x" +
              std::to_string(height));
  planes_[0] = Plane(width, height, fill);
  const bool subsampled = format == PixelFormat::kYuv420P8;
  const int cw = subsampled ? ChromaDim(width) : width;
  const int ch = subsampled ? ChromaDim(height) : height;
  planes_[1] = Plane(cw, ch, fill);
  planes_[2] = Plane(cw, ch, fill);
}

void Frame::Validate() const {
  const bool subsampled = format_ == PixelFormat::kYuv420P8;
  for (int i = 0; i < 3; ++i) {
    const Plane& p = planes_[i];
    const int ew = (i == 0 || !subsampled) ? width_ : ChromaDim(width_);
    const int eh = (i == 0 || !subsampled) ? height_ : ChromaDim(height_);
    if (p.width() != ew || p.height() != eh) {
      Fail(ErrorCode::kInvalidArgument, "plane " + std::to_string(i) +
                                            " does not match frame geometry");
    }
    for (float v : p.samples()) {
      if (!std::isfinite(v)) {
        Fail(ErrorCode::kInvalidArgument, "non-finite sample");
      }
      if (subsampled && (v < 0.0f || v > 255.0f || v != std::nearbyint(v))) {
        Fail(ErrorCode::kInvalidArgument, "8-bit plane holds " +
                                              std::to_string(v));
      }
    }
  }
}

void RoundToEightBit(Frame& frame) {
  for (int i = 0; i < 3; ++i) {
    for (float& v : frame.plane(i).samples()) {
      v = std::clamp(std::round(v), 0.0f, 255.0f);
    }
  }
}

}  // namespace fmc
