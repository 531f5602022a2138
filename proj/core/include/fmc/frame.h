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

#ifndef FMC_FRAME_H_
#define FMC_FRAME_H_

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace fmc {

// kYuv420P8: 8-bit samples, chroma planes ceil(w/2) x ceil(h/2).
// kYuv444R / kRgbR: real-valued full-resolution planes.
enum class PixelFormat : uint8_t { kYuv420P8, kYuv444R, kRgbR };

inline constexpr int kMinFrameDim = 16;

class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, float fill = 0.0f);

  int width() const { return width_; }
  int height() const { return height_; }
  size_t size() const { return data_.size(); }

  float& at(int x, int y) { return data_[static_cast<size_t>(y) * width_ + x]; }
  float at(int x, int y) const {
    return data_[static_cast<size_t>(y) * width_ + x];
  }
  // Clamp-to-edge access.
  float clamped(int x, int y) const {
    x = std::clamp(x, 0, width_ - 1);
    y = std::clamp(y, 0, height_ - 1);
    return at(x, y);
  }

  std::span<float> samples() { return data_; }
  std::span<const float> samples() const { return data_; }
  std::span<float> row(int y) {
    return std::span<float>(data_).subspan(static_cast<size_t>(y) * width_,
                                           width_);
  }
  std::span<const float> row(int y) const {
    return std::span<const float>(data_).subspan(
        static_cast<size_t>(y) * width_, width_);
  }

  bool operator==(const Plane&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<float> data_;
};

class Frame {
 public:
  Frame() = default;
  // Allocates planes sized for `format`. Throws on dimensions below 16.
  Frame(int width, int height, PixelFormat format, float fill = 0.0f);

  int width() const { return width_; }
  int height() const { return height_; }
  PixelFormat format() const { return format_; }

  Plane& plane(int i) { return planes_[i]; }
  const Plane& plane(int i) const { return planes_[i]; }

  // Checks plane geometry, finiteness and, for 8-bit formats, that every
  // sample is an integer in [0, 255].
  void Validate() const;

  bool operator==(const Frame&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  PixelFormat format_ = PixelFormat::kYuv444R;
  std::array<Plane, 3> planes_;
};

inline int ChromaDim(int luma_dim) { return (luma_dim + 1) / 2; }

// Rounds every sample to the nearest integer and clamps to [0, 255].
void RoundToEightBit(Frame& frame);

}  // namespace fmc

#endif  // FMC_FRAME_H_
