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

#include "fmc/color.h"

#include <algorithm>

#include "fmc/error.h"

namespace fmc {

Yuv RgbToYuv709(Rgb c) {
  const double y = kBt709Kr * c.r + kBt709Kg * c.g + kBt709Kb * c.b;
  return {y, (c.b - y) / kBt709CbScale + 128.0,
          (c.r - y) / kBt709CrScale + 128.0};
}

Rgb YuvToRgb709(Yuv c) {
  const double r = c.y + kBt709CrScale * (c.v - 128.0);
  const double b = c.y + kBt709CbScale * (c.u - 128.0);
  const double g = (c.y - kBt709Kr * r - kBt709Kb * b) / kBt709Kg;
  return {r, g, b};
}

Frame RgbToYuv444(const Frame& rgb) {
  Require(rgb.format() == PixelFormat::kRgbR, "RgbToYuv444 expects RGB");
  Frame out(rgb.width(), rgb.height(), PixelFormat::kYuv444R);
  const auto r = rgb.plane(0).samples();
  const auto g = rgb.plane(1).samples();
  const auto b = rgb.plane(2).samples();
  auto y = out.plane(0).samples();
  auto u = out.plane(1).samples();
  auto v = out.plane(2).samples();
  for (size_t i = 0; i < r.size(); ++i) {
    const Yuv c = RgbToYuv709({r[i], g[i], b[i]});
    y[i] = static_cast<float>(c.y);
    u[i] = static_cast<float>(c.u);
    v[i] = static_cast<float>(c.v);
  }
  return out;
}

Frame Yuv444ToRgb(const Frame& yuv) {
  Require(yuv.format() == PixelFormat::kYuv444R, "Yuv444ToRgb expects YUV444");
  Frame out(yuv.width(), yuv.height(), PixelFormat::kRgbR);
  const auto y = yuv.plane(0).samples();
  const auto u = yuv.plane(1).samples();
  const auto v = yuv.plane(2).samples();
  auto r = out.plane(0).samples();
  auto g = out.plane(1).samples();
  auto b = out.plane(2).samples();
  for (size_t i = 0; i < y.size(); ++i) {
    const Rgb c = YuvToRgb709({y[i], u[i], v[i]});
    r[i] = static_cast<float>(std::clamp(c.r, 0.0, 255.0));
    g[i] = static_cast<float>(std::clamp(c.g, 0.0, 255.0));
    b[i] = static_cast<float>(std::clamp(c.b, 0.0, 255.0));
  }
  return out;
}

namespace {

Plane UpsamplePlane(const Plane& src, int width, int height) {
  Plane dst(width, height);
  for (int y = 0; y < height; ++y) {
    const int sy = y / 2;
    const bool half_y = (y & 1) != 0;
    for (int x = 0; x < width; ++x) {
      const int sx = x / 2;
      const bool half_x = (x & 1) != 0;
      const double a = src.clamped(sx, sy);
      const double b = half_x ? src.clamped(sx + 1, sy) : a;
      const double top = half_x ? 0.5 * (a + b) : a;
      double value = top;
      if (half_y) {
        const double c = src.clamped(sx, sy + 1);
        const double d = half_x ? src.clamped(sx + 1, sy + 1) : c;
        const double bottom = half_x ? 0.5 * (c + d) : c;
        value = 0.5 * (top + bottom);
      }
      dst.at(x, y) = static_cast<float>(value);
    }
  }
  return dst;
}

Plane DownsamplePlane(const Plane& src) {
  Plane dst(ChromaDim(src.width()), ChromaDim(src.height()));
  for (int y = 0; y < dst.height(); ++y) {
    for (int x = 0; x < dst.width(); ++x) {
      const double sum = static_cast<double>(src.clamped(2 * x, 2 * y)) +
                         src.clamped(2 * x + 1, 2 * y) +
                         src.clamped(2 * x, 2 * y + 1) +
                         src.clamped(2 * x + 1, 2 * y + 1);
      dst.at(x, y) = static_cast<float>(0.25 * sum);
    }
  }
  return dst;
}

}  // namespace

Frame ChromaUpsample(const Frame& yuv420) {
  Require(yuv420.format() == PixelFormat::kYuv420P8,
          "ChromaUpsample expects 4:2:0 input");
  Frame out(yuv420.width(), yuv420.height(), PixelFormat::kYuv444R);
  out.plane(0) = yuv420.plane(0);
  for (int c = 1; c < 3; ++c) {
    out.plane(c) = UpsamplePlane(yuv420.plane(c), yuv420.width(),
                                 yuv420.height());
  }
  return out;
}

Frame ChromaDownsample(const Frame& yuv444) {
  Require(yuv444.format() == PixelFormat::kYuv444R,
          "ChromaDownsample expects 4:4:4 input");
  Frame out(yuv444.width(), yuv444.height(), PixelFormat::kYuv420P8);
  out.plane(0) = yuv444.plane(0);
  for (int c = 1; c < 3; ++c) out.plane(c) = DownsamplePlane(yuv444.plane(c));
  return out;
}

}  // namespace fmc
