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

#include "fmc/synth.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fmc/color.h"
#include "fmc/error.h"

namespace fmc {
namespace {

constexpr int kWaves = 7;
constexpr int kDiscs = 6;
constexpr int kDetailWaves = 4;

struct Wave {
  double fx, fy, phase;
  double amp[3];
};

struct Disc {
  double cx, cy, radius;
  double rgb[3];
};

class Texture {
 public:
  Texture(std::mt19937_64& rng, int width, int height, double detail) {
    auto u = [&rng] { return UnitDouble(rng()); };
    for (int k = 0; k < kDetailWaves; ++k) {
      Wave w;
      // 0.25 to 0.4 cycles per pixel.
      const double f = 0.25 + 0.15 * u();
      const double theta = 2 * std::numbers::pi * u();
      w.fx = f * std::cos(theta);
      w.fy = f * std::sin(theta);
      w.phase = 2 * std::numbers::pi * u();
      const double a = detail / kDetailWaves;
      for (double& c : w.amp) c = a;
      waves_.push_back(w);
    }
    for (int k = 0; k < kWaves; ++k) {
      Wave w;
      // Spatial frequency from 0.01 to ~0.25 cycles per pixel.
      const double f = 0.01 * std::pow(25.0, u());
      const double theta = 2 * std::numbers::pi * u();
      w.fx = f * std::cos(theta);
      w.fy = f * std::sin(theta);
      w.phase = 2 * std::numbers::pi * u();
      const double a = 30.0 / (1 + k);
      for (double& c : w.amp) c = a * (0.4 + 0.6 * u());
      waves_.push_back(w);
    }
    for (int k = 0; k < kDiscs; ++k) {
      Disc d;
      d.cx = width * u();
      d.cy = height * u();
      d.radius = 4 + 0.2 * std::min(width, height) * u();
      for (double& c : d.rgb) c = 60 * (u() - 0.5);
      discs_.push_back(d);
    }
  }

  Rgb At(double x, double y) const {
    double c[3] = {128, 128, 128};
    for (const Wave& w : waves_) {
      const double s =
          std::sin(2 * std::numbers::pi * (w.fx * x + w.fy * y) + w.phase);
      for (int i = 0; i < 3; ++i) c[i] += w.amp[i] * s;
    }
    for (const Disc& d : discs_) {
      const double r = std::hypot(x - d.cx, y - d.cy);
      // Soft edge about two pixels wide.
      const double m = 0.5 - 0.5 * std::tanh((r - d.radius) / 1.0);
      for (int i = 0; i < 3; ++i) c[i] += m * d.rgb[i];
    }
    return {c[0], c[1], c[2]};
  }

 private:
  std::vector<Wave> waves_;
  std::vector<Disc> discs_;
};

Frame Store(Frame rgb, RawFormat format) {
  if (format == RawFormat::kRgb24) {
    RoundToEightBit(rgb);
    return rgb;
  }
  Frame yuv = ChromaDownsample(RgbToYuv444(rgb));
  RoundToEightBit(yuv);
  return yuv;
}

}  // namespace

SynthKind ParseSynthKind(std::string_view name) {
  if (name == "static") return SynthKind::kStatic;
  if (name == "pan") return SynthKind::kPan;
  if (name == "noise") return SynthKind::kNoise;
  Fail(ErrorCode::kInvalidArgument,
       "unknown clip kind '" + std::string(name) +
           "' (expected static, pan or noise)");
}

std::string_view SynthKindName(SynthKind kind) {
  switch (kind) {
    case SynthKind::kStatic:
      return "static";
    case SynthKind::kPan:
      return "pan";
    case SynthKind::kNoise:
      return "noise";
  }
  return "?";
}

Clip GenerateClip(const SynthOptions& o) {
  Require(o.width >= kMinFrameDim && o.height >= kMinFrameDim,
          "clip dimensions below 16");
  Require(o.frames >= 1, "clip needs at least one frame");
  Require(std::isfinite(o.pan_x) && std::isfinite(o.pan_y) &&
              std::isfinite(o.detail) && o.detail >= 0 &&
              std::isfinite(o.noise) && o.noise >= 0,
          "invalid pan, detail or noise parameter");
  std::mt19937_64 rng(o.seed);
  const Texture texture(rng, o.width, o.height,
                        o.kind == SynthKind::kPan ? o.detail : 0.0);
  Clip clip;
  clip.fps = o.fps;
  clip.format = o.format;
  for (int t = 0; t < o.frames; ++t) {
    Frame rgb(o.width, o.height, PixelFormat::kRgbR);
    const double ox = o.kind == SynthKind::kPan ? o.pan_x * t : 0.0;
    const double oy = o.kind == SynthKind::kPan ? o.pan_y * t : 0.0;
    for (int y = 0; y < o.height; ++y) {
      for (int x = 0; x < o.width; ++x) {
        Rgb c;
        if (o.kind == SynthKind::kNoise) {
          c = {255 * UnitDouble(rng()), 255 * UnitDouble(rng()),
               255 * UnitDouble(rng())};
        } else {
          c = texture.At(x + ox, y + oy);
          if (o.kind == SynthKind::kPan && o.noise > 0) {
            const double n = o.noise * (2 * UnitDouble(rng()) - 1);
            c = {c.r + n, c.g + n, c.b + n};
          }
        }
        const double v[3] = {c.r, c.g, c.b};
        for (int p = 0; p < 3; ++p) {
          rgb.plane(p).at(x, y) =
              static_cast<float>(std::clamp(v[p], 0.0, 255.0));
        }
      }
    }
    clip.frames.push_back(Store(std::move(rgb), o.format));
  }
  return clip;
}

Frame RandomUnitFrame(int width, int height, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Frame f(width, height, PixelFormat::kYuv444R);
  for (int p = 0; p < 3; ++p) {
    for (float& v : f.plane(p).samples()) {
      // Round down so float conversion never reaches 1.0.
      v = std::min(static_cast<float>(UnitDouble(rng())), 0x1.fffffep-1f);
    }
  }
  return f;
}

MotionField RandomMotionField(int width, int height, int max_half_pel,
                              uint64_t seed) {
  Require(max_half_pel >= 0, "motion range must be non-negative");
  std::mt19937_64 rng(seed);
  MotionField field = MotionField::ForFrame(width, height);
  const uint64_t span = 2 * static_cast<uint64_t>(max_half_pel) + 1;
  for (MotionVector& v : field.vectors()) {
    v.dx = static_cast<int>(rng() % span) - max_half_pel;
    v.dy = static_cast<int>(rng() % span) - max_half_pel;
  }
  return field;
}

}  // namespace fmc
