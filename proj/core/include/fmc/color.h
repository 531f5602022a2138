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

// Full-range BT.709 colour conversion and 4:2:0 chroma resampling.

#ifndef FMC_COLOR_H_
#define FMC_COLOR_H_

#include "fmc/frame.h"

namespace fmc {

struct Rgb {
  double r, g, b;
};
struct Yuv {
  double y, u, v;
};

inline constexpr double kBt709Kr = 0.2126;
inline constexpr double kBt709Kg = 0.7152;
inline constexpr double kBt709Kb = 0.0722;
inline constexpr double kBt709CbScale = 1.8556;  // 2 * (1 - Kb)
inline constexpr double kBt709CrScale = 1.5748;  // 2 * (1 - Kr)

// Unclamped, unrounded.
Yuv RgbToYuv709(Rgb c);
Rgb YuvToRgb709(Yuv c);

// kRgbR -> kYuv444R, real valued.
Frame RgbToYuv444(const Frame& rgb);
// kYuv444R -> kRgbR, clamped to [0, 255] but not rounded.
Frame Yuv444ToRgb(const Frame& yuv);

// kYuv420P8 -> kYuv444R. Bilinear, chroma sample (i, j) co-sited with luma
// sample (2i, 2j), clamp-to-edge.
Frame ChromaUpsample(const Frame& yuv420);
// kYuv444R -> 4:2:0 chroma by 2x2 mean with edge replication for odd sizes.
// The result keeps real values; use RoundToEightBit for storage.
Frame ChromaDownsample(const Frame& yuv444);

}  // namespace fmc

#endif  // FMC_COLOR_H_
