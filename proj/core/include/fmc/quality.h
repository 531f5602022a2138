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

#ifndef FMC_QUALITY_H_
#define FMC_QUALITY_H_

#include <optional>

#include "fmc/frame.h"

namespace fmc {

inline constexpr double kDefaultPsnrCap = 100.0;
// Weight of the YUV term in the combined YUV/RGB distortion.
inline constexpr double kYuvDistortionWeight = 0.8;

struct QualityReport {
  double psnr_y = 0.0;
  double psnr_u = 0.0;
  double psnr_v = 0.0;
  double psnr_weighted = 0.0;
  std::optional<double> psnr_rgb;
  // k * D_yuv + (1 - k) * D_rgb when RGB is available, else D_yuv. Each D
  // is the mean of the three per-plane MSEs on the 8-bit scale.
  double combined_distortion = 0.0;
};

double PlaneMse(const Plane& a, const Plane& b);
double MseToPsnr(double mse, double cap = kDefaultPsnrCap);
// (6 * y + u + v) / 8.
double WeightedPsnr(double y, double u, double v);

// For YUV inputs the planes are compared directly. For kRgbR inputs the YUV
// figures come from a BT.709 conversion of both frames and psnr_rgb is set.
QualityReport ComputeQuality(const Frame& a, const Frame& b,
                             double cap = kDefaultPsnrCap);

}  // namespace fmc

#endif  // FMC_QUALITY_H_
