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

#include "fmc/quality.h"

#include <cmath>

#include "fmc/color.h"
#include "fmc/error.h"

namespace fmc {

double PlaneMse(const Plane& a, const Plane& b) {
  Require(a.width() == b.width() && a.height() == b.height(),
          "plane dimension mismatch");
  const auto sa = a.samples();
  const auto sb = b.samples();
  double sum = 0.0;
  for (size_t i = 0; i < sa.size(); ++i) {
    const double d = static_cast<double>(sa[i]) - sb[i];
    sum += d * d;
  }
  return sum / static_cast<double>(sa.size());
}

double MseToPsnr(double mse, double cap) {
  if (mse <= 0.0) return cap;
  return std::min(cap, 10.0 * std::log10(255.0 * 255.0 / mse));
}

double WeightedPsnr(double y, double u, double v) {
  // Same value as (6y + u + v) / 8, written so equal inputs return y exactly.
  return y + ((u - y) + (v - y)) / 8.0;
}

QualityReport ComputeQuality(const Frame& a, const Frame& b, double cap) {
  Require(a.width() == b.width() && a.height() == b.height() &&
              a.format() == b.format(),
          "quality: frames differ in size or format");
  QualityReport report;
  double mse[3];
  if (a.format() == PixelFormat::kRgbR) {
    const Frame ya = RgbToYuv444(a);
    const Frame yb = RgbToYuv444(b);
    for (int i = 0; i < 3; ++i) mse[i] = PlaneMse(ya.plane(i), yb.plane(i));
    double rgb_sum = 0.0;
    for (int i = 0; i < 3; ++i) rgb_sum += PlaneMse(a.plane(i), b.plane(i));
    const double d_rgb = rgb_sum / 3.0;
    const double d_yuv = (mse[0] + mse[1] + mse[2]) / 3.0;
    report.psnr_rgb = MseToPsnr(d_rgb, cap);
    report.combined_distortion =
        kYuvDistortionWeight * d_yuv + (1.0 - kYuvDistortionWeight) * d_rgb;
  } else {
    for (int i = 0; i < 3; ++i) mse[i] = PlaneMse(a.plane(i), b.plane(i));
    report.combined_distortion = (mse[0] + mse[1] + mse[2]) / 3.0;
  }
  report.psnr_y = MseToPsnr(mse[0], cap);
  report.psnr_u = MseToPsnr(mse[1], cap);
  report.psnr_v = MseToPsnr(mse[2], cap);
  report.psnr_weighted =
      WeightedPsnr(report.psnr_y, report.psnr_u, report.psnr_v);
  return report;
}

}  // namespace fmc
