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

// Rate-distortion curves and Bjontegaard rate difference.

#ifndef FMC_BDRATE_H_
#define FMC_BDRATE_H_

#include <span>
#include <string>
#include <vector>

namespace fmc {

inline constexpr size_t kMinBdRatePoints = 4;

struct RdPoint {
  double bpp = 0.0;
  double quality = 0.0;  // dB
  int q = -1;            // -1 when unknown
  bool operator==(const RdPoint&) const = default;
};

struct RdCurve {
  std::string label;
  std::vector<RdPoint> points;
  bool operator==(const RdCurve&) const = default;
};

// Throws kInvalidArgument with a diagnostic unless the curve has at least
// `min_points` points, finite positive bpp strictly increasing and quality
// non-decreasing.
void ValidateCurve(const RdCurve& curve, size_t min_points = kMinBdRatePoints);

// Monotone cubic Hermite interpolant with Fritsch-Butland style slopes and
// non-overshooting end conditions. x must be strictly increasing.
class Pchip {
 public:
  Pchip(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;
  // Exact integral of the interpolant over [a, b] within the knot range.
  double Integrate(double a, double b) const;
  const std::vector<double>& slopes() const { return d_; }

 private:
  size_t Segment(double x) const;
  double SegmentIntegral(size_t k, double s0, double s1) const;
  std::vector<double> x_, y_, d_;
};

// Percent rate difference of `test` against `anchor` at equal quality:
// ln(bpp) is interpolated as a function of quality on each curve and
// averaged over the common quality interval. Negative means `test` needs
// fewer bits. Quality must be strictly increasing on both curves.
double BdRate(const RdCurve& anchor, const RdCurve& test);

}  // namespace fmc

#endif  // FMC_BDRATE_H_
