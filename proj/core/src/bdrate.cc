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

#include "fmc/bdrate.h"

#include <algorithm>
#include <cmath>

#include "fmc/error.h"

namespace fmc {
namespace {

int Sign(double v) { return (v > 0) - (v < 0); }

// Three-point end slope, clipped so the end segment cannot overshoot.
double EndSlope(double h0, double h1, double m0, double m1) {
  double d = ((2 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
  if (Sign(d) != Sign(m0)) {
    d = 0.0;
  } else if (Sign(m0) != Sign(m1) && std::abs(d) > 3 * std::abs(m0)) {
    d = 3 * m0;
  }
  return d;
}

std::string Describe(const RdCurve& c) {
  return c.label.empty() ? std::string("curve") : "curve '" + c.label + "'";
}

}  // namespace

void ValidateCurve(const RdCurve& curve, size_t min_points) {
  if (curve.points.size() < min_points) {
    Fail(ErrorCode::kInvalidArgument,
         Describe(curve) + " has " + std::to_string(curve.points.size()) +
             " points; at least " + std::to_string(min_points) +
             " are required");
  }
  for (size_t i = 0; i < curve.points.size(); ++i) {
    const RdPoint& p = curve.points[i];
    if (!std::isfinite(p.bpp) || !std::isfinite(p.quality) || p.bpp <= 0) {
      Fail(ErrorCode::kInvalidArgument,
           Describe(curve) + " point " + std::to_string(i) +
               " needs finite positive bpp and finite quality");
    }
    if (i == 0) continue;
    const RdPoint& prev = curve.points[i - 1];
    if (!(p.bpp > prev.bpp)) {
      Fail(ErrorCode::kInvalidArgument,
           Describe(curve) + ": bpp not strictly increasing at point " +
               std::to_string(i));
    }
    if (p.quality < prev.quality) {
      Fail(ErrorCode::kInvalidArgument,
           Describe(curve) + ": quality decreases at point " +
               std::to_string(i));
    }
  }
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  Require(x_.size() == y_.size() && x_.size() >= 2,
          "interpolation needs at least two points");
  const size_t n = x_.size();
  std::vector<double> h(n - 1), m(n - 1);
  for (size_t k = 0; k + 1 < n; ++k) {
    h[k] = x_[k + 1] - x_[k];
    Require(h[k] > 0, "interpolation abscissae must be strictly increasing");
    m[k] = (y_[k + 1] - y_[k]) / h[k];
  }
  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = m[0];
    return;
  }
  for (size_t k = 1; k + 1 < n; ++k) {
    if (Sign(m[k - 1]) * Sign(m[k]) <= 0) continue;
    const double w1 = 2 * h[k] + h[k - 1];
    const double w2 = h[k] + 2 * h[k - 1];
    d_[k] = (w1 + w2) / (w1 / m[k - 1] + w2 / m[k]);
  }
  d_[0] = EndSlope(h[0], h[1], m[0], m[1]);
  d_[n - 1] = EndSlope(h[n - 2], h[n - 3], m[n - 2], m[n - 3]);
}

size_t Pchip::Segment(double x) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const size_t k = it == x_.begin() ? 0 : static_cast<size_t>(it - x_.begin()) - 1;
  return std::min(k, x_.size() - 2);
}

double Pchip::operator()(double x) const {
  const size_t k = Segment(x);
  const double h = x_[k + 1] - x_[k];
  const double m = (y_[k + 1] - y_[k]) / h;
  const double s = x - x_[k];
  const double c2 = (3 * m - 2 * d_[k] - d_[k + 1]) / h;
  const double c3 = (d_[k] + d_[k + 1] - 2 * m) / (h * h);
  return y_[k] + s * (d_[k] + s * (c2 + s * c3));
}

double Pchip::SegmentIntegral(size_t k, double s0, double s1) const {
  const double h = x_[k + 1] - x_[k];
  const double m = (y_[k + 1] - y_[k]) / h;
  const double c0 = y_[k];
  const double c1 = d_[k];
  const double c2 = (3 * m - 2 * d_[k] - d_[k + 1]) / h;
  const double c3 = (d_[k] + d_[k + 1] - 2 * m) / (h * h);
  auto prim = [&](double s) {
    return s * (c0 + s * (c1 / 2 + s * (c2 / 3 + s * c3 / 4)));
  };
  return prim(s1) - prim(s0);
}

double Pchip::Integrate(double a, double b) const {
  Require(a <= b, "integration bounds reversed");
  Require(a >= x_.front() && b <= x_.back(),
          "integration interval outside the interpolation range");
  double total = 0.0;
  for (size_t k = 0; k + 1 < x_.size(); ++k) {
    const double lo = std::max(a, x_[k]);
    const double hi = std::min(b, x_[k + 1]);
    if (hi > lo) total += SegmentIntegral(k, lo - x_[k], hi - x_[k]);
  }
  return total;
}

double BdRate(const RdCurve& anchor, const RdCurve& test) {
  auto build = [](const RdCurve& c) {
    ValidateCurve(c);
    std::vector<double> q, lr;
    for (size_t i = 0; i < c.points.size(); ++i) {
      if (i > 0 && !(c.points[i].quality > c.points[i - 1].quality)) {
        Fail(ErrorCode::kInvalidArgument,
             Describe(c) + ": quality must be strictly increasing for BD-Rate"
                           " (repeated value at point " +
                 std::to_string(i) + ")");
      }
      q.push_back(c.points[i].quality);
      lr.push_back(std::log(c.points[i].bpp));
    }
    return Pchip(std::move(q), std::move(lr));
  };
  const Pchip a = build(anchor);
  const Pchip t = build(test);
  const double lo = std::max(anchor.points.front().quality,
                             test.points.front().quality);
  const double hi = std::min(anchor.points.back().quality,
                             test.points.back().quality);
  if (!(hi > lo)) {
    Fail(ErrorCode::kInvalidArgument,
         "curves have no overlapping quality interval");
  }
  const double mean_diff = (t.Integrate(lo, hi) - a.Integrate(lo, hi)) / (hi - lo);
  return (std::exp(mean_diff) - 1.0) * 100.0;
}

}  // namespace fmc
