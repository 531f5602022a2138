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

#include "fmc/calibrate.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "fmc/codec.h"
#include "fmc/color.h"
#include "fmc/error.h"
#include "fmc/quality.h"

namespace fmc {
namespace {

const double kSlopeRatio = std::pow(2.0, 0.25);

RawFormat FormatOf(const Frame& f) {
  switch (f.format()) {
    case PixelFormat::kYuv420P8:
      return RawFormat::kYuv420p;
    case PixelFormat::kRgbR:
      return RawFormat::kRgb24;
    default:
      Fail(ErrorCode::kInvalidArgument,
           "calibration input must be yuv420p or rgb24 frames");
  }
}

EndpointCalibration Solve(std::span<const Frame> frames, int q, double lambda,
                          const CalibrationOptions& opt) {
  double lo = std::log(opt.s_lo);
  double hi = std::log(opt.s_hi);
  auto gap = [&](double ln_s) {
    return std::log(MeasureRdSlope(frames, std::exp(ln_s))) - std::log(lambda);
  };
  const double g_lo = gap(lo);
  const double g_hi = gap(hi);
  if (!(g_lo < 0 && g_hi > 0)) {
    std::ostringstream msg;
    msg << "lambda " << lambda << " at q " << q
        << " is not bracketed by scalers [" << opt.s_lo << ", " << opt.s_hi
        << "]";
    Fail(ErrorCode::kNumerical, msg.str());
  }
  const double tol = std::log1p(opt.tolerance);
  for (int it = 1; it <= opt.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = gap(mid);
    if (std::abs(g) <= tol) {
      return {q, lambda, std::exp(mid), lambda * std::exp(g), it};
    }
    (g < 0 ? lo : hi) = mid;
  }
  std::ostringstream msg;
  msg << "scaler search for lambda " << lambda << " at q " << q
      << " did not settle within " << opt.max_iterations
      << " iterations; last interval [" << std::exp(lo) << ", " << std::exp(hi)
      << "]";
  Fail(ErrorCode::kNumerical, msg.str());
}

}  // namespace

RdSample MeasureIntraRd(std::span<const Frame> frames, double s_enc) {
  Require(!frames.empty(), "no frames to measure");
  Require(std::isfinite(s_enc) && s_enc > 0, "scaler must be positive");
  QuantSchedule fixed;
  fixed.q_num = 2;
  fixed.lambda_min = fixed.lambda_max = 1.0;
  fixed.s_enc_min = fixed.s_enc_max = s_enc;
  fixed.s_dec_min = fixed.s_dec_max = 1.0 / s_enc;
  const RawFormat format = FormatOf(frames[0]);
  double bits = 0.0, dist = 0.0, pixels = 0.0;
  for (const Frame& f : frames) {
    // Distortion is measured before 8-bit rounding and chroma subsampling;
    // those losses do not depend on the scaler and only add noise here.
    const Frame x = ToWorkingFormat(f);
    const CodedFrame c = EncodeIntraFrame(x, 0, fixed);
    bits += 8.0 * c.record.SizeBytes();
    dist += format == RawFormat::kRgb24
                ? ComputeQuality(Yuv444ToRgb(x), Yuv444ToRgb(c.recon))
                      .combined_distortion
                : ComputeQuality(x, c.recon).combined_distortion;
    pixels += static_cast<double>(f.width()) * f.height();
  }
  return {bits / pixels, dist / frames.size()};
}

double MeasureRdSlope(std::span<const Frame> frames, double s_enc) {
  const RdSample a = MeasureIntraRd(frames, s_enc);
  const RdSample b = MeasureIntraRd(frames, s_enc * kSlopeRatio);
  const double dr = b.bpp - a.bpp;
  const double dd = a.distortion - b.distortion;
  if (dd <= 0) return dr > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  return std::abs(dr) / dd;
}

CalibrationResult CalibrateScalerBounds(std::span<const Frame> frames,
                                        const QuantSchedule& schedule,
                                        const CalibrationOptions& options) {
  if (frames.size() < 2) {
    Fail(ErrorCode::kInvalidArgument, "calibration needs at least two frames");
  }
  Require(options.s_lo > 0 && options.s_hi > options.s_lo,
          "calibration scaler interval is empty");
  Require(options.tolerance > 0, "calibration tolerance must be positive");
  CalibrationResult r;
  r.schedule = schedule;
  r.low = Solve(frames, 0, LambdaForQ(0, schedule), options);
  const int top = schedule.q_num - 1;
  if (schedule.lambda_max == schedule.lambda_min) {
    r.high = r.low;
    r.high.q = top;
  } else {
    r.high = Solve(frames, top, LambdaForQ(top, schedule), options);
  }
  r.schedule.s_enc_min = r.low.s_enc;
  r.schedule.s_enc_max = r.high.s_enc;
  r.schedule.s_dec_min = 1.0 / r.low.s_enc;
  r.schedule.s_dec_max = 1.0 / r.high.s_enc;
  r.schedule.Validate();
  return r;
}

}  // namespace fmc
