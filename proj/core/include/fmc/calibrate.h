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

// Offline search for the encoder scaler bounds.
//
// For an endpoint q the clip is intra coded with a global scaler s and with
// s * 2^(1/4). The measured slope |dR/dD| (R in bits per pixel, D the
// combined distortion on the 8-bit scale) is driven to lambda(q) by
// bisection on ln s. Larger lambda weights distortion more, so it lands on a
// finer scaler.

#ifndef FMC_CALIBRATE_H_
#define FMC_CALIBRATE_H_

#include <span>
#include <vector>

#include "fmc/frame.h"
#include "fmc/quant.h"

namespace fmc {

struct CalibrationOptions {
  double s_lo = 1e-3;
  double s_hi = 1e3;
  double tolerance = 0.10;  // relative, on the slope
  int max_iterations = 60;
};

struct RdSample {
  double bpp = 0.0;
  double distortion = 0.0;
};

// Intra codes every frame (kYuv420P8 or kRgbR) with a fixed global scaler,
// s_dec = 1 / s_enc and w = 1.
RdSample MeasureIntraRd(std::span<const Frame> frames, double s_enc);
// |dR/dD| between s and s * 2^(1/4); +inf when D stops falling but R still
// grows, 0 when neither moves.
double MeasureRdSlope(std::span<const Frame> frames, double s_enc);

struct EndpointCalibration {
  int q = 0;
  double lambda = 0.0;
  double s_enc = 0.0;
  double slope = 0.0;
  int iterations = 0;
};

struct CalibrationResult {
  QuantSchedule schedule;
  EndpointCalibration low;   // q = 0
  EndpointCalibration high;  // q = q_num - 1
};

// Needs at least two frames. Throws kNumerical when lambda is not bracketed
// by [s_lo, s_hi] or the search does not settle.
CalibrationResult CalibrateScalerBounds(std::span<const Frame> frames,
                                        const QuantSchedule& schedule,
                                        const CalibrationOptions& options = {});

}  // namespace fmc

#endif  // FMC_CALIBRATE_H_
