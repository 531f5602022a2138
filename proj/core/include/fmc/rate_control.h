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

// Buffer-based q selection. cfs counts the frame record (11-byte header plus
// payloads) in bits; the sequence header is excluded.

#ifndef FMC_RATE_CONTROL_H_
#define FMC_RATE_CONTROL_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "fmc/codec.h"

namespace fmc {

inline constexpr int kRcInitialQ = 32;
inline constexpr int kRcMinQ = 0;
inline constexpr int kRcMaxQ = 63;
// q pinned at a bound for more than this many consecutive frames flags the
// target as unreachable.
inline constexpr int kRcPinnedLimit = 50;

struct RateControlState {
  double cbs = 0.0;  // current buffer size, bits
  double tbs = 0.0;  // target buffer size, bits
  int q = kRcInitialQ;
  double afs = 0.0;  // target frame size, bits
  int64_t fidx = 0;  // index of the frame the next update refers to

  bool operator==(const RateControlState&) const = default;
};

// One buffer update for a frame of `cfs` bits. Pure; fidx advances by one.
RateControlState RcUpdate(const RateControlState& state, double cfs);

// Piecewise-constant target: each segment applies from `frame` onward.
struct TargetSegment {
  int frame = 0;
  double bps = 0.0;
};
using TargetSchedule = std::vector<TargetSegment>;

// "0:300000,150:100000" -> segments. The first segment must start at 0 and
// frames must increase.
TargetSchedule ParseTargetSchedule(std::string_view text);
double TargetAt(const TargetSchedule& schedule, int frame);

// Drives q across a sequence; fidx is the 0-based frame index, so q is
// reconsidered after frames 0, 2, 4, ...
class RateController {
 public:
  RateController(TargetSchedule targets, double fps);

  int NextQ(int t);
  void Report(int t, uint64_t bits);

  const RateControlState& state() const { return state_; }
  double target_bps(int t) const { return TargetAt(targets_, t); }

 private:
  TargetSchedule targets_;
  double fps_;
  RateControlState state_;
};

struct RcLogEntry {
  int frame = 0;
  int q = 0;
  uint64_t bits = 0;
  double cum_avg_bps = 0.0;
  double target_bps = 0.0;
  double psnr_weighted = 0.0;
  bool unreachable = false;  // set once q has been pinned for too long
};

struct RcRunResult {
  std::vector<RcLogEntry> log;
  double realized_bps = 0.0;
  bool unreachable = false;
  SequenceResult sequence;
};

RcRunResult RunRateControl(std::span<const Frame> frames, RawFormat format,
                           Rational fps, const TargetSchedule& targets,
                           const QuantSchedule& schedule,
                           const CodecConfig& config = {});

// Mean bits/s over frames [begin, end).
double AverageBps(std::span<const RcLogEntry> log, int begin, int end,
                  double fps);

}  // namespace fmc

#endif  // FMC_RATE_CONTROL_H_
