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

#include "fmc/rate_control.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "fmc/error.h"

namespace fmc {

RateControlState RcUpdate(const RateControlState& state, double cfs) {
  RateControlState s = state;
  ++s.fidx;
  s.cbs += cfs;
  s.cbs -= state.afs;
  if (state.fidx % 2 == 1) return s;

  const double buff_diff = s.cbs - s.tbs;
  s.tbs = s.cbs * 0.95;
  const double cbs = s.cbs;
  if (buff_diff > 0) {
    if (cbs > 10 * cfs) {
      s.q -= 12;
    } else if (cbs > 5 * cfs) {
      s.q -= 6;
    } else if (cbs > 2 * cfs) {
      s.q -= 2;
    } else if (buff_diff > 0.5 * cfs && cbs > -cfs) {
      s.q -= 1;
    }
  } else if (buff_diff < 0) {
    if (cbs < -10 * cfs) {
      s.q += 12;
    } else if (cbs < -5 * cfs) {
      s.q += 6;
    } else if (cbs < -2 * cfs) {
      s.q += 2;
    } else if (buff_diff < -0.5 * cfs && cbs < cfs) {
      s.q += 1;
    }
  }
  s.q = std::clamp(s.q, kRcMinQ, kRcMaxQ);
  return s;
}

TargetSchedule ParseTargetSchedule(std::string_view text) {
  TargetSchedule out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(pos, end - pos);
    const size_t colon = item.find(':');
    if (colon == std::string_view::npos) {
      Fail(ErrorCode::kInvalidArgument,
           "target schedule entry '" + std::string(item) +
               "' is not frame:bps");
    }
    TargetSegment seg;
    const std::string_view f = item.substr(0, colon);
    const std::string_view b = item.substr(colon + 1);
    auto r1 = std::from_chars(f.data(), f.data() + f.size(), seg.frame);
    auto r2 = std::from_chars(b.data(), b.data() + b.size(), seg.bps);
    if (r1.ec != std::errc() || r1.ptr != f.data() + f.size() ||
        r2.ec != std::errc() || r2.ptr != b.data() + b.size()) {
      Fail(ErrorCode::kInvalidArgument,
           "target schedule entry '" + std::string(item) +
               "' is not frame:bps");
    }
    out.push_back(seg);
    pos = end + 1;
  }
  Require(!out.empty() && out.front().frame == 0,
          "target schedule must start at frame 0");
  for (size_t i = 0; i < out.size(); ++i) {
    Require(std::isfinite(out[i].bps) && out[i].bps > 0,
            "target bitrate must be positive");
    Require(i == 0 || out[i].frame > out[i - 1].frame,
            "target schedule frames must increase");
  }
  return out;
}

double TargetAt(const TargetSchedule& schedule, int frame) {
  double bps = schedule.front().bps;
  for (const TargetSegment& seg : schedule) {
    if (seg.frame <= frame) bps = seg.bps;
  }
  return bps;
}

RateController::RateController(TargetSchedule targets, double fps)
    : targets_(std::move(targets)), fps_(fps) {
  Require(!targets_.empty() && targets_.front().frame == 0,
          "target schedule must start at frame 0");
  Require(fps_ > 0, "fps must be positive");
}

int RateController::NextQ(int t) {
  state_.afs = TargetAt(targets_, t) / fps_;
  state_.fidx = t;
  return state_.q;
}

void RateController::Report(int t, uint64_t bits) {
  Require(t == state_.fidx, "rate controller frames reported out of order");
  state_ = RcUpdate(state_, static_cast<double>(bits));
}

RcRunResult RunRateControl(std::span<const Frame> frames, RawFormat format,
                           Rational fps, const TargetSchedule& targets,
                           const QuantSchedule& schedule,
                           const CodecConfig& config) {
  RateController rc(targets, fps.value());
  RcRunResult out;
  out.sequence = EncodeSequence(
      frames, format, fps, [&rc](int t) { return rc.NextQ(t); },
      [&rc](int t, uint64_t bits) { rc.Report(t, bits); }, schedule, config);
  uint64_t total = 0;
  int pinned = 0;
  for (const FrameLog& f : out.sequence.log) {
    RcLogEntry e;
    e.frame = f.t;
    e.q = f.q;
    e.bits = f.bits;
    total += f.bits;
    e.cum_avg_bps = static_cast<double>(total) / (f.t + 1) * fps.value();
    e.target_bps = TargetAt(targets, f.t);
    e.psnr_weighted = f.psnr_weighted;
    pinned = (f.q == kRcMinQ || f.q == kRcMaxQ) ? pinned + 1 : 0;
    if (pinned > kRcPinnedLimit) out.unreachable = true;
    e.unreachable = out.unreachable;
    out.log.push_back(e);
  }
  out.realized_bps = out.log.empty() ? 0.0 : out.log.back().cum_avg_bps;
  return out;
}

double AverageBps(std::span<const RcLogEntry> log, int begin, int end,
                  double fps) {
  Require(begin >= 0 && begin < end && end <= static_cast<int>(log.size()),
          "invalid frame range");
  uint64_t bits = 0;
  for (int i = begin; i < end; ++i) bits += log[i].bits;
  return static_cast<double>(bits) / (end - begin) * fps;
}

}  // namespace fmc
