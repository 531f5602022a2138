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

// Conditional-coding pipeline with temporal state propagation and periodic
// refresh.
//
// All frame-level functions work on kYuv444R frames with samples in
// [0, 255]. The sequence layer converts from and to the container pixel
// format (yuv420p via chroma resampling, rgb24 via BT.709).

#ifndef FMC_CODEC_H_
#define FMC_CODEC_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fmc/container.h"
#include "fmc/frame.h"
#include "fmc/motion.h"
#include "fmc/quant.h"
#include "fmc/raw_io.h"
#include "fmc/syntax.h"

namespace fmc {

struct CodecConfig {
  int refresh_period = 32;  // 0 disables refresh
  int intra_period = -1;    // -1: only frame 0 is intra
  // context = blend * warp(recon_prev) + (1 - blend) * warp(acc_ref)
  double context_blend = 0.5;
  // acc_ref = ema_keep * warp(acc_ref) + (1 - ema_keep) * recon
  double ema_keep = 0.8;
  int search_range = kDefaultSearchRange;

  void Validate() const;
};

struct TemporalState {
  Frame recon_prev;
  Frame acc_ref;
  MotionField mv_pred;
  CoeffContexts contexts;

  bool operator==(const TemporalState&) const = default;
};

struct FrameCodingDecision {
  FrameType frame_type = FrameType::kIntra;
  int q = 0;
  bool refresh_flag = false;
};

bool RefreshFlag(int t, int refresh_period);
FrameCodingDecision DecideFrame(int t, int q, const CodecConfig& config);

// State seen by a refresh frame: acc_ref = recon_prev, zero mv_pred, fresh
// contexts.
TemporalState ApplyRefresh(const TemporalState& state);

Frame ExtractContext(const TemporalState& state, const MotionField& mv,
                     bool refresh, const CodecConfig& config = {});

struct CodedFrame {
  FrameRecord record;
  TemporalState state;
  Frame recon;  // kYuv444R, equal to state.recon_prev
};

CodedFrame EncodeIntraFrame(const Frame& x, int q,
                            const QuantSchedule& schedule);
CodedFrame EncodeInterFrame(const Frame& x, const TemporalState& state,
                            const FrameCodingDecision& decision,
                            const QuantSchedule& schedule,
                            const CodecConfig& config = {});

struct DecodedFrame {
  Frame recon;
  TemporalState state;
};

DecodedFrame DecodeIntraFrame(const FrameRecord& record, int width,
                              int height, const QuantSchedule& schedule);
DecodedFrame DecodeInterFrame(const FrameRecord& record,
                              const TemporalState& state,
                              const QuantSchedule& schedule,
                              const CodecConfig& config = {});

// Container pixel format <-> working kYuv444R.
Frame ToWorkingFormat(const Frame& input);
Frame FromWorkingFormat(const Frame& recon, RawFormat format);

struct FrameLog {
  int t = 0;
  FrameType type = FrameType::kIntra;
  int q = 0;
  bool refresh = false;
  uint64_t bits = 0;  // record header + payloads
  double psnr_weighted = 0.0;
};

// Supplies q per frame and receives the coded size; the rate controller
// implements this.
using QProvider = std::function<int(int t)>;
using BitsObserver = std::function<void(int t, uint64_t bits)>;

class SequenceEncoder {
 public:
  SequenceEncoder(int width, int height, RawFormat format, Rational fps,
                  const QuantSchedule& schedule, const CodecConfig& config);

  // `input` is kYuv420P8 for yuv420p and kRgbR for rgb24.
  FrameLog EncodeFrame(const Frame& input, int q);

  const Bitstream& bitstream() const { return bitstream_; }
  // Decoder-visible output of the last frame, in the container format.
  const Frame& last_output() const { return last_output_; }
  const TemporalState& state() const { return state_; }
  int frames_coded() const { return t_; }

 private:
  QuantSchedule schedule_;
  CodecConfig config_;
  RawFormat format_;
  Bitstream bitstream_;
  TemporalState state_;
  Frame last_output_;
  int t_ = 0;
};

struct SequenceResult {
  Bitstream bitstream;
  std::vector<Frame> recon;  // container format, 8-bit
  std::vector<FrameLog> log;
};

SequenceResult EncodeSequence(std::span<const Frame> frames,
                              RawFormat format, Rational fps, int q,
                              const QuantSchedule& schedule,
                              const CodecConfig& config = {});
// q comes from `q_for` and every coded size is reported to `observe`.
SequenceResult EncodeSequence(std::span<const Frame> frames,
                              RawFormat format, Rational fps,
                              const QProvider& q_for,
                              const BitsObserver& observe,
                              const QuantSchedule& schedule,
                              const CodecConfig& config = {});

// Throws kFormat when the schedule digest does not match the header.
Clip DecodeSequence(const Bitstream& bitstream, const QuantSchedule& schedule,
                    const CodecConfig& config = {});

}  // namespace fmc

#endif  // FMC_CODEC_H_
