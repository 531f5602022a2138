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

#include "fmc/codec.h"

#include <algorithm>
#include <string>

#include "fmc/bac.h"
#include "fmc/color.h"
#include "fmc/dct.h"
#include "fmc/error.h"
#include "fmc/quality.h"
#include "fmc/spatial_scaler.h"
#include "fmc/warp.h"

namespace fmc {
namespace {

constexpr float kMaxSample = 255.0f;

void RequireWorking(const Frame& f, const char* what) {
  if (f.format() != PixelFormat::kYuv444R) {
    Fail(ErrorCode::kInvalidArgument,
         std::string(what) + " must be a 4:4:4 working frame");
  }
}

void RequireSameDims(const Frame& a, const Frame& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    Fail(ErrorCode::kInvalidArgument, "frame dimensions do not match state");
  }
}

Frame Blend(const Frame& a, const Frame& b, float wa) {
  const float wb = 1.0f - wa;
  Frame out(a.width(), a.height(), a.format());
  for (int p = 0; p < 3; ++p) {
    auto dst = out.plane(p).samples();
    auto sa = a.plane(p).samples();
    auto sb = b.plane(p).samples();
    for (size_t i = 0; i < dst.size(); ++i) dst[i] = wa * sa[i] + wb * sb[i];
  }
  return out;
}

// Produces the levels of one block. Encoder quantizes (and writes) the
// residual; decoder reads them. `residual` is null on the decoder side.
using LevelSource =
    std::function<LevelBlock(int plane_class, const Block8x8* residual,
                             double s_enc, double w)>;

// Shared residual loop: per plane, per 8x8 block in raster order. The
// reconstruction is context + dequantized residual, clamped to [0, 255].
Frame CodeResidual(const Frame& context, const Frame* x, bool adaptive_w,
                   int q, const QuantSchedule& schedule,
                   const LevelSource& levels_for) {
  const double s_enc = EncoderScaler(q, schedule);
  const double s_dec = DecoderScaler(q, schedule);
  Frame recon = context;
  for (int p = 0; p < 3; ++p) {
    const Plane& ctx = context.plane(p);
    Plane& out = recon.plane(p);
    const int bw = BlocksFor(ctx.width());
    const int bh = BlocksFor(ctx.height());
    const SpatialScalerMap weights =
        adaptive_w ? DeriveSpatialScalers(ctx) : SpatialScalerMap(bw, bh, 1.0);
    const int plane_class = p == 0 ? 0 : 1;
    for (int by = 0; by < bh; ++by) {
      for (int bx = 0; bx < bw; ++bx) {
        const int x0 = bx * kTransformBlock;
        const int y0 = by * kTransformBlock;
        const double w = weights.at(bx, by);
        LevelBlock levels;
        if (x != nullptr) {
          const Plane& src = x->plane(p);
          Block8x8 residual;
          for (int j = 0; j < kTransformBlock; ++j) {
            for (int i = 0; i < kTransformBlock; ++i) {
              residual[j * kTransformBlock + i] =
                  static_cast<double>(src.clamped(x0 + i, y0 + j)) -
                  static_cast<double>(ctx.clamped(x0 + i, y0 + j));
            }
          }
          levels = levels_for(plane_class, &residual, s_enc, w);
        } else {
          levels = levels_for(plane_class, nullptr, s_enc, w);
        }
        if (std::all_of(levels.begin(), levels.end(),
                        [](int32_t l) { return l == 0; })) {
          continue;
        }
        const Block8x8 rec = Dct8Inverse(DequantizeLatent(levels, s_dec, w));
        for (int j = 0; j < kTransformBlock && y0 + j < ctx.height(); ++j) {
          for (int i = 0; i < kTransformBlock && x0 + i < ctx.width(); ++i) {
            const double v = static_cast<double>(ctx.at(x0 + i, y0 + j)) +
                             rec[j * kTransformBlock + i];
            out.at(x0 + i, y0 + j) = static_cast<float>(
                std::clamp(v, 0.0, static_cast<double>(kMaxSample)));
          }
        }
      }
    }
  }
  return recon;
}

LevelSource EncoderSource(BacEncoder& enc, CoeffContexts& ctx) {
  return [&enc, &ctx](int plane_class, const Block8x8* residual, double s_enc,
                      double w) {
    const LevelBlock levels = QuantizeLatent(Dct8Forward(*residual), s_enc, w);
    EncodeCoeffBlock(enc, ctx, plane_class, levels);
    return levels;
  };
}

LevelSource DecoderSource(BacDecoder& dec, CoeffContexts& ctx) {
  return [&dec, &ctx](int plane_class, const Block8x8*, double, double) {
    return DecodeCoeffBlock(dec, ctx, plane_class);
  };
}

TemporalState NextState(const TemporalState& coding_state, const Frame& recon,
                        const MotionField& mv, bool refresh,
                        const CoeffContexts& contexts,
                        const CodecConfig& config) {
  TemporalState next;
  next.recon_prev = recon;
  if (refresh) {
    next.acc_ref = recon;
  } else {
    next.acc_ref = Blend(WarpFrame(coding_state.acc_ref, mv), recon,
                         static_cast<float>(config.ema_keep));
  }
  next.mv_pred = mv;
  next.contexts = contexts;
  return next;
}

TemporalState IntraState(const Frame& recon, const CoeffContexts& contexts) {
  TemporalState s;
  s.recon_prev = recon;
  s.acc_ref = recon;
  s.mv_pred = MotionField::ForFrame(recon.width(), recon.height());
  s.contexts = contexts;
  return s;
}

void RequireQ(int q, const QuantSchedule& schedule) {
  if (q < 0 || q >= schedule.q_num) {
    Fail(ErrorCode::kInvalidArgument,
         "q " + std::to_string(q) + " outside [0, " +
             std::to_string(schedule.q_num - 1) + "]");
  }
}

}  // namespace

void CodecConfig::Validate() const {
  Require(refresh_period >= 0 && refresh_period <= 65535,
          "refresh_period must be in [0, 65535]");
  Require(intra_period == -1 || intra_period > 0,
          "intra_period must be -1 or positive");
  Require(context_blend >= 0.0 && context_blend <= 1.0,
          "context_blend must be in [0, 1]");
  Require(ema_keep >= 0.0 && ema_keep <= 1.0, "ema_keep must be in [0, 1]");
  Require(search_range >= 0 && search_range <= 256,
          "search_range must be in [0, 256]");
}

bool RefreshFlag(int t, int refresh_period) {
  return refresh_period > 0 && t > 0 && t % refresh_period == 0;
}

FrameCodingDecision DecideFrame(int t, int q, const CodecConfig& config) {
  FrameCodingDecision d;
  d.q = q;
  const bool intra =
      t == 0 || (config.intra_period > 0 && t % config.intra_period == 0);
  d.frame_type = intra ? FrameType::kIntra : FrameType::kInter;
  d.refresh_flag = !intra && RefreshFlag(t, config.refresh_period);
  return d;
}

TemporalState ApplyRefresh(const TemporalState& state) {
  TemporalState s = state;
  s.acc_ref = state.recon_prev;
  s.mv_pred = MotionField(state.mv_pred.blocks_x(), state.mv_pred.blocks_y());
  s.contexts.Reset();
  return s;
}

Frame ExtractContext(const TemporalState& state, const MotionField& mv,
                     bool refresh, const CodecConfig& config) {
  const Frame warped_recon = WarpFrame(state.recon_prev, mv);
  if (refresh) return warped_recon;
  return Blend(warped_recon, WarpFrame(state.acc_ref, mv),
               static_cast<float>(config.context_blend));
}

CodedFrame EncodeIntraFrame(const Frame& x, int q,
                            const QuantSchedule& schedule) {
  RequireWorking(x, "intra input");
  RequireQ(q, schedule);
  const Frame zero(x.width(), x.height(), PixelFormat::kYuv444R);
  CoeffContexts contexts;
  BacEncoder enc;
  CodedFrame out;
  out.recon =
      CodeResidual(zero, &x, false, q, schedule, EncoderSource(enc, contexts));
  out.record.frame_type = FrameType::kIntra;
  out.record.q = static_cast<uint8_t>(q);
  out.record.coeff = enc.Finish();
  out.state = IntraState(out.recon, contexts);
  return out;
}

DecodedFrame DecodeIntraFrame(const FrameRecord& record, int width,
                              int height, const QuantSchedule& schedule) {
  if (record.frame_type != FrameType::kIntra) {
    Fail(ErrorCode::kFormat, "expected an intra record");
  }
  if (!record.motion.empty()) {
    Fail(ErrorCode::kCorrupt, "intra record carries a motion payload");
  }
  RequireQ(record.q, schedule);
  const Frame zero(width, height, PixelFormat::kYuv444R);
  CoeffContexts contexts;
  BacDecoder dec(record.coeff);
  DecodedFrame out;
  out.recon = CodeResidual(zero, nullptr, false, record.q, schedule,
                           DecoderSource(dec, contexts));
  dec.Finish();
  out.state = IntraState(out.recon, contexts);
  return out;
}

CodedFrame EncodeInterFrame(const Frame& x, const TemporalState& state,
                            const FrameCodingDecision& decision,
                            const QuantSchedule& schedule,
                            const CodecConfig& config) {
  Require(decision.frame_type == FrameType::kInter,
          "EncodeInterFrame needs an inter decision");
  RequireWorking(x, "inter input");
  RequireSameDims(x, state.recon_prev);
  RequireQ(decision.q, schedule);
  const bool refresh = decision.refresh_flag;
  const TemporalState coding = refresh ? ApplyRefresh(state) : state;
  const bool coarse = UsesCoarseMotion(decision.q, schedule.q_num);

  MotionSearchOptions opts;
  opts.search_range = config.search_range;
  opts.half_pel = !coarse;
  const MotionField estimated = EstimateMotion(x, coding.recon_prev, opts);
  BacEncoder motion_enc;
  const MotionField mv =
      EncodeMotionField(motion_enc, estimated, coding.mv_pred, coarse);

  const Frame context = ExtractContext(coding, mv, refresh, config);
  CoeffContexts contexts = coding.contexts;
  BacEncoder coeff_enc;
  CodedFrame out;
  out.recon = CodeResidual(context, &x, true, decision.q, schedule,
                           EncoderSource(coeff_enc, contexts));
  out.record.frame_type = FrameType::kInter;
  out.record.q = static_cast<uint8_t>(decision.q);
  out.record.refresh_flag = refresh;
  out.record.motion = motion_enc.Finish();
  out.record.coeff = coeff_enc.Finish();
  out.state = NextState(coding, out.recon, mv, refresh, contexts, config);
  return out;
}

DecodedFrame DecodeInterFrame(const FrameRecord& record,
                              const TemporalState& state,
                              const QuantSchedule& schedule,
                              const CodecConfig& config) {
  if (record.frame_type != FrameType::kInter) {
    Fail(ErrorCode::kFormat, "expected an inter record");
  }
  RequireQ(record.q, schedule);
  const bool refresh = record.refresh_flag;
  const TemporalState coding = refresh ? ApplyRefresh(state) : state;
  const bool coarse = UsesCoarseMotion(record.q, schedule.q_num);

  BacDecoder motion_dec(record.motion);
  const MotionField mv = DecodeMotionField(motion_dec, coding.mv_pred, coarse);
  motion_dec.Finish();

  const Frame context = ExtractContext(coding, mv, refresh, config);
  CoeffContexts contexts = coding.contexts;
  BacDecoder coeff_dec(record.coeff);
  DecodedFrame out;
  out.recon = CodeResidual(context, nullptr, true, record.q, schedule,
                           DecoderSource(coeff_dec, contexts));
  coeff_dec.Finish();
  out.state = NextState(coding, out.recon, mv, refresh, contexts, config);
  return out;
}

Frame ToWorkingFormat(const Frame& input) {
  switch (input.format()) {
    case PixelFormat::kYuv420P8:
      return ChromaUpsample(input);
    case PixelFormat::kRgbR:
      return RgbToYuv444(input);
    case PixelFormat::kYuv444R:
      return input;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown pixel format");
}

Frame FromWorkingFormat(const Frame& recon, RawFormat format) {
  Frame out = format == RawFormat::kYuv420p ? ChromaDownsample(recon)
                                            : Yuv444ToRgb(recon);
  RoundToEightBit(out);
  return out;
}

SequenceEncoder::SequenceEncoder(int width, int height, RawFormat format,
                                 Rational fps, const QuantSchedule& schedule,
                                 const CodecConfig& config)
    : schedule_(schedule), config_(config), format_(format) {
  schedule_.Validate();
  config_.Validate();
  Require(width >= kMinFrameDim && height >= kMinFrameDim,
          "frame dimensions below 16");
  Require(fps.num > 0 && fps.den > 0, "fps must be positive");
  Require(schedule_.q_num <= 255, "q_num must fit in one byte");
  SequenceHeader& h = bitstream_.header;
  h.width = static_cast<uint32_t>(width);
  h.height = static_cast<uint32_t>(height);
  h.pix_fmt = static_cast<uint8_t>(format);
  h.fps_num = fps.num;
  h.fps_den = fps.den;
  h.refresh_period = static_cast<uint16_t>(config_.refresh_period);
  h.q_num = static_cast<uint8_t>(schedule_.q_num);
  h.schedule_digest = schedule_.Digest();
}

FrameLog SequenceEncoder::EncodeFrame(const Frame& input, int q) {
  if (input.format() != FramePixelFormat(format_) ||
      input.width() != static_cast<int>(bitstream_.header.width) ||
      input.height() != static_cast<int>(bitstream_.header.height)) {
    Fail(ErrorCode::kInvalidArgument,
         "input frame " + std::to_string(t_) +
             " does not match the sequence format or size");
  }
  const Frame x = ToWorkingFormat(input);
  const FrameCodingDecision d = DecideFrame(t_, q, config_);
  CodedFrame coded = d.frame_type == FrameType::kIntra
                         ? EncodeIntraFrame(x, q, schedule_)
                         : EncodeInterFrame(x, state_, d, schedule_, config_);
  last_output_ = FromWorkingFormat(coded.recon, format_);
  FrameLog log;
  log.t = t_;
  log.type = d.frame_type;
  log.q = q;
  log.refresh = d.refresh_flag;
  log.bits = 8 * coded.record.SizeBytes();
  log.psnr_weighted = ComputeQuality(input, last_output_).psnr_weighted;
  bitstream_.records.push_back(std::move(coded.record));
  state_ = std::move(coded.state);
  ++t_;
  return log;
}

SequenceResult EncodeSequence(std::span<const Frame> frames,
                              RawFormat format, Rational fps, int q,
                              const QuantSchedule& schedule,
                              const CodecConfig& config) {
  return EncodeSequence(
      frames, format, fps, [q](int) { return q; }, nullptr, schedule, config);
}

SequenceResult EncodeSequence(std::span<const Frame> frames,
                              RawFormat format, Rational fps,
                              const QProvider& q_for,
                              const BitsObserver& observe,
                              const QuantSchedule& schedule,
                              const CodecConfig& config) {
  Require(!frames.empty(), "cannot encode an empty sequence");
  SequenceEncoder encoder(frames[0].width(), frames[0].height(), format, fps,
                          schedule, config);
  SequenceResult result;
  for (size_t t = 0; t < frames.size(); ++t) {
    const FrameLog log =
        encoder.EncodeFrame(frames[t], q_for(static_cast<int>(t)));
    if (observe) observe(log.t, log.bits);
    result.log.push_back(log);
    result.recon.push_back(encoder.last_output());
  }
  result.bitstream = encoder.bitstream();
  return result;
}

Clip DecodeSequence(const Bitstream& bitstream, const QuantSchedule& schedule,
                    const CodecConfig& config) {
  const SequenceHeader& h = bitstream.header;
  schedule.Validate();
  if (h.q_num != schedule.q_num || h.schedule_digest != schedule.Digest()) {
    Fail(ErrorCode::kFormat,
         "bitstream was produced with a different quantization schedule");
  }
  CodecConfig cfg = config;
  cfg.refresh_period = h.refresh_period;
  Clip clip;
  clip.fps = {h.fps_num, h.fps_den};
  clip.format = static_cast<RawFormat>(h.pix_fmt);
  const int w = static_cast<int>(h.width);
  const int ht = static_cast<int>(h.height);
  TemporalState state;
  for (size_t t = 0; t < bitstream.records.size(); ++t) {
    const FrameRecord& r = bitstream.records[t];
    DecodedFrame d;
    if (r.frame_type == FrameType::kIntra) {
      d = DecodeIntraFrame(r, w, ht, schedule);
    } else {
      if (t == 0) Fail(ErrorCode::kFormat, "first record must be intra");
      if (r.refresh_flag != RefreshFlag(static_cast<int>(t), h.refresh_period)) {
        Fail(ErrorCode::kCorrupt, "refresh flag of frame " +
                                      std::to_string(t) +
                                      " contradicts the refresh period");
      }
      d = DecodeInterFrame(r, state, schedule, cfg);
    }
    clip.frames.push_back(FromWorkingFormat(d.recon, clip.format));
    state = std::move(d.state);
  }
  return clip;
}

}  // namespace fmc
