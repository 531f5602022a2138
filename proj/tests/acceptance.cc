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

// Acceptance suite. Prints one PASS/FAIL line per criterion. Usage:
//   fmc_acceptance                 run all criteria
//   fmc_acceptance --criterion N   run criterion N only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fmc/bac.h"
#include "fmc/bdrate.h"
#include "fmc/codec.h"
#include "fmc/color.h"
#include "fmc/error.h"
#include "fmc/eval.h"
#include "fmc/quality.h"
#include "fmc/quant.h"
#include "fmc/rate_control.h"
#include "fmc/synth.h"
#include "fmc/warp.h"
#include "test_util.h"

namespace fmc {
namespace {

// Pinned tolerances and limits.
constexpr double kLambdaRelTol = 1e-9;
constexpr double kLogLinearTol = 1e-12;
constexpr int kRcFuzzUpdates = 100000;
constexpr double kRcBitrateTol = 0.10;
constexpr double kRcHighTarget = 400000.0;
constexpr double kRcLowTarget = 120000.0;
constexpr int kRcStepFrame = 150;
constexpr int kRcReconvergeFrames = 100;
constexpr double kMinSpearman = 0.99;
constexpr double kMinQualityRange = 8.0;
constexpr double kMinRefreshGainDb = 0.1;
constexpr double kRefreshBitsTol = 0.05;
constexpr double kWarpAbsMinRatio = 0.05;
constexpr double kWarpRelMaxRatio = 0.005;
constexpr double kWarpSeparation = 10.0;
constexpr double kBdShiftTol = 1e-6;
constexpr double kBdOracleTol = 0.05;
constexpr int kBdOracleSamples = 100000;
constexpr int kEntropyTrials = 100000;
constexpr double kEntropyRelSlack = 0.02;
constexpr double kEntropyAbsSlackBits = 256.0;
constexpr double kColorMaxErr = 1.0;
constexpr double kOffByOnePsnr = 48.131;
constexpr double kOffByOneTol = 1e-3;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

Clip BundledClip(int frames, RawFormat format = RawFormat::kYuv420p) {
  SynthOptions o;  // 128x96 pan, seed 1
  o.frames = frames;
  o.format = format;
  return GenerateClip(o);
}

// 1. Lambda and scaler interpolation.
Outcome Criterion1() {
  const QuantSchedule s;
  const double l0 = LambdaForQ(0, s);
  const double l63 = LambdaForQ(63, s);
  const double l21 = LambdaForQ(21, s);
  const double want21 = std::cbrt(768.0);
  bool ok = l0 == 1.0 && l63 == 768.0 &&
            std::fabs(l21 / want21 - 1.0) <= kLambdaRelTol;
  double worst = 0.0;
  for (auto [lo, hi] : {std::pair{1.0 / 48, 1.0}, std::pair{48.0, 1.0},
                        std::pair{0.5, 8.0}}) {
    ok = ok && ScalerForQ(0, lo, hi, 64) == lo && ScalerForQ(63, lo, hi, 64) == hi;
    for (int q = 0; q < 64; ++q) {
      const double want = std::exp(std::log(lo) + q / 63.0 * std::log(hi / lo));
      worst = std::max(worst,
                       std::fabs(ScalerForQ(q, lo, hi, 64) / want - 1.0));
    }
  }
  ok = ok && worst <= kLogLinearTol;
  ok = ok && EncoderScaler(0, s) == s.s_enc_min &&
       EncoderScaler(63, s) == s.s_enc_max &&
       DecoderScaler(0, s) == s.s_dec_min && DecoderScaler(63, s) == s.s_dec_max;
  return {ok, Format("lambda(0)=%.12g lambda(63)=%.12g lambda(21)=%.12g "
                     "(want %.12g) log-linear max rel err %.2e",
                     l0, l63, l21, want21, worst)};
}

// 2. Rate-control update golden vectors and fuzzing.
Outcome Criterion2() {
  auto make = [](double cbs, double tbs, int q, double afs, int64_t fidx) {
    RateControlState st;
    st.cbs = cbs;
    st.tbs = tbs;
    st.q = q;
    st.afs = afs;
    st.fidx = fidx;
    return st;
  };
  int golden = 0;
  RateControlState a = RcUpdate(make(0, 0, 32, 100, 1), 100);
  golden += a.cbs == 0 && a.tbs == 0 && a.q == 32 && a.fidx == 2;
  RateControlState b = RcUpdate(make(0, 0, 32, 100, 2), 50);
  golden += b.cbs == -50 && b.tbs == -47.5 && b.q == 33;
  RateControlState c = RcUpdate(make(900, 0, 32, 100, 4), 200);
  golden += c.cbs == 1000 && c.tbs == 950 && c.q == 30;

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> big(-1e6, 1e6);
  std::uniform_real_distribution<double> pos(0.0, 2e5);
  RateControlState s;
  int violations = 0;
  for (int i = 0; i < kRcFuzzUpdates; ++i) {
    if (i % 1000 == 0) {
      s = make(big(rng), big(rng), static_cast<int>(rng() % 64), pos(rng),
               static_cast<int64_t>(rng() % 1000));
    }
    const RateControlState r = RcUpdate(s, pos(rng));
    if (r.q < 0 || r.q > 63) ++violations;
    if (s.fidx % 2 == 1 && (r.q != s.q || r.tbs != s.tbs)) ++violations;
    if (r.fidx != s.fidx + 1) ++violations;
    s = r;
  }
  return {golden == 3 && violations == 0,
          Format("golden %d/3, %d fuzzed updates, %d violations", golden,
                 kRcFuzzUpdates, violations)};
}

// 3. Rate-control convergence on the 300-frame clip.
Outcome Criterion3() {
  const Clip clip = BundledClip(300);
  const double fps = clip.fps.value();
  const QuantSchedule s;
  bool ok = true;
  std::string detail;
  for (double target : {kRcHighTarget, kRcLowTarget}) {
    const RcRunResult r = RunRateControl(clip.frames, clip.format, clip.fps,
                                         {{0, target}}, s);
    const double bps = AverageBps(r.log, 100, 300, fps);
    const double err = bps / target - 1.0;
    ok = ok && std::fabs(err) <= kRcBitrateTol && !r.unreachable;
    detail += Format("target %.0f: last-200 %.0f bps (%+.1f%%); ", target, bps,
                     100 * err);
  }
  const RcRunResult step = RunRateControl(
      clip.frames, clip.format, clip.fps,
      {{0, kRcHighTarget}, {kRcStepFrame, kRcHighTarget / 4}}, s);
  const int from = kRcStepFrame + kRcReconvergeFrames;
  const double after = AverageBps(step.log, from, 300, fps);
  const double err = after / (kRcHighTarget / 4) - 1.0;
  const int q_before = step.log[kRcStepFrame - 1].q;
  const int q_after = step.log[from].q;
  ok = ok && std::fabs(err) <= kRcBitrateTol && q_after < q_before;
  detail += Format("step 400k->100k at %d: frames [%d,300) %.0f bps (%+.1f%%), "
                   "q %d -> %d",
                   kRcStepFrame, from, after, 100 * err, q_before, q_after);
  return {ok, detail};
}

// 4. Decoder output equals encoder reconstruction.
Outcome Criterion4() {
  const QuantSchedule s;
  int cases = 0, exact = 0;
  for (RawFormat fmt : {RawFormat::kYuv420p, RawFormat::kRgb24}) {
    const Clip clip = BundledClip(64, fmt);
    for (int q : {0, 21, 42, 63}) {
      for (int refresh : {0, 32}) {
        CodecConfig cfg;
        cfg.refresh_period = refresh;
        const SequenceResult enc =
            EncodeSequence(clip.frames, clip.format, clip.fps, q, s, cfg);
        const Bitstream parsed = ParseBitstream(SerializeBitstream(enc.bitstream));
        const Clip dec = DecodeSequence(parsed, s, cfg);
        ++cases;
        exact += dec.frames == enc.recon && dec.format == fmt;
      }
    }
  }
  return {exact == cases,
          Format("%d/%d configurations bit-exact (64 frames each)", exact,
                 cases)};
}

// 5. Smooth, wide quality range over all q levels.
Outcome Criterion5() {
  const Clip clip = BundledClip(32);
  const QuantSchedule s;
  std::vector<int> qs(s.q_num);
  for (int q = 0; q < s.q_num; ++q) qs[q] = q;
  const RdCurve curve =
      CollectRdCurve(clip.frames, clip.format, clip.fps, qs, s, {}, "bundled");
  std::vector<double> q, bpp, psnr;
  double lo = 1e300, hi = -1e300;
  for (const RdPoint& p : curve.points) {
    q.push_back(p.q);
    bpp.push_back(p.bpp);
    psnr.push_back(p.quality);
    lo = std::min(lo, p.quality);
    hi = std::max(hi, p.quality);
  }
  const double rho_bpp = fmc::testing::Spearman(q, bpp);
  const double rho_psnr = fmc::testing::Spearman(q, psnr);
  const double range = hi - lo;
  return {rho_bpp >= kMinSpearman && rho_psnr >= kMinSpearman &&
              range >= kMinQualityRange,
          Format("spearman(q,bpp)=%.4f spearman(q,psnr)=%.4f quality range "
                 "%.2f dB (%.2f..%.2f)",
                 rho_bpp, rho_psnr, range, lo, hi)};
}

// 6. Refresh ablation at matched q.
Outcome Criterion6() {
  const Clip clip = BundledClip(200);
  const QuantSchedule s;
  constexpr int kQ = 32;
  auto run = [&](int period, double& last_quartile, double& bits) {
    CodecConfig cfg;
    cfg.refresh_period = period;
    const SequenceResult r =
        EncodeSequence(clip.frames, clip.format, clip.fps, kQ, s, cfg);
    last_quartile = MakeDriftReport(r.log).last_quartile_mean;
    bits = 0;
    for (const FrameLog& f : r.log) bits += static_cast<double>(f.bits);
  };
  double psnr32, bits32, psnr0, bits0;
  run(32, psnr32, bits32);
  run(0, psnr0, bits0);
  const double gain = psnr32 - psnr0;
  const double bits_change = bits32 / bits0 - 1.0;
  return {gain >= kMinRefreshGainDb && std::fabs(bits_change) <= kRefreshBitsTol,
          Format("q=%d last-quartile PSNR period32 %.3f dB vs period0 %.3f dB "
                 "(gain %+.3f, need >= %.1f), bits %+.2f%%",
                 kQ, psnr32, psnr0, gain, kMinRefreshGainDb,
                 100 * bits_change)};
}

// 7. Half-precision warp separation at 1080p.
Outcome Criterion7() {
  const Frame ref = RandomUnitFrame(1920, 1080, 1);
  const MotionField mv = RandomMotionField(1920, 1080, 64, 2);
  const WarpErrorStats abs = WarpErrorRatio(ref, mv, WarpPrecision::kFp16Absolute);
  const WarpErrorStats rel =
      WarpErrorRatio(ref, mv, WarpPrecision::kFp16RelativeOffset);
  // A zero relative-mode ratio makes the separation unbounded.
  const bool separated = rel.error_ratio == 0.0
                             ? abs.error_ratio > 0.0
                             : abs.error_ratio / rel.error_ratio > kWarpSeparation;
  const std::string sep =
      rel.error_ratio == 0.0
          ? std::string("inf")
          : Format("%.1f", abs.error_ratio / rel.error_ratio);
  return {abs.error_ratio > kWarpAbsMinRatio &&
              rel.error_ratio < kWarpRelMaxRatio && separated,
          Format("fp16_absolute %.3f%%, fp16_relative %.4f%%, separation %sx",
                 100 * abs.error_ratio, 100 * rel.error_ratio, sep.c_str())};
}

RdCurve RandomCurve(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dq(0.3, 4.0), dr(0.05, 0.9);
  std::uniform_real_distribution<double> q0(25.0, 35.0), r0(-4.0, -1.0);
  RdCurve c;
  double q = q0(rng), lr = r0(rng);
  for (int i = 0; i < 6; ++i) {
    c.points.push_back({std::exp(lr), q, i});
    q += dq(rng);
    lr += dr(rng);
  }
  return c;
}

double OracleBdRate(const RdCurve& a, const RdCurve& b) {
  auto interp = [](const RdCurve& c) {
    std::vector<double> x, y;
    for (const RdPoint& p : c.points) {
      x.push_back(p.quality);
      y.push_back(std::log(p.bpp));
    }
    return fmc::testing::HermiteOracle(x, y);
  };
  const auto ia = interp(a), ib = interp(b);
  const double lo = std::max(a.points.front().quality, b.points.front().quality);
  const double hi = std::min(a.points.back().quality, b.points.back().quality);
  double sum = 0.0;
  for (int i = 0; i < kBdOracleSamples; ++i) {
    const double q = lo + (hi - lo) * (i + 0.5) / kBdOracleSamples;
    sum += ib(q) - ia(q);
  }
  return (std::exp(sum / kBdOracleSamples) - 1.0) * 100.0;
}

// 8. BD-Rate tool.
Outcome Criterion8() {
  RdCurve anchor;
  const double bpp[] = {0.05, 0.09, 0.12, 0.25, 0.41, 0.95};
  const double psnr[] = {30.0, 33.5, 35.0, 38.2, 41.0, 45.5};
  for (int i = 0; i < 6; ++i) anchor.points.push_back({bpp[i], psnr[i], i});
  const double same = BdRate(anchor, anchor);
  RdCurve shifted = anchor;
  for (RdPoint& p : shifted.points) p.bpp *= 0.9;
  const double shift = BdRate(anchor, shifted);

  std::mt19937_64 rng(11);
  int compared = 0;
  double worst = 0.0;
  while (compared < 100) {
    const RdCurve a = RandomCurve(rng), b = RandomCurve(rng);
    if (std::min(a.points.back().quality, b.points.back().quality) <=
        std::max(a.points.front().quality, b.points.front().quality)) {
      continue;  // no common quality interval
    }
    worst = std::max(worst, std::fabs(BdRate(a, b) - OracleBdRate(a, b)));
    ++compared;
  }
  return {same == 0.0 && std::fabs(shift + 10.0) <= kBdShiftTol &&
              worst <= kBdOracleTol,
          Format("identical %.3g%%, x0.9 shift %.9f%%, max |err| vs dense "
                 "oracle over %d curve pairs %.2e%%",
                 same, shift, compared, worst)};
}

double BinaryEntropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -(p * std::log2(p) + (1 - p) * std::log2(1 - p));
}

// 9. Entropy coder.
Outcome Criterion9() {
  std::mt19937_64 rng(13);
  int failures = 0;
  for (int trial = 0; trial < kEntropyTrials; ++trial) {
    const int n = static_cast<int>(rng() % 96);
    const int n_ctx = 1 + static_cast<int>(rng() % 4);
    std::vector<double> p(n_ctx);
    for (double& v : p) v = std::uniform_real_distribution<double>(0, 1)(rng);
    struct Sym {
      int kind;  // 0 context bit, 1 bypass bit, 2 bypass word
      int ctx;
      uint32_t value;
      int width;
    };
    std::vector<Sym> syms(n);
    for (Sym& s : syms) {
      s.kind = static_cast<int>(rng() % 5 == 0 ? rng() % 2 + 1 : 0);
      s.ctx = static_cast<int>(rng() % n_ctx);
      s.width = 1 + static_cast<int>(rng() % 16);
      if (s.kind == 0) {
        s.value = std::uniform_real_distribution<double>(0, 1)(rng) < p[s.ctx];
      } else if (s.kind == 1) {
        s.value = rng() & 1;
      } else {
        s.value = static_cast<uint32_t>(rng() & ((1u << s.width) - 1));
      }
    }
    std::vector<BinaryContext> enc_ctx(n_ctx), dec_ctx(n_ctx);
    BacEncoder enc;
    for (const Sym& s : syms) {
      if (s.kind == 0) enc.EncodeBit(enc_ctx[s.ctx], static_cast<int>(s.value));
      if (s.kind == 1) enc.EncodeBypass(static_cast<int>(s.value));
      if (s.kind == 2) enc.EncodeBypassBits(s.value, s.width);
    }
    const std::vector<uint8_t> bytes = enc.Finish();
    try {
      BacDecoder dec(bytes);
      bool same = true;
      for (const Sym& s : syms) {
        uint32_t v = 0;
        if (s.kind == 0) v = static_cast<uint32_t>(dec.DecodeBit(dec_ctx[s.ctx]));
        if (s.kind == 1) v = static_cast<uint32_t>(dec.DecodeBypass());
        if (s.kind == 2) v = dec.DecodeBypassBits(s.width);
        same = same && v == s.value;
      }
      dec.Finish();
      failures += !same;
    } catch (const Error&) {
      ++failures;
    }
  }

  constexpr int kSkewed = 1000000;
  BinaryContext ctx;
  BacEncoder enc;
  int ones = 0;
  for (int i = 0; i < kSkewed; ++i) {
    const int bit = std::uniform_real_distribution<double>(0, 1)(rng) < 0.05;
    ones += bit;
    enc.EncodeBit(ctx, bit);
  }
  const double coded = 8.0 * static_cast<double>(enc.Finish().size());
  const double entropy =
      kSkewed * BinaryEntropy(static_cast<double>(ones) / kSkewed);
  const double bound = (1 + kEntropyRelSlack) * entropy + kEntropyAbsSlackBits;
  return {failures == 0 && coded <= bound,
          Format("%d/%d round-trip failures; skewed source %.0f bits vs "
                 "entropy %.0f (overhead %+.2f%%, bound %.0f)",
                 failures, kEntropyTrials, coded, entropy,
                 100 * (coded / entropy - 1), bound)};
}

// 10. Colour conversion and metric units.
Outcome Criterion10() {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const Rgb c{u(rng), u(rng), u(rng)};
    const Rgb back = YuvToRgb709(RgbToYuv709(c));
    worst = std::max({worst, std::fabs(back.r - c.r), std::fabs(back.g - c.g),
                      std::fabs(back.b - c.b)});
  }
  const double w1 = WeightedPsnr(40, 44, 44);
  const double w2 = WeightedPsnr(30, 38, 22);
  const bool weighted_ok = std::fabs(w1 - 41.0) <= 1e-12 &&
                           std::fabs(w2 - 30.0) <= 1e-12;

  Frame a(64, 48, PixelFormat::kYuv444R, 100.0f);
  Frame b = a;
  for (float& v : b.plane(0).samples()) v += 1.0f;
  const double off_by_one = ComputeQuality(a, b).psnr_y;
  const double oracle = 10.0 * std::log10(255.0 * 255.0);
  const bool psnr_ok = std::fabs(off_by_one - kOffByOnePsnr) <= kOffByOneTol &&
                       std::fabs(off_by_one - oracle) <= 1e-9;
  return {worst < kColorMaxErr && weighted_ok && psnr_ok,
          Format("bt709 round-trip max err %.3e; weighted (40,44,44)=%.6f "
                 "(30,38,22)=%.6f; off-by-one luma %.6f dB",
                 worst, w1, w2, off_by_one)};
}

struct Criterion {
  int id;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace fmc

int main(int argc, char** argv) {
  using fmc::Criterion;
  const std::vector<Criterion> all = {
      {1, 1, fmc::Criterion1},     {2, 5, fmc::Criterion2},
      {3, 120, fmc::Criterion3},   {4, 120, fmc::Criterion4},
      {5, 600, fmc::Criterion5},   {6, 300, fmc::Criterion6},
      {7, 30, fmc::Criterion7},    {8, 30, fmc::Criterion8},
      {9, 60, fmc::Criterion9},    {10, 10, fmc::Criterion10},
  };
  int only = 0;
  if (argc == 3 && std::string(argv[1]) == "--criterion") {
    only = std::atoi(argv[2]);
    if (only < 1 || only > 10) {
      std::fprintf(stderr, "criterion must be 1..10\n");
      return 2;
    }
  } else if (argc != 1) {
    std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
    return 2;
  }
  int failed = 0;
  for (const Criterion& c : all) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    fmc::Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    const bool in_time = secs < c.limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("criterion %d: %s %s; %.2f s (limit %.0f s)\n", c.id,
                pass ? "PASS" : "FAIL", o.detail.c_str(), secs, c.limit_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
