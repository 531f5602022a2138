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

#include "cli.h"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fmc/bdrate.h"
#include "fmc/calibrate.h"
#include "fmc/codec.h"
#include "fmc/container.h"
#include "fmc/error.h"
#include "fmc/eval.h"
#include "fmc/quality.h"
#include "fmc/quant.h"
#include "fmc/rate_control.h"
#include "fmc/raw_io.h"
#include "fmc/synth.h"
#include "fmc/warp.h"

namespace fmc::cli {
namespace {

std::string Printf(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

Rational ParseFps(const std::string& text) {
  Rational r{0, 1};
  const char* p = text.data();
  const char* end = p + text.size();
  auto res = std::from_chars(p, end, r.num);
  bool ok = res.ec == std::errc();
  if (ok && res.ptr != end) {
    ok = *res.ptr == '/';
    if (ok) {
      res = std::from_chars(res.ptr + 1, end, r.den);
      ok = res.ec == std::errc() && res.ptr == end;
    }
  }
  if (!ok || r.num == 0 || r.den == 0) {
    Fail(ErrorCode::kInvalidArgument, "--fps must look like 30 or 30000/1001");
  }
  return r;
}

std::vector<int> ParseIntList(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      Fail(ErrorCode::kInvalidArgument, "bad integer list entry '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

bool HasSuffix(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void SaveClip(const std::string& path, const Clip& clip) {
  if (HasSuffix(path, ".y4m")) {
    Require(clip.format == RawFormat::kYuv420p, "y4m output needs yuv420p");
    WriteFileBytes(path, SerializeY4m(clip.frames, clip.fps));
  } else {
    SaveRaw(path, clip.frames, clip.format);
  }
}

QuantSchedule LoadSchedule(const std::string& path) {
  return path.empty() ? QuantSchedule{} : LoadScheduleConfig(path);
}

// Raw clip input shared by several subcommands.
struct InputOptions {
  std::string path;
  int width = 0;
  int height = 0;
  std::string pix_fmt = "yuv420p";
  std::string fps = "30";

  void Add(CLI::App* cmd) {
    cmd->add_option("--input,-i", path, "raw .yuv/.rgb or .y4m file")
        ->required();
    cmd->add_option("--width", width, "frame width (optional for y4m)");
    cmd->add_option("--height", height, "frame height (optional for y4m)");
    cmd->add_option("--pix-fmt", pix_fmt, "yuv420p or rgb24")
        ->check(CLI::IsMember({"yuv420p", "rgb24"}));
    cmd->add_option("--fps", fps, "frame rate, N or N/D (raw input)");
  }

  Clip Load() const {
    Clip clip = LoadRaw(path, width, height, ParseRawFormat(pix_fmt));
    Require(!clip.frames.empty(), "input contains no frames");
    if (!HasSuffix(path, ".y4m")) clip.fps = ParseFps(fps);
    return clip;
  }
};

struct RateOptions {
  std::optional<int> q;
  std::optional<double> target_bps;
  std::string target_schedule;

  void Add(CLI::App* cmd, bool allow_q) {
    if (allow_q) {
      cmd->add_option("--q", q, "fixed quantization index");
    }
    auto* bps = cmd->add_option("--rc-target-bps", target_bps,
                                "constant target bitrate");
    auto* sched = cmd->add_option("--rc-target-schedule", target_schedule,
                                  "piecewise target, e.g. 0:400000,150:150000");
    bps->excludes(sched);
  }

  std::optional<TargetSchedule> Targets() const {
    if (target_bps) {
      Require(*target_bps > 0, "--rc-target-bps must be positive");
      return TargetSchedule{{0, *target_bps}};
    }
    if (!target_schedule.empty()) return ParseTargetSchedule(target_schedule);
    return std::nullopt;
  }
};

struct CodecOptions {
  int refresh_period = 32;
  int intra_period = -1;
  int search_range = kDefaultSearchRange;
  std::string schedule;

  void Add(CLI::App* cmd) {
    cmd->add_option("--refresh-period", refresh_period,
                    "temporal-state refresh period, 0 disables");
    cmd->add_option("--intra-period", intra_period,
                    "-1: only the first frame is intra");
    cmd->add_option("--search-range", search_range,
                    "motion search range in pixels");
    cmd->add_option("--schedule", schedule, "schedule.cfg");
  }

  CodecConfig Config() const {
    CodecConfig c;
    c.refresh_period = refresh_period;
    c.intra_period = intra_period;
    c.search_range = search_range;
    c.Validate();
    return c;
  }
};

void CheckQ(int q, const QuantSchedule& schedule) {
  if (q < 0 || q >= schedule.q_num) {
    Fail(ErrorCode::kInvalidArgument,
         "--q " + std::to_string(q) + " outside [0, " +
             std::to_string(schedule.q_num - 1) + "]");
  }
}

// ---------------------------------------------------------------------------

struct EncodeCmd {
  InputOptions input;
  RateOptions rate;
  CodecOptions codec;
  std::string output, log, recon;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand("encode", "encode a raw clip to .fmc");
    input.Add(cmd);
    rate.Add(cmd, true);
    codec.Add(cmd);
    cmd->add_option("--output,-o", output, ".fmc bitstream")->required();
    cmd->add_option("--log", log, "per-frame CSV log");
    cmd->add_option("--recon", recon, "write the decoder-visible frames");
    cmd->callback([this] { run = true; });
  }

  int Run(std::ostream& out) {
    const QuantSchedule schedule = LoadSchedule(codec.schedule);
    const CodecConfig config = codec.Config();
    const auto targets = rate.Targets();
    Require(rate.q.has_value() != targets.has_value(),
            "give exactly one of --q, --rc-target-bps, --rc-target-schedule");
    const Clip clip = input.Load();
    SequenceResult result;
    if (targets) {
      RcRunResult rc = RunRateControl(clip.frames, clip.format, clip.fps,
                                      *targets, schedule, config);
      if (rc.unreachable) {
        out << "warning: target unreachable (q pinned at a bound for more "
               "than "
            << kRcPinnedLimit << " frames)\n";
      }
      result = std::move(rc.sequence);
    } else {
      CheckQ(*rate.q, schedule);
      result = EncodeSequence(clip.frames, clip.format, clip.fps, *rate.q,
                              schedule, config);
    }
    SaveBitstream(output, result.bitstream);
    if (!log.empty()) WriteTextFile(log, FrameLogToCsv(result.log, true));
    if (!recon.empty()) {
      SaveClip(recon, Clip{result.recon, clip.fps, clip.format});
    }
    uint64_t bits = 0;
    double psnr = 0.0;
    for (const FrameLog& f : result.log) {
      bits += f.bits;
      psnr += f.psnr_weighted;
    }
    const double n = static_cast<double>(result.log.size());
    out << "frames " << result.log.size() << ", "
        << Printf("%.1f", bits / n * clip.fps.value()) << " bps, "
        << Printf("%.4f", bits / (n * clip.frames[0].width() *
                                  clip.frames[0].height()))
        << " bpp, weighted PSNR " << Printf("%.3f", psnr / n) << " dB\n";
    return kExitOk;
  }
  bool run = false;
};

struct DecodeCmd {
  std::string input, output, log, schedule;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand("decode", "decode .fmc to raw frames");
    cmd->add_option("--input,-i", input, ".fmc bitstream")->required();
    cmd->add_option("--output,-o", output, "raw (or .y4m) output")->required();
    cmd->add_option("--log", log, "per-frame CSV log");
    cmd->add_option("--schedule", schedule, "schedule.cfg used to encode");
    cmd->callback([this] { run = true; });
  }

  int Run(std::ostream& out) {
    const Bitstream bs = LoadBitstream(input);
    const Clip clip = DecodeSequence(bs, LoadSchedule(schedule));
    SaveClip(output, clip);
    if (!log.empty()) {
      WriteTextFile(log, FrameLogToCsv(FrameLogFromBitstream(bs), false));
    }
    out << "decoded " << clip.frames.size() << " frames " << bs.header.width
        << "x" << bs.header.height << " " << RawFormatName(clip.format)
        << "\n";
    return kExitOk;
  }
  bool run = false;
};

struct PsnrCmd {
  std::string reference, distorted, pix_fmt = "yuv420p", per_frame;
  int width = 0, height = 0;
  double cap = kDefaultPsnrCap;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand("psnr", "compare two clips");
    cmd->add_option("--reference,-r", reference)->required();
    cmd->add_option("--distorted,-d", distorted)->required();
    cmd->add_option("--width", width);
    cmd->add_option("--height", height);
    cmd->add_option("--pix-fmt", pix_fmt)
        ->check(CLI::IsMember({"yuv420p", "rgb24"}));
    cmd->add_option("--cap", cap, "PSNR reported for identical planes");
    cmd->add_option("--per-frame", per_frame, "per-frame CSV");
    cmd->callback([this] { run = true; });
  }

  int Run(std::ostream& out) {
    const RawFormat fmt = ParseRawFormat(pix_fmt);
    const Clip a = LoadRaw(reference, width, height, fmt);
    const Clip b = LoadRaw(distorted, width, height, fmt);
    Require(a.frames.size() == b.frames.size() && !a.frames.empty(),
            "clips differ in frame count");
    double y = 0, u = 0, v = 0, w = 0, rgb = 0;
    bool has_rgb = false;
    std::string csv = "t,psnr_y,psnr_u,psnr_v,psnr_weighted\n";
    for (size_t t = 0; t < a.frames.size(); ++t) {
      const QualityReport r = ComputeQuality(a.frames[t], b.frames[t], cap);
      y += r.psnr_y;
      u += r.psnr_u;
      v += r.psnr_v;
      w += r.psnr_weighted;
      if (r.psnr_rgb) {
        has_rgb = true;
        rgb += *r.psnr_rgb;
      }
      csv += std::to_string(t) + "," + Printf("%.6f", r.psnr_y) + "," +
             Printf("%.6f", r.psnr_u) + "," + Printf("%.6f", r.psnr_v) + "," +
             Printf("%.6f", r.psnr_weighted) + "\n";
    }
    const double n = static_cast<double>(a.frames.size());
    if (!per_frame.empty()) WriteTextFile(per_frame, csv);
    out << "psnr_y " << Printf("%.3f", y / n) << " psnr_u "
        << Printf("%.3f", u / n) << " psnr_v " << Printf("%.3f", v / n)
        << " psnr_weighted " << Printf("%.3f", w / n);
    if (has_rgb) out << " psnr_rgb " << Printf("%.3f", rgb / n);
    out << "\n";
    return kExitOk;
  }
  bool run = false;
};

struct BdRateCmd {
  std::string anchor, test;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand("bdrate", "BD-Rate of two RD curve CSVs");
    cmd->add_option("--anchor", anchor)->required();
    cmd->add_option("--test", test)->required();
    cmd->callback([this] { run = true; });
  }

  int Run(std::ostream& out) {
    const double bd = BdRate(RdCurveFromCsv(ReadTextFile(anchor)),
                             RdCurveFromCsv(ReadTextFile(test)));
    out << "BD-Rate: " << Printf("%.2f", bd == 0.0 ? 0.0 : bd) << "%\n";
    return kExitOk;
  }
  bool run = false;
};

struct RcSimCmd {
  InputOptions input;
  RateOptions rate;
  CodecOptions codec;
  std::string log, output;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand("rc-sim", "closed-loop rate control run");
    input.Add(cmd);
    rate.Add(cmd, false);
    codec.Add(cmd);
    cmd->add_option("--log", log, "rate-control CSV log");
    cmd->add_option("--output,-o", output, "optional .fmc bitstream");
    cmd->callback([this] { run = true; });
  }

  int Run(std::ostream& out) {
    const auto targets = rate.Targets();
    Require(targets.has_value(),
            "give --rc-target-bps or --rc-target-schedule");
    const Clip clip = input.Load();
    const RcRunResult r =
        RunRateControl(clip.frames, clip.format, clip.fps, *targets,
                       LoadSchedule(codec.schedule), codec.Config());
    if (!log.empty()) WriteTextFile(log, RcLogToCsv(r.log));
    if (!output.empty()) SaveBitstream(output, r.sequence.bitstream);
    out << "realized " << Printf("%.1f", r.realized_bps) << " bps over "
        << r.log.size() << " frames";
    if (r.unreachable) out << " (target unreachable)";
    out << "\n";
    return kExitOk;
  }
  bool run = false;
};

struct WarpBenchCmd {
  int width = 1920, height = 1080, range = 64;
  uint64_t seed = 1;
  double tolerance = 1e-2, floor = 1e-3;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "warp-bench", "binary16 warp error against binary32 on random input");
    cmd->add_option("--width", width);
    cmd->add_option("--height", height);
    cmd->add_option("--range", range, "max |component|, half-pel units");
    cmd->add_option("--seed", seed);
    cmd->add_option("--tolerance", tolerance, "relative error threshold");
    cmd->add_option("--floor", floor, "absolute error floor");
    cmd->callback([this] { run = true; });
  }

  int Run(std::ostream& out) {
    const Frame ref = RandomUnitFrame(width, height, seed);
    const MotionField mv = RandomMotionField(width, height, range, seed + 1);
    out << "mode,error_ratio_percent,max_abs_err,ms\n";
    for (WarpPrecision mode :
         {WarpPrecision::kFp32, WarpPrecision::kFp16Absolute,
          WarpPrecision::kFp16RelativeOffset}) {
      const auto t0 = std::chrono::steady_clock::now();
      const WarpErrorStats s = WarpErrorRatio(ref, mv, mode, tolerance, floor);
      const double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
      out << WarpPrecisionName(mode) << "," << Printf("%.4f", 100 * s.error_ratio)
          << "," << Printf("%.6g", s.max_abs_err) << "," << Printf("%.1f", ms)
          << "\n";
    }
    return kExitOk;
  }
  bool run = false;
};

struct GenClipCmd {
  std::string kind = "pan", pix_fmt = "yuv420p", output, fps = "30";
  int width = 128, height = 96, frames = 64;
  uint64_t seed = 1;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand("gen-clip", "write a synthetic test clip");
    cmd->add_option("--kind", kind)
        ->check(CLI::IsMember({"static", "pan", "noise"}));
    cmd->add_option("--width", width);
    cmd->add_option("--height", height);
    cmd->add_option("--frames", frames);
    cmd->add_option("--seed", seed);
    cmd->add_option("--fps", fps);
    cmd->add_option("--pix-fmt", pix_fmt)
        ->check(CLI::IsMember({"yuv420p", "rgb24"}));
    cmd->add_option("--output,-o", output, "raw (or .y4m) output")->required();
    cmd->callback([this] { run = true; });
  }

  int Run(std::ostream& out) {
    SynthOptions o;
    o.kind = ParseSynthKind(kind);
    o.width = width;
    o.height = height;
    o.frames = frames;
    o.seed = seed;
    o.format = ParseRawFormat(pix_fmt);
    o.fps = ParseFps(fps);
    const Clip clip = GenerateClip(o);
    SaveClip(output, clip);
    out << "wrote " << frames << " " << kind << " frames " << width << "x"
        << height << " " << pix_fmt << "\n";
    return kExitOk;
  }
  bool run = false;
};

struct CalibrateCmd {
  InputOptions input;
  std::string output;
  int q_num = 64;
  double lambda_min = 1.0, lambda_max = 768.0;
  int max_frames = 8;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "calibrate", "fit encoder scaler bounds to lambda; write schedule.cfg");
    input.Add(cmd);
    cmd->add_option("--q-num", q_num);
    cmd->add_option("--lambda-min", lambda_min);
    cmd->add_option("--lambda-max", lambda_max);
    cmd->add_option("--max-frames", max_frames, "frames used from the input");
    cmd->add_option("--output,-o", output, "schedule.cfg")->required();
    cmd->callback([this] { run = true; });
  }

  int Run(std::ostream& out) {
    Clip clip = input.Load();
    Require(max_frames >= 2, "--max-frames must be at least 2");
    if (static_cast<int>(clip.frames.size()) > max_frames) {
      clip.frames.resize(max_frames);
    }
    QuantSchedule s;
    s.q_num = q_num;
    s.lambda_min = lambda_min;
    s.lambda_max = lambda_max;
    const CalibrationResult r = CalibrateScalerBounds(clip.frames, s);
    SaveScheduleConfig(output, r.schedule);
    for (const EndpointCalibration& e : {r.low, r.high}) {
      out << "q " << e.q << ": lambda " << Printf("%.6g", e.lambda)
          << " -> s_enc " << Printf("%.6g", e.s_enc) << " (slope "
          << Printf("%.6g", e.slope) << ", " << e.iterations
          << " iterations)\n";
    }
    return kExitOk;
  }
  bool run = false;
};

struct RdCurveCmd {
  InputOptions input;
  CodecOptions codec;
  std::string q_list, csv, svg, label;
  int points = 16;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand("rd-curve", "collect an RD curve");
    input.Add(cmd);
    codec.Add(cmd);
    cmd->add_option("--q-list", q_list, "comma-separated ascending q values");
    cmd->add_option("--points", points, "evenly spread q values if no list");
    cmd->add_option("--label", label);
    cmd->add_option("--csv", csv, "RD curve CSV");
    cmd->add_option("--svg", svg, "RD curve chart");
    cmd->callback([this] { run = true; });
  }

  int Run(std::ostream& out) {
    const QuantSchedule schedule = LoadSchedule(codec.schedule);
    const std::vector<int> qs =
        q_list.empty() ? DefaultQList(schedule.q_num, points)
                       : ParseIntList(q_list);
    for (int q : qs) CheckQ(q, schedule);
    const Clip clip = input.Load();
    const RdCurve curve = CollectRdCurve(clip.frames, clip.format, clip.fps,
                                         qs, schedule, codec.Config(), label);
    if (!csv.empty()) WriteTextFile(csv, RdCurveToCsv(curve));
    if (!svg.empty()) WriteTextFile(svg, RdCurveToSvg(std::span(&curve, 1)));
    for (const RdPoint& p : curve.points) {
      out << "q " << p.q << ": " << Printf("%.5f", p.bpp) << " bpp, "
          << Printf("%.3f", p.quality) << " dB\n";
    }
    if (curve.points.size() >= 2) {
      out << "quality range " << Printf("%.3f", QualityRange(curve))
          << " dB\n";
    }
    return kExitOk;
  }
  bool run = false;
};

struct DriftCmd {
  std::string log, csv, svg;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "drift", "quality-over-time summary of an encode log");
    cmd->add_option("--log", log, "encode per-frame CSV log")->required();
    cmd->add_option("--csv", csv, "drift CSV");
    cmd->add_option("--svg", svg, "drift chart");
    cmd->callback([this] { run = true; });
  }

  int Run(std::ostream& out) {
    const std::vector<FrameLog> frames = FrameLogFromCsv(ReadTextFile(log));
    const DriftReport r = MakeDriftReport(frames);
    if (!csv.empty()) WriteTextFile(csv, DriftReportToCsv(r));
    if (!svg.empty()) WriteTextFile(svg, DriftReportToSvg(r));
    out << "first quartile " << Printf("%.3f", r.first_quartile_mean)
        << " dB, last quartile " << Printf("%.3f", r.last_quartile_mean)
        << " dB, slope " << Printf("%.4f", r.slope_db_per_100)
        << " dB/100 frames\n";
    return kExitOk;
  }
  bool run = false;
};

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return kExitInvalidArgument;
    case ErrorCode::kIo:
      return kExitIo;
    case ErrorCode::kFormat:
      return kExitFormat;
    case ErrorCode::kCorrupt:
      return kExitCorrupt;
    case ErrorCode::kNumerical:
      return kExitNumerical;
  }
  return kExitInternal;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"fmc: low-delay video codec and evaluation toolkit", "fmc"};
  app.require_subcommand(1);
  EncodeCmd encode;
  DecodeCmd decode;
  PsnrCmd psnr;
  BdRateCmd bdrate;
  RcSimCmd rc_sim;
  WarpBenchCmd warp_bench;
  GenClipCmd gen_clip;
  CalibrateCmd calibrate;
  RdCurveCmd rd_curve;
  DriftCmd drift;
  encode.Add(app);
  decode.Add(app);
  psnr.Add(app);
  bdrate.Add(app);
  rc_sim.Add(app);
  warp_bench.Add(app);
  gen_clip.Add(app);
  calibrate.Add(app);
  rd_curve.Add(app);
  drift.Add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fmc: error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (encode.run) return encode.Run(out);
    if (decode.run) return decode.Run(out);
    if (psnr.run) return psnr.Run(out);
    if (bdrate.run) return bdrate.Run(out);
    if (rc_sim.run) return rc_sim.Run(out);
    if (warp_bench.run) return warp_bench.Run(out);
    if (gen_clip.run) return gen_clip.Run(out);
    if (calibrate.run) return calibrate.Run(out);
    if (rd_curve.run) return rd_curve.Run(out);
    if (drift.run) return drift.Run(out);
  } catch (const Error& e) {
    err << "fmc: error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "fmc: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace fmc::cli
