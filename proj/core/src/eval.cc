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

#include "fmc/eval.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "fmc/error.h"

namespace fmc {
namespace {

constexpr std::string_view kRdHeader = "label,q,bpp,quality";
constexpr std::string_view kFrameLogHeader = "t,type,q,refresh,bits,psnr_weighted";
constexpr std::string_view kFrameLogHeaderNoQuality = "t,type,q,refresh,bits";
constexpr std::string_view kRcHeader =
    "frame,q,bits,cum_avg_bps,target_bps,psnr_weighted,unreachable";
constexpr std::string_view kDriftHeader = "index,bits,psnr_weighted";

// Shortest representation that parses back to the same double.
std::string Num(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (true) {
    const size_t end = s.find(sep, pos);
    out.push_back(s.substr(pos, end == std::string_view::npos ? end : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

// Non-empty lines with trailing '\r' stripped.
std::vector<std::string_view> Lines(std::string_view text) {
  std::vector<std::string_view> out;
  for (std::string_view line : Split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

[[noreturn]] void CsvError(size_t line, const std::string& what) {
  Fail(ErrorCode::kFormat, "csv line " + std::to_string(line + 1) + ": " + what);
}

template <typename T>
T Parse(std::string_view field, size_t line) {
  T v{};
  const auto r = std::from_chars(field.data(), field.data() + field.size(), v);
  if (r.ec != std::errc() || r.ptr != field.data() + field.size()) {
    CsvError(line, "cannot parse '" + std::string(field) + "'");
  }
  return v;
}

// Rows after the header, each with exactly `columns` fields.
std::vector<std::vector<std::string_view>> Rows(std::string_view text,
                                                std::string_view header) {
  const auto lines = Lines(text);
  if (lines.empty() || lines[0] != header) {
    Fail(ErrorCode::kFormat, "csv header must be '" + std::string(header) + "'");
  }
  const size_t columns = Split(header, ',').size();
  std::vector<std::vector<std::string_view>> rows;
  for (size_t i = 1; i < lines.size(); ++i) {
    auto fields = Split(lines[i], ',');
    if (fields.size() != columns) {
      CsvError(i, "expected " + std::to_string(columns) + " columns");
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::string_view TypeName(FrameType t) {
  return t == FrameType::kIntra ? "I" : "P";
}

FrameType ParseType(std::string_view s, size_t line) {
  if (s == "I") return FrameType::kIntra;
  if (s == "P") return FrameType::kInter;
  CsvError(line, "frame type must be I or P");
}

std::string Escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  std::string s = buf;
  if (s == "-0" || s.rfind("-0.", 0) == 0) {
    // Avoid "-0.00" so output bytes do not depend on the sign of zero.
    bool all_zero = s.find_first_not_of("-0.") == std::string::npos;
    if (all_zero) s.erase(0, 1);
  }
  return s;
}

double NiceStep(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  const double nice = r < 1.5 ? 1.0 : r < 3.0 ? 2.0 : r < 7.0 ? 5.0 : 10.0;
  return nice * mag;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b"};

}  // namespace

std::vector<int> DefaultQList(int q_num, int count) {
  Require(q_num >= 2 && count >= 1 && count <= q_num,
          "q list needs 1 <= count <= q_num");
  std::vector<int> out;
  if (count == 1) return {q_num - 1};
  for (int i = 0; i < count; ++i) {
    out.push_back(static_cast<int>(
        std::lround(static_cast<double>(i) * (q_num - 1) / (count - 1))));
  }
  return out;
}

RdCurve CollectRdCurve(std::span<const Frame> frames, RawFormat format,
                       Rational fps, std::span<const int> q_list,
                       const QuantSchedule& schedule,
                       const CodecConfig& config, std::string label,
                       unsigned threads) {
  Require(!frames.empty(), "RD curve needs at least one frame");
  Require(!q_list.empty(), "RD curve needs at least one q");
  Require(std::is_sorted(q_list.begin(), q_list.end()),
          "q list must be ascending");
  RdCurve curve;
  curve.label = std::move(label);
  curve.points.resize(q_list.size());
  const double pixels = static_cast<double>(frames[0].width()) *
                        frames[0].height() * frames.size();

  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (size_t i = next++; i < q_list.size(); i = next++) {
      try {
        const SequenceResult r =
            EncodeSequence(frames, format, fps, q_list[i], schedule, config);
        uint64_t bits = 0;
        double psnr = 0.0;
        for (const FrameLog& f : r.log) {
          bits += f.bits;
          psnr += f.psnr_weighted;
        }
        curve.points[i] = {static_cast<double>(bits) / pixels,
                           psnr / static_cast<double>(r.log.size()), q_list[i]};
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(q_list.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return curve;
}

double QualityRange(const RdCurve& curve) {
  Require(curve.points.size() >= 2, "quality range needs at least two points");
  return curve.points.back().quality - curve.points.front().quality;
}

DriftReport MakeDriftReport(std::span<const DriftFrame> frames) {
  if (frames.empty()) Fail(ErrorCode::kInvalidArgument, "empty frame log");
  DriftReport r;
  r.frames.assign(frames.begin(), frames.end());
  const size_t n = frames.size();
  const size_t quart = std::max<size_t>(1, n / 4);
  double first = 0.0, last = 0.0;
  for (size_t i = 0; i < quart; ++i) {
    first += frames[i].psnr_weighted;
    last += frames[n - quart + i].psnr_weighted;
  }
  r.first_quartile_mean = first / quart;
  r.last_quartile_mean = last / quart;
  if (n >= 2) {
    double mx = 0.0, my = 0.0;
    for (const DriftFrame& f : frames) {
      mx += f.index;
      my += f.psnr_weighted;
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (const DriftFrame& f : frames) {
      sxy += (f.index - mx) * (f.psnr_weighted - my);
      sxx += (f.index - mx) * (f.index - mx);
    }
    r.slope_db_per_100 = sxx > 0 ? 100.0 * sxy / sxx : 0.0;
  }
  return r;
}

DriftReport MakeDriftReport(std::span<const FrameLog> log) {
  std::vector<DriftFrame> frames;
  for (const FrameLog& f : log) frames.push_back({f.t, f.bits, f.psnr_weighted});
  return MakeDriftReport(frames);
}

std::vector<FrameLog> FrameLogFromBitstream(const Bitstream& bitstream) {
  std::vector<FrameLog> out;
  int t = 0;
  for (const FrameRecord& r : bitstream.records) {
    FrameLog f;
    f.t = t++;
    f.type = r.frame_type;
    f.q = r.q;
    f.refresh = r.refresh_flag;
    f.bits = 8 * r.SizeBytes();
    f.psnr_weighted = std::numeric_limits<double>::quiet_NaN();
    out.push_back(f);
  }
  return out;
}

std::string RdCurveToCsv(const RdCurve& curve) {
  Require(curve.label.find_first_of(",\n\r") == std::string::npos,
          "curve label must not contain commas or newlines");
  std::string out(kRdHeader);
  out += '\n';
  for (const RdPoint& p : curve.points) {
    out += curve.label + ',' + std::to_string(p.q) + ',' + Num(p.bpp) + ',' +
           Num(p.quality) + '\n';
  }
  return out;
}

RdCurve RdCurveFromCsv(std::string_view text) {
  RdCurve curve;
  const auto rows = Rows(text, kRdHeader);
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (i == 0) {
      curve.label = std::string(f[0]);
    } else if (f[0] != curve.label) {
      CsvError(i + 1, "all rows must share one label");
    }
    curve.points.push_back(
        {Parse<double>(f[2], i + 1), Parse<double>(f[3], i + 1),
         Parse<int>(f[1], i + 1)});
  }
  return curve;
}

std::string FrameLogToCsv(std::span<const FrameLog> log, bool with_quality) {
  std::string out(with_quality ? kFrameLogHeader : kFrameLogHeaderNoQuality);
  out += '\n';
  for (const FrameLog& f : log) {
    out += std::to_string(f.t) + ',' + std::string(TypeName(f.type)) + ',' +
           std::to_string(f.q) + ',' + (f.refresh ? "1" : "0") + ',' +
           std::to_string(f.bits);
    if (with_quality) out += ',' + Num(f.psnr_weighted);
    out += '\n';
  }
  return out;
}

std::vector<FrameLog> FrameLogFromCsv(std::string_view text) {
  const auto lines = Lines(text);
  const bool with_quality = !lines.empty() && lines[0] == kFrameLogHeader;
  const auto rows =
      Rows(text, with_quality ? kFrameLogHeader : kFrameLogHeaderNoQuality);
  std::vector<FrameLog> out;
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& f = rows[i];
    FrameLog log;
    log.t = Parse<int>(f[0], i + 1);
    log.type = ParseType(f[1], i + 1);
    log.q = Parse<int>(f[2], i + 1);
    log.refresh = Parse<int>(f[3], i + 1) != 0;
    log.bits = Parse<uint64_t>(f[4], i + 1);
    log.psnr_weighted = with_quality
                            ? Parse<double>(f[5], i + 1)
                            : std::numeric_limits<double>::quiet_NaN();
    out.push_back(log);
  }
  return out;
}

std::string RcLogToCsv(std::span<const RcLogEntry> log) {
  std::string out(kRcHeader);
  out += '\n';
  for (const RcLogEntry& e : log) {
    out += std::to_string(e.frame) + ',' + std::to_string(e.q) + ',' +
           std::to_string(e.bits) + ',' + Num(e.cum_avg_bps) + ',' +
           Num(e.target_bps) + ',' + Num(e.psnr_weighted) + ',' +
           (e.unreachable ? "1" : "0") + '\n';
  }
  return out;
}

std::vector<RcLogEntry> RcLogFromCsv(std::string_view text) {
  std::vector<RcLogEntry> out;
  const auto rows = Rows(text, kRcHeader);
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& f = rows[i];
    RcLogEntry e;
    e.frame = Parse<int>(f[0], i + 1);
    e.q = Parse<int>(f[1], i + 1);
    e.bits = Parse<uint64_t>(f[2], i + 1);
    e.cum_avg_bps = Parse<double>(f[3], i + 1);
    e.target_bps = Parse<double>(f[4], i + 1);
    e.psnr_weighted = Parse<double>(f[5], i + 1);
    e.unreachable = Parse<int>(f[6], i + 1) != 0;
    out.push_back(e);
  }
  return out;
}

std::string DriftReportToCsv(const DriftReport& report) {
  std::string out(kDriftHeader);
  out += '\n';
  for (const DriftFrame& f : report.frames) {
    out += std::to_string(f.index) + ',' + std::to_string(f.bits) + ',' +
           Num(f.psnr_weighted) + '\n';
  }
  return out;
}

DriftReport DriftReportFromCsv(std::string_view text) {
  std::vector<DriftFrame> frames;
  const auto rows = Rows(text, kDriftHeader);
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& f = rows[i];
    frames.push_back({Parse<int>(f[0], i + 1), Parse<uint64_t>(f[1], i + 1),
                      Parse<double>(f[2], i + 1)});
  }
  return MakeDriftReport(frames);
}

std::string RenderLineChartSvg(std::string_view title, std::string_view x_label,
                               std::string_view y_label,
                               std::span<const ChartSeries> series) {
  constexpr double kW = 640, kH = 400, kLeft = 64, kRight = 16, kTop = 36,
                   kBottom = 48;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0,
         y1 = -x0;
  for (const ChartSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!(x1 >= x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double pw = kW - kLeft - kRight;
  const double ph = kH - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
    << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\" "
    << "font-size=\"14\">" << Escape(title) << "</text>\n";
  o << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\""
    << kLeft + pw << "\" y2=\"" << kTop + ph << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
    << "\" y2=\"" << kTop + ph << "\" stroke=\"black\"/>\n";
  const double xs = NiceStep(x1 - x0);
  const int xd = std::max(0, -static_cast<int>(std::floor(std::log10(xs))));
  for (double v = std::ceil(x0 / xs) * xs; v <= x1 + 1e-9 * xs; v += xs) {
    o << "<line x1=\"" << Fixed(sx(v), 2) << "\" y1=\"" << kTop + ph
      << "\" x2=\"" << Fixed(sx(v), 2) << "\" y2=\"" << kTop + ph + 4
      << "\" stroke=\"black\"/><text x=\"" << Fixed(sx(v), 2) << "\" y=\""
      << kTop + ph + 16 << "\" text-anchor=\"middle\">" << Fixed(v, xd)
      << "</text>\n";
  }
  const double ys = NiceStep(y1 - y0);
  const int yd = std::max(0, -static_cast<int>(std::floor(std::log10(ys))));
  for (double v = std::ceil(y0 / ys) * ys; v <= y1 + 1e-9 * ys; v += ys) {
    o << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << Fixed(sy(v), 2)
      << "\" x2=\"" << kLeft << "\" y2=\"" << Fixed(sy(v), 2)
      << "\" stroke=\"black\"/><text x=\"" << kLeft - 6 << "\" y=\""
      << Fixed(sy(v) + 4, 2) << "\" text-anchor=\"end\">" << Fixed(v, yd)
      << "</text>\n";
  }
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 10
    << "\" text-anchor=\"middle\">" << Escape(x_label) << "</text>\n";
  o << "<text x=\"14\" y=\"" << kTop + ph / 2
    << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << kTop + ph / 2
    << ")\">" << Escape(y_label) << "</text>\n";
  for (size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    o << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& [x, y] : series[i].points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      o << (first ? "" : " ") << Fixed(sx(x), 2) << ',' << Fixed(sy(y), 2);
      first = false;
    }
    o << "\"/>\n";
    o << "<text x=\"" << kLeft + pw - 4 << "\" y=\"" << kTop + 14 * (i + 1)
      << "\" text-anchor=\"end\" fill=\"" << color << "\">"
      << Escape(series[i].label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string RdCurveToSvg(std::span<const RdCurve> curves) {
  std::vector<ChartSeries> series;
  for (const RdCurve& c : curves) {
    ChartSeries s{c.label.empty() ? "curve" : c.label, {}};
    for (const RdPoint& p : c.points) s.points.emplace_back(p.bpp, p.quality);
    series.push_back(std::move(s));
  }
  return RenderLineChartSvg("Rate-distortion", "bits per pixel",
                            "weighted PSNR (dB)", series);
}

std::string DriftReportToSvg(const DriftReport& report) {
  ChartSeries s{"weighted PSNR", {}};
  for (const DriftFrame& f : report.frames) {
    s.points.emplace_back(f.index, f.psnr_weighted);
  }
  return RenderLineChartSvg("Quality across frames", "frame",
                            "weighted PSNR (dB)", std::span(&s, 1));
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) Fail(ErrorCode::kIo, "write failed: " + path.string());
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fmc
