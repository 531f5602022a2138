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

// RD-curve collection, drift reports and CSV/SVG emission. Column layouts
// are documented in docs/formats.md.

#ifndef FMC_EVAL_H_
#define FMC_EVAL_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fmc/bdrate.h"
#include "fmc/codec.h"
#include "fmc/rate_control.h"

namespace fmc {

// `count` q values spread evenly over [0, q_num - 1], ascending.
std::vector<int> DefaultQList(int q_num, int count = 16);

// One encode per q (intra period from `config`, all frames). bpp counts
// frame records over width * height * frames; quality is the mean weighted
// PSNR. Encodes run on up to `threads` threads (0: hardware concurrency).
RdCurve CollectRdCurve(std::span<const Frame> frames, RawFormat format,
                       Rational fps, std::span<const int> q_list,
                       const QuantSchedule& schedule,
                       const CodecConfig& config = {},
                       std::string label = "", unsigned threads = 0);

// quality(last point) - quality(first point), points in ascending q.
double QualityRange(const RdCurve& curve);

struct DriftFrame {
  int index = 0;
  uint64_t bits = 0;
  double psnr_weighted = 0.0;
  bool operator==(const DriftFrame&) const = default;
};

struct DriftReport {
  std::vector<DriftFrame> frames;
  double first_quartile_mean = 0.0;  // dB over the first max(1, n/4) frames
  double last_quartile_mean = 0.0;   // dB over the last max(1, n/4) frames
  double slope_db_per_100 = 0.0;     // least-squares slope * 100
};

DriftReport MakeDriftReport(std::span<const DriftFrame> frames);
DriftReport MakeDriftReport(std::span<const FrameLog> log);

// Frame log reconstructed from a bitstream (no quality column).
std::vector<FrameLog> FrameLogFromBitstream(const Bitstream& bitstream);

// CSV writers/readers. Readers check the header row and column count.
std::string RdCurveToCsv(const RdCurve& curve);
RdCurve RdCurveFromCsv(std::string_view text);
std::string FrameLogToCsv(std::span<const FrameLog> log, bool with_quality);
std::vector<FrameLog> FrameLogFromCsv(std::string_view text);
std::string RcLogToCsv(std::span<const RcLogEntry> log);
std::vector<RcLogEntry> RcLogFromCsv(std::string_view text);
std::string DriftReportToCsv(const DriftReport& report);
DriftReport DriftReportFromCsv(std::string_view text);

struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

// Self-contained SVG poly-line chart; identical input gives identical bytes.
std::string RenderLineChartSvg(std::string_view title, std::string_view x_label,
                               std::string_view y_label,
                               std::span<const ChartSeries> series);
std::string RdCurveToSvg(std::span<const RdCurve> curves);
std::string DriftReportToSvg(const DriftReport& report);

void WriteTextFile(const std::filesystem::path& path, std::string_view text);
std::string ReadTextFile(const std::filesystem::path& path);

}  // namespace fmc

#endif  // FMC_EVAL_H_
