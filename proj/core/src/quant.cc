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

#include "fmc/quant.h"

#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include "fmc/error.h"
#include "fmc/raw_io.h"

namespace fmc {
namespace {

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

void HashBytes(uint64_t& h, uint64_t value, int bytes) {
  for (int i = 0; i < bytes; ++i) {
    h ^= (value >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

void CheckQ(int q, int q_num) {
  if (q < 0 || q > q_num - 1) {
    Fail(ErrorCode::kInvalidArgument,
         "q=" + std::to_string(q) + " outside [0, " +
             std::to_string(q_num - 1) + "]");
  }
}

int32_t RoundLevel(double x) {
  // std::round rounds halfway cases away from zero.
  const double r = std::round(x);
  constexpr double kMax = std::numeric_limits<int32_t>::max();
  Require(std::abs(r) <= kMax, "quantized level overflows int32");
  return static_cast<int32_t>(r);
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double ParseDouble(const std::string& key, const std::string& value) {
  size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size()) {
    Fail(ErrorCode::kFormat, "schedule.cfg: bad value for " + key);
  }
  return d;
}

}  // namespace

void QuantSchedule::Validate() const {
  Require(q_num >= 2 && q_num <= 256, "q_num must be in [2, 256]");
  for (double v : {lambda_min, lambda_max, s_enc_min, s_enc_max, s_dec_min,
                   s_dec_max}) {
    Require(std::isfinite(v) && v > 0, "schedule bounds must be finite and positive");
  }
  // Equal bounds are a valid degenerate schedule (one scaler for every q).
  Require(lambda_min <= lambda_max, "require lambda_min <= lambda_max");
  Require(s_enc_min <= s_enc_max, "require s_enc_min <= s_enc_max");
}

uint64_t QuantSchedule::Digest() const {
  uint64_t h = kFnvOffset;
  HashBytes(h, static_cast<uint32_t>(q_num), 4);
  for (double d : {lambda_min, lambda_max, s_enc_min, s_enc_max, s_dec_min,
                   s_dec_max}) {
    HashBytes(h, std::bit_cast<uint64_t>(d), 8);
  }
  return h;
}

double QuantizeScalar(double value, double step) {
  Require(step > 0.0, "quantization step must be positive");
  return step * std::round(value / step);
}

double LogLinearInterpolate(int q, double lo, double hi, int q_num) {
  Require(q_num >= 2, "q_num must be at least 2");
  CheckQ(q, q_num);
  Require(lo > 0.0 && hi > 0.0, "interpolation bounds must be positive");
  // Endpoints are returned exactly; exp(log(x)) can be off by an ulp.
  if (q == 0) return lo;
  if (q == q_num - 1) return hi;
  const double t = static_cast<double>(q) / (q_num - 1);
  return std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
}

double ScalerForQ(int q, double s_min, double s_max, int q_num) {
  return LogLinearInterpolate(q, s_min, s_max, q_num);
}

double LambdaForQ(int q, const QuantSchedule& schedule) {
  return LogLinearInterpolate(q, schedule.lambda_min, schedule.lambda_max,
                              schedule.q_num);
}

double EncoderScaler(int q, const QuantSchedule& schedule) {
  return ScalerForQ(q, schedule.s_enc_min, schedule.s_enc_max, schedule.q_num);
}

double DecoderScaler(int q, const QuantSchedule& schedule) {
  return ScalerForQ(q, schedule.s_dec_min, schedule.s_dec_max, schedule.q_num);
}

LevelBlock QuantizeLatent(const Block8x8& coeffs, double s_enc, double w) {
  LevelBlock levels;
  const double scale = s_enc * w;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    levels[i] = RoundLevel(coeffs[i] * scale);
  }
  return levels;
}

LevelBlock QuantizeLatent(const Block8x8& coeffs, int q, double w,
                          const QuantSchedule& schedule) {
  return QuantizeLatent(coeffs, EncoderScaler(q, schedule), w);
}

Block8x8 DequantizeLatent(const LevelBlock& levels, double s_dec, double w) {
  Block8x8 coeffs;
  const double scale = s_dec / w;
  for (size_t i = 0; i < levels.size(); ++i) coeffs[i] = levels[i] * scale;
  return coeffs;
}

Block8x8 DequantizeLatent(const LevelBlock& levels, int q, double w,
                          const QuantSchedule& schedule) {
  return DequantizeLatent(levels, DecoderScaler(q, schedule), w);
}

QuantSchedule ParseScheduleConfig(std::string_view text) {
  QuantSchedule s;
  std::optional<double> dec_min;
  std::optional<double> dec_max;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      Fail(ErrorCode::kFormat,
           "schedule.cfg line " + std::to_string(line_no) + ": missing '='");
    }
    const std::string key = Trim(t.substr(0, eq));
    const std::string value = Trim(t.substr(eq + 1));
    if (key == "q_num") {
      const double d = ParseDouble(key, value);
      if (d != std::floor(d)) Fail(ErrorCode::kFormat, "q_num not integral");
      s.q_num = static_cast<int>(d);
    } else if (key == "lambda_min") {
      s.lambda_min = ParseDouble(key, value);
    } else if (key == "lambda_max") {
      s.lambda_max = ParseDouble(key, value);
    } else if (key == "s_enc_min") {
      s.s_enc_min = ParseDouble(key, value);
    } else if (key == "s_enc_max") {
      s.s_enc_max = ParseDouble(key, value);
    } else if (key == "s_dec_min") {
      dec_min = ParseDouble(key, value);
    } else if (key == "s_dec_max") {
      dec_max = ParseDouble(key, value);
    } else {
      Fail(ErrorCode::kFormat, "schedule.cfg: unknown key '" + key + "'");
    }
  }
  // Missing decoder bounds default to the reciprocal of the encoder bounds.
  s.s_dec_min = dec_min.value_or(1.0 / s.s_enc_min);
  s.s_dec_max = dec_max.value_or(1.0 / s.s_enc_max);
  s.Validate();
  return s;
}

std::string FormatScheduleConfig(const QuantSchedule& schedule) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "q_num=" << schedule.q_num << "\n"
      << "lambda_min=" << schedule.lambda_min << "\n"
      << "lambda_max=" << schedule.lambda_max << "\n"
      << "s_enc_min=" << schedule.s_enc_min << "\n"
      << "s_enc_max=" << schedule.s_enc_max << "\n"
      << "s_dec_min=" << schedule.s_dec_min << "\n"
      << "s_dec_max=" << schedule.s_dec_max << "\n";
  return out.str();
}

QuantSchedule LoadScheduleConfig(const std::filesystem::path& path) {
  const auto bytes = ReadFileBytes(path);
  return ParseScheduleConfig(
      std::string_view(reinterpret_cast<const char*>(bytes.data()),
                       bytes.size()));
}

void SaveScheduleConfig(const std::filesystem::path& path,
                        const QuantSchedule& schedule) {
  const std::string text = FormatScheduleConfig(schedule);
  WriteFileBytes(path, std::span(reinterpret_cast<const uint8_t*>(text.data()),
                                 text.size()));
}

}  // namespace fmc
