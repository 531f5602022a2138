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

// Quantization-parameter machinery: the q -> scaler and q -> lambda
// log-linear interpolation, multiplicative latent quantization with an
// independent decoder scaler, and the schedule.cfg key/value format.

#ifndef FMC_QUANT_H_
#define FMC_QUANT_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace fmc {

using Block8x8 = std::array<double, 64>;
using LevelBlock = std::array<int32_t, 64>;

// Global quantization schedule. Higher q means finer quantization.
struct QuantSchedule {
  int q_num = 64;
  double lambda_min = 1.0;
  double lambda_max = 768.0;
  double s_enc_min = 1.0 / 48.0;
  double s_enc_max = 1.0;
  double s_dec_min = 48.0;  // 1 / s_enc_min
  double s_dec_max = 1.0;   // 1 / s_enc_max

  // Throws fmc::Error when an invariant is violated.
  void Validate() const;
  // FNV-1a over the little-endian bytes of every field; stored in the
  // bitstream header so a decoder can detect a mismatched schedule.
  uint64_t Digest() const;

  bool operator==(const QuantSchedule&) const = default;
};

// step * round(value / step), ties away from zero.
double QuantizeScalar(double value, double step);

// exp(ln lo + q / (q_num - 1) * (ln hi - ln lo)).
double LogLinearInterpolate(int q, double lo, double hi, int q_num);

double ScalerForQ(int q, double s_min, double s_max, int q_num);
double LambdaForQ(int q, const QuantSchedule& schedule);
double EncoderScaler(int q, const QuantSchedule& schedule);
double DecoderScaler(int q, const QuantSchedule& schedule);

// levels = round(coeff * s_enc * w), ties away from zero.
LevelBlock QuantizeLatent(const Block8x8& coeffs, double s_enc, double w);
LevelBlock QuantizeLatent(const Block8x8& coeffs, int q, double w,
                          const QuantSchedule& schedule);
// coeff = level * s_dec / w.
Block8x8 DequantizeLatent(const LevelBlock& levels, double s_dec, double w);
Block8x8 DequantizeLatent(const LevelBlock& levels, int q, double w,
                          const QuantSchedule& schedule);

// schedule.cfg: `key=value` lines; blank lines and '#' comments allowed.
QuantSchedule ParseScheduleConfig(std::string_view text);
std::string FormatScheduleConfig(const QuantSchedule& schedule);
QuantSchedule LoadScheduleConfig(const std::filesystem::path& path);
void SaveScheduleConfig(const std::filesystem::path& path,
                        const QuantSchedule& schedule);

}  // namespace fmc

#endif  // FMC_QUANT_H_
