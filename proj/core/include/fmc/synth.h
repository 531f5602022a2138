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

// Deterministic synthetic test content.
//
//   static  one textured frame repeated
//   pan     the texture plus a fine high-frequency detail layer under a
//           slow sub-pixel global pan, optionally with per-frame noise
//           (drift-prone)
//   noise   independent uniform noise per frame
//
// The texture is a seeded sum of oriented sinusoids and soft discs evaluated
// in continuous coordinates, so panned frames are exact resamplings.

#ifndef FMC_SYNTH_H_
#define FMC_SYNTH_H_

#include <cstdint>
#include <string_view>

#include "fmc/motion.h"
#include "fmc/raw_io.h"

namespace fmc {

enum class SynthKind { kStatic, kPan, kNoise };

SynthKind ParseSynthKind(std::string_view name);  // static | pan | noise
std::string_view SynthKindName(SynthKind kind);

struct SynthOptions {
  SynthKind kind = SynthKind::kPan;
  int width = 128;
  int height = 96;
  int frames = 64;
  uint64_t seed = 1;
  RawFormat format = RawFormat::kYuv420p;
  Rational fps = {30, 1};
  // Pan velocity in pixels per frame.
  double pan_x = 0.35;
  double pan_y = 0.15;
  // Amplitude of the fine detail layer and peak of the per-frame noise,
  // 8-bit units.
  double detail = 12.0;
  double noise = 0.0;
};

Clip GenerateClip(const SynthOptions& options);

// kYuv444R frame of independent uniform samples in [0, 1).
Frame RandomUnitFrame(int width, int height, uint64_t seed);
// Independent vectors with components uniform in [-max_half_pel,
// max_half_pel] half-pel units.
MotionField RandomMotionField(int width, int height, int max_half_pel,
                              uint64_t seed);

// Uniform double in [0, 1) from the top 53 bits; stable across platforms.
inline double UnitDouble(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace fmc

#endif  // FMC_SYNTH_H_
