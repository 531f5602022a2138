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

// Binarization of quantized coefficient blocks and motion fields.
//
// Coefficient block, in zig-zag order:
//   coded_block flag                          (context per plane class)
//   for each scan position up to the last significant one:
//     significance bit                        (context per plane class, band)
//     if significant: |level| - 1 as exp-Golomb-0 (bypass), sign (bypass),
//                     end-of-block flag       (context per plane class, band)
// Bands: DC = position 0, low = 1..9, high = 10..63. Plane class 0 is luma,
// 1 is chroma.
//
// Motion field, raster order: per block the residual against the predictor
// as signed exp-Golomb-0 (bypass) for dx then dy. In coarse mode both the
// vector and the predictor are first rounded to full-pel (half away from
// zero) and the residual is coded in full-pel units.

#ifndef FMC_SYNTAX_H_
#define FMC_SYNTAX_H_

#include <array>
#include <cstdint>

#include "fmc/bac.h"
#include "fmc/motion.h"
#include "fmc/quant.h"

namespace fmc {

inline constexpr int kNumBands = 3;

extern const std::array<uint8_t, 64> kZigZag;  // scan index -> raster index
int ScanBand(int scan_pos);

struct CoeffContexts {
  BinaryContext coded[2];
  BinaryContext sig[2][kNumBands];
  BinaryContext eob[2][kNumBands];

  void Reset() { *this = CoeffContexts(); }
  bool operator==(const CoeffContexts&) const = default;
};

void EncodeExpGolomb(BacEncoder& enc, uint32_t value);
uint32_t DecodeExpGolomb(BacDecoder& dec);
void EncodeSignedExpGolomb(BacEncoder& enc, int32_t value);
int32_t DecodeSignedExpGolomb(BacDecoder& dec);

void EncodeCoeffBlock(BacEncoder& enc, CoeffContexts& ctx, int plane_class,
                      const LevelBlock& levels);
LevelBlock DecodeCoeffBlock(BacDecoder& dec, CoeffContexts& ctx,
                            int plane_class);

// Full-pel rounding used at low q: half-pel value v -> 2 * round(v / 2),
// ties away from zero.
int RoundToFullPel(int half_pel);
MotionField RoundFieldToFullPel(const MotionField& field);
// Coarse motion when q < q_num / 2.
inline bool UsesCoarseMotion(int q, int q_num) { return q < q_num / 2; }

// Returns the field the decoder will reconstruct (rounded when coarse).
MotionField EncodeMotionField(BacEncoder& enc, const MotionField& field,
                              const MotionField& predictor, bool coarse);
MotionField DecodeMotionField(BacDecoder& dec, const MotionField& predictor,
                              bool coarse);

}  // namespace fmc

#endif  // FMC_SYNTAX_H_
