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

#include "fmc/syntax.h"

#include <bit>
#include <cstdlib>

#include "fmc/error.h"

namespace fmc {

const std::array<uint8_t, 64> kZigZag = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

namespace {

// Longest prefix a valid stream can carry; guards against corrupt payloads
// sending the decoder into a 2^k loop.
constexpr int kMaxExpGolombPrefix = 31;
constexpr int64_t kMaxLevelMagnitude = 1 << 24;
constexpr int32_t kMaxMotionResidual = 1 << 16;

int32_t DecodeMotionResidual(BacDecoder& dec) {
  const int32_t r = DecodeSignedExpGolomb(dec);
  if (std::abs(static_cast<int64_t>(r)) > kMaxMotionResidual) {
    Fail(ErrorCode::kCorrupt, "motion residual out of range");
  }
  return r;
}

}  // namespace

int ScanBand(int scan_pos) {
  if (scan_pos == 0) return 0;
  return scan_pos <= 9 ? 1 : 2;
}

void EncodeExpGolomb(BacEncoder& enc, uint32_t value) {
  const uint64_t v = static_cast<uint64_t>(value) + 1;
  const int n = std::bit_width(v) - 1;
  for (int i = 0; i < n; ++i) enc.EncodeBypass(0);
  enc.EncodeBypass(1);
  for (int i = n - 1; i >= 0; --i) enc.EncodeBypass((v >> i) & 1u);
}

uint32_t DecodeExpGolomb(BacDecoder& dec) {
  int n = 0;
  while (dec.DecodeBypass() == 0) {
    if (++n > kMaxExpGolombPrefix) {
      Fail(ErrorCode::kCorrupt, "exp-Golomb prefix too long");
    }
  }
  uint64_t v = 1;
  for (int i = 0; i < n; ++i) v = (v << 1) | dec.DecodeBypass();
  return static_cast<uint32_t>(v - 1);
}

void EncodeSignedExpGolomb(BacEncoder& enc, int32_t value) {
  // 0, 1, -1, 2, -2, ... -> 0, 1, 2, 3, 4, ...
  const int64_t v = value;
  EncodeExpGolomb(enc, static_cast<uint32_t>(v > 0 ? 2 * v - 1 : -2 * v));
}

int32_t DecodeSignedExpGolomb(BacDecoder& dec) {
  const int64_t k = DecodeExpGolomb(dec);
  return static_cast<int32_t>((k & 1) ? (k + 1) / 2 : -(k / 2));
}

void EncodeCoeffBlock(BacEncoder& enc, CoeffContexts& ctx, int plane_class,
                      const LevelBlock& levels) {
  int last = -1;
  for (int i = 63; i >= 0; --i) {
    if (levels[kZigZag[i]] != 0) {
      last = i;
      break;
    }
  }
  enc.EncodeBit(ctx.coded[plane_class], last >= 0);
  if (last < 0) return;
  for (int i = 0; i <= last; ++i) {
    const int32_t level = levels[kZigZag[i]];
    const int band = ScanBand(i);
    enc.EncodeBit(ctx.sig[plane_class][band], level != 0);
    if (level == 0) continue;
    EncodeExpGolomb(enc, static_cast<uint32_t>(std::abs(level)) - 1);
    enc.EncodeBypass(level < 0);
    // Position 63 is implicitly last.
    if (i < 63) enc.EncodeBit(ctx.eob[plane_class][band], i == last);
  }
}

LevelBlock DecodeCoeffBlock(BacDecoder& dec, CoeffContexts& ctx,
                            int plane_class) {
  LevelBlock levels{};
  if (!dec.DecodeBit(ctx.coded[plane_class])) return levels;
  for (int i = 0; i < 64; ++i) {
    const int band = ScanBand(i);
    if (!dec.DecodeBit(ctx.sig[plane_class][band])) {
      if (i == 63) Fail(ErrorCode::kCorrupt, "coefficient block without end");
      continue;
    }
    const int64_t magnitude = static_cast<int64_t>(DecodeExpGolomb(dec)) + 1;
    if (magnitude > kMaxLevelMagnitude) {
      Fail(ErrorCode::kCorrupt, "coefficient level out of range");
    }
    const bool negative = dec.DecodeBypass() != 0;
    levels[kZigZag[i]] =
        static_cast<int32_t>(negative ? -magnitude : magnitude);
    if (i == 63 || dec.DecodeBit(ctx.eob[plane_class][band])) break;
  }
  return levels;
}

int RoundToFullPel(int half_pel) {
  const int mag = (std::abs(half_pel) + 1) / 2;  // half away from zero
  return 2 * (half_pel < 0 ? -mag : mag);
}

MotionField RoundFieldToFullPel(const MotionField& field) {
  MotionField out = field;
  for (MotionVector& v : out.vectors()) {
    v = {RoundToFullPel(v.dx), RoundToFullPel(v.dy)};
  }
  return out;
}

MotionField EncodeMotionField(BacEncoder& enc, const MotionField& field,
                              const MotionField& predictor, bool coarse) {
  Require(field.blocks_x() == predictor.blocks_x() &&
              field.blocks_y() == predictor.blocks_y(),
          "motion predictor grid mismatch");
  const MotionField coded = coarse ? RoundFieldToFullPel(field) : field;
  const MotionField pred = coarse ? RoundFieldToFullPel(predictor) : predictor;
  const int unit = coarse ? 2 : 1;
  for (size_t i = 0; i < coded.size(); ++i) {
    const MotionVector v = coded.vectors()[i];
    const MotionVector p = pred.vectors()[i];
    EncodeSignedExpGolomb(enc, (v.dx - p.dx) / unit);
    EncodeSignedExpGolomb(enc, (v.dy - p.dy) / unit);
  }
  return coded;
}

MotionField DecodeMotionField(BacDecoder& dec, const MotionField& predictor,
                              bool coarse) {
  const MotionField pred = coarse ? RoundFieldToFullPel(predictor) : predictor;
  MotionField out = pred;
  const int unit = coarse ? 2 : 1;
  for (MotionVector& v : out.vectors()) {
    v.dx += unit * DecodeMotionResidual(dec);
    v.dy += unit * DecodeMotionResidual(dec);
  }
  return out;
}

}  // namespace fmc
