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

#include "fmc/half.h"

#include <bit>

namespace fmc {

uint16_t FloatToHalfBits(float value) {
  uint32_t u = std::bit_cast<uint32_t>(value);
  const uint32_t sign = (u >> 16) & 0x8000u;
  u &= 0x7fffffffu;

  constexpr uint32_t kOverflow = (127u + 16u) << 23;  // 2^16
  constexpr uint32_t kMinNormal = 113u << 23;         // 2^-14
  uint16_t out;
  if (u >= kOverflow) {
    // Inf stays Inf, NaN stays a quiet NaN, finite overflow becomes Inf.
    out = u > 0x7f800000u ? 0x7e00 : 0x7c00;
  } else if (u < kMinNormal) {
    // Subnormal or zero: let the FPU round by adding a magic constant that
    // aligns the 2^-24 unit with the float's last mantissa bit.
    constexpr uint32_t kMagicBits = ((127u - 15u) + (23u - 10u) + 1u) << 23;
    const float magic = std::bit_cast<float>(kMagicBits);
    const float shifted = std::bit_cast<float>(u) + magic;
    out = static_cast<uint16_t>(std::bit_cast<uint32_t>(shifted) - kMagicBits);
  } else {
    const uint32_t mant_odd = (u >> 13) & 1u;
    // Rebias the exponent and round to nearest even; a carry out of the
    // mantissa correctly bumps the exponent (possibly to Inf).
    u += (static_cast<uint32_t>(15 - 127) << 23) + 0xfffu;
    u += mant_odd;
    out = static_cast<uint16_t>(u >> 13);
  }
  return static_cast<uint16_t>(out | sign);
}

float HalfBitsToFloat(uint16_t bits) {
  const uint32_t sign = static_cast<uint32_t>(bits & 0x8000u) << 16;
  const uint32_t exp = (bits >> 10) & 0x1fu;
  const uint32_t mant = bits & 0x3ffu;
  uint32_t u;
  if (exp == 0x1f) {
    u = sign | 0x7f800000u | (mant << 13);
  } else if (exp != 0) {
    u = sign | ((exp + 127u - 15u) << 23) | (mant << 13);
  } else if (mant == 0) {
    u = sign;
  } else {
    // Subnormal: value = mant * 2^-24, exact in float.
    const float f = static_cast<float>(mant) * 5.9604644775390625e-8f;
    u = sign | std::bit_cast<uint32_t>(f);
  }
  return std::bit_cast<float>(u);
}

}  // namespace fmc
