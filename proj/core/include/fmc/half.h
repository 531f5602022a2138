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

// IEEE 754 binary16 storage emulation (round-to-nearest-even).

#ifndef FMC_HALF_H_
#define FMC_HALF_H_

#include <cstdint>

namespace fmc {

uint16_t FloatToHalfBits(float value);
float HalfBitsToFloat(uint16_t bits);

// Value after a round trip through binary16.
inline float RoundToHalf(float value) {
  return HalfBitsToFloat(FloatToHalfBits(value));
}

}  // namespace fmc

#endif  // FMC_HALF_H_
