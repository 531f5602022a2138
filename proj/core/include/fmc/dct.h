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

#ifndef FMC_DCT_H_
#define FMC_DCT_H_

#include "fmc/quant.h"

namespace fmc {

// Orthonormal 2-D type-II DCT on a row-major 8x8 block, and its inverse.
Block8x8 Dct8Forward(const Block8x8& samples);
Block8x8 Dct8Inverse(const Block8x8& coeffs);

}  // namespace fmc

#endif  // FMC_DCT_H_
