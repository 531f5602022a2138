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

// Adaptive binary range coder. 32-bit range, 64-bit low with carry
// propagation, byte-wise renormalization. Integer-only so that encoder and
// decoder agree on every platform.

#ifndef FMC_BAC_H_
#define FMC_BAC_H_

#include <cstdint>
#include <span>
#include <vector>

namespace fmc {

// Probability of a one in 1/65536 units, adapted by shifting toward the
// coded bit. The shift grows from 4 to 7 over the first 96 updates so a
// fresh context learns quickly and then settles to a 1/128 window.
class BinaryContext {
 public:
  static constexpr uint16_t kHalf = 32768;
  static constexpr uint16_t kMinProb = 1;
  static constexpr uint16_t kMaxProb = 65535;

  uint16_t p_one() const { return p_one_; }
  int shift() const { return 4 + (count_ < 96 ? count_ / 32 : 3); }
  void Update(int bit);
  void Reset() { *this = BinaryContext(); }

  bool operator==(const BinaryContext&) const = default;

 private:
  uint16_t p_one_ = kHalf;
  uint8_t count_ = 0;
};

class BacEncoder {
 public:
  BacEncoder() = default;

  void EncodeBit(BinaryContext& ctx, int bit);
  void EncodeBypass(int bit);
  void EncodeBypassBits(uint32_t value, int count);  // MSB first

  // Flushes the coder state and returns the payload. The encoder must not
  // be used afterwards.
  std::vector<uint8_t> Finish();

  // Bytes emitted so far plus pending bytes; a cheap size estimate.
  size_t PendingSize() const { return out_.size() + cache_size_ + 4; }

 private:
  void ShiftLow();
  void Normalize();

  uint64_t low_ = 0;
  uint32_t range_ = 0xffffffffu;
  uint8_t cache_ = 0;
  uint64_t cache_size_ = 1;
  std::vector<uint8_t> out_;
};

class BacDecoder {
 public:
  // Throws fmc::Error(kCorrupt) if the payload is shorter than the coder's
  // initial window.
  explicit BacDecoder(std::span<const uint8_t> payload);

  int DecodeBit(BinaryContext& ctx);
  int DecodeBypass();
  uint32_t DecodeBypassBits(int count);

  // Verifies that every payload byte was consumed; a mismatch means the
  // parse diverged from the encoder.
  void Finish() const;

 private:
  uint8_t NextByte();
  void Normalize();

  std::span<const uint8_t> in_;
  size_t pos_ = 0;
  uint32_t range_ = 0xffffffffu;
  uint32_t code_ = 0;
};

}  // namespace fmc

#endif  // FMC_BAC_H_
