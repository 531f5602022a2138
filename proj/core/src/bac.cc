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

#include "fmc/bac.h"

#include <algorithm>
#include <string>

#include "fmc/error.h"

namespace fmc {
namespace {

constexpr uint32_t kTop = 1u << 24;
constexpr int kProbBits = 16;
constexpr int kInitBytes = 5;

}  // namespace

void BinaryContext::Update(int bit) {
  const int s = shift();
  int p = p_one_;
  if (bit) {
    p += (65536 - p) >> s;
  } else {
    p -= p >> s;
  }
  p_one_ = static_cast<uint16_t>(std::clamp<int>(p, kMinProb, kMaxProb));
  if (count_ < 255) ++count_;
}

void BacEncoder::EncodeBit(BinaryContext& ctx, int bit) {
  const uint32_t bound = (range_ >> kProbBits) * ctx.p_one();
  if (bit) {
    range_ = bound;
  } else {
    low_ += bound;
    range_ -= bound;
  }
  ctx.Update(bit);
  Normalize();
}

void BacEncoder::EncodeBypass(int bit) {
  range_ >>= 1;
  if (bit) low_ += range_;
  Normalize();
}

void BacEncoder::EncodeBypassBits(uint32_t value, int count) {
  for (int i = count - 1; i >= 0; --i) EncodeBypass((value >> i) & 1u);
}

void BacEncoder::Normalize() {
  while (range_ < kTop) {
    range_ <<= 8;
    ShiftLow();
  }
}

void BacEncoder::ShiftLow() {
  if (static_cast<uint32_t>(low_) < 0xff000000u || (low_ >> 32) != 0) {
    const uint8_t carry = static_cast<uint8_t>(low_ >> 32);
    uint8_t temp = cache_;
    do {
      out_.push_back(static_cast<uint8_t>(temp + carry));
      temp = 0xff;
    } while (--cache_size_ != 0);
    cache_ = static_cast<uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ & 0x00ffffffu) << 8;
}

std::vector<uint8_t> BacEncoder::Finish() {
  for (int i = 0; i < kInitBytes; ++i) ShiftLow();
  return std::move(out_);
}

BacDecoder::BacDecoder(std::span<const uint8_t> payload) : in_(payload) {
  if (payload.size() < kInitBytes) {
    Fail(ErrorCode::kCorrupt, "arithmetic payload shorter than " +
                                  std::to_string(kInitBytes) + " bytes");
  }
  for (int i = 0; i < kInitBytes; ++i) code_ = (code_ << 8) | NextByte();
}

uint8_t BacDecoder::NextByte() {
  if (pos_ >= in_.size()) {
    Fail(ErrorCode::kCorrupt, "arithmetic decoder ran past end of payload");
  }
  return in_[pos_++];
}

void BacDecoder::Normalize() {
  while (range_ < kTop) {
    range_ <<= 8;
    code_ = (code_ << 8) | NextByte();
  }
}

int BacDecoder::DecodeBit(BinaryContext& ctx) {
  const uint32_t bound = (range_ >> kProbBits) * ctx.p_one();
  int bit;
  if (code_ < bound) {
    range_ = bound;
    bit = 1;
  } else {
    code_ -= bound;
    range_ -= bound;
    bit = 0;
  }
  ctx.Update(bit);
  Normalize();
  return bit;
}

int BacDecoder::DecodeBypass() {
  range_ >>= 1;
  int bit = 0;
  if (code_ >= range_) {
    code_ -= range_;
    bit = 1;
  }
  Normalize();
  return bit;
}

uint32_t BacDecoder::DecodeBypassBits(int count) {
  uint32_t v = 0;
  for (int i = 0; i < count; ++i) v = (v << 1) | DecodeBypass();
  return v;
}

void BacDecoder::Finish() const {
  if (pos_ != in_.size()) {
    Fail(ErrorCode::kCorrupt,
         "arithmetic payload length mismatch: consumed " +
             std::to_string(pos_) + " of " + std::to_string(in_.size()) +
             " bytes");
  }
}

}  // namespace fmc
