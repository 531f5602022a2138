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

#include "fmc/container.h"

#include <string>

#include "fmc/error.h"
#include "fmc/raw_io.h"

namespace fmc {
namespace {

constexpr uint8_t kMagic[4] = {'F', 'M', 'C', '1'};

class ByteWriter {
 public:
  explicit ByteWriter(std::vector<uint8_t>& out) : out_(out) {}
  void Put(uint64_t value, int bytes) {
    for (int i = 0; i < bytes; ++i) {
      out_.push_back(static_cast<uint8_t>(value >> (8 * i)));
    }
  }
  void Put(std::span<const uint8_t> bytes) {
    out_.insert(out_.end(), bytes.begin(), bytes.end());
  }

 private:
  std::vector<uint8_t>& out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> in) : in_(in) {}
  uint64_t Get(int bytes) {
    Need(bytes);
    uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
      v |= static_cast<uint64_t>(in_[pos_ + i]) << (8 * i);
    }
    pos_ += bytes;
    return v;
  }
  std::vector<uint8_t> Take(size_t n) {
    Need(n);
    std::vector<uint8_t> out(in_.begin() + pos_, in_.begin() + pos_ + n);
    pos_ += n;
    return out;
  }
  bool done() const { return pos_ == in_.size(); }
  size_t pos() const { return pos_; }

 private:
  void Need(size_t n) const {
    if (in_.size() - pos_ < n) {
      Fail(ErrorCode::kFormat, "bitstream truncated at byte " +
                                   std::to_string(pos_));
    }
  }
  std::span<const uint8_t> in_;
  size_t pos_ = 0;
};

}  // namespace

std::vector<uint8_t> SerializeBitstream(const Bitstream& bitstream) {
  std::vector<uint8_t> out;
  ByteWriter w(out);
  const SequenceHeader& h = bitstream.header;
  w.Put(kMagic);
  w.Put(kContainerVersion, 1);
  w.Put(h.width, 4);
  w.Put(h.height, 4);
  w.Put(h.pix_fmt, 1);
  w.Put(h.fps_num, 4);
  w.Put(h.fps_den, 4);
  w.Put(h.refresh_period, 2);
  w.Put(h.q_num, 1);
  w.Put(h.schedule_digest, 8);
  for (const FrameRecord& r : bitstream.records) {
    Require(r.q < h.q_num, "record q exceeds q_num");
    w.Put(static_cast<uint8_t>(r.frame_type), 1);
    w.Put(r.q, 1);
    w.Put(r.refresh_flag ? 1 : 0, 1);
    w.Put(r.motion.size(), 4);
    w.Put(r.coeff.size(), 4);
    w.Put(r.motion);
    w.Put(r.coeff);
  }
  return out;
}

Bitstream ParseBitstream(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  if (bytes.size() < kSequenceHeaderBytes ||
      !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    Fail(ErrorCode::kFormat, "not an FMC1 bitstream");
  }
  r.Get(4);
  const uint64_t version = r.Get(1);
  if (version != kContainerVersion) {
    Fail(ErrorCode::kFormat,
         "unsupported bitstream version " + std::to_string(version));
  }
  Bitstream bs;
  SequenceHeader& h = bs.header;
  h.width = static_cast<uint32_t>(r.Get(4));
  h.height = static_cast<uint32_t>(r.Get(4));
  h.pix_fmt = static_cast<uint8_t>(r.Get(1));
  h.fps_num = static_cast<uint32_t>(r.Get(4));
  h.fps_den = static_cast<uint32_t>(r.Get(4));
  h.refresh_period = static_cast<uint16_t>(r.Get(2));
  h.q_num = static_cast<uint8_t>(r.Get(1));
  h.schedule_digest = r.Get(8);
  if (h.pix_fmt > static_cast<uint8_t>(RawFormat::kRgb24)) {
    Fail(ErrorCode::kFormat, "unknown pix_fmt in header");
  }
  if (h.q_num < 2 || h.fps_num == 0 || h.fps_den == 0 || h.width < 16 ||
      h.height < 16) {
    Fail(ErrorCode::kFormat, "invalid sequence header");
  }
  while (!r.done()) {
    FrameRecord rec;
    const uint64_t type = r.Get(1);
    if (type > 1) Fail(ErrorCode::kFormat, "invalid frame_type");
    rec.frame_type = static_cast<FrameType>(type);
    rec.q = static_cast<uint8_t>(r.Get(1));
    if (rec.q >= h.q_num) {
      Fail(ErrorCode::kFormat, "record q " + std::to_string(rec.q) +
                                   " >= q_num " + std::to_string(h.q_num));
    }
    const uint64_t refresh = r.Get(1);
    if (refresh > 1) Fail(ErrorCode::kFormat, "invalid refresh_flag");
    rec.refresh_flag = refresh == 1;
    const size_t motion_len = r.Get(4);
    const size_t coeff_len = r.Get(4);
    rec.motion = r.Take(motion_len);
    rec.coeff = r.Take(coeff_len);
    bs.records.push_back(std::move(rec));
  }
  return bs;
}

void SaveBitstream(const std::filesystem::path& path,
                   const Bitstream& bitstream) {
  WriteFileBytes(path, SerializeBitstream(bitstream));
}

Bitstream LoadBitstream(const std::filesystem::path& path) {
  return ParseBitstream(ReadFileBytes(path));
}

}  // namespace fmc
