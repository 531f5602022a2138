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

// .fmc bitstream container. All integers little-endian.
//
//   sequence header (33 bytes)
//     "FMC1" | version u8 = 1 | width u32 | height u32 | pix_fmt u8 |
//     fps_num u32 | fps_den u32 | refresh_period u16 | q_num u8 |
//     schedule digest u64
//   frame record, repeated (11-byte header + payloads)
//     frame_type u8 (0 intra, 1 inter) | q u8 | refresh_flag u8 |
//     motion_len u32 | coeff_len u32 | motion payload | coeff payload

#ifndef FMC_CONTAINER_H_
#define FMC_CONTAINER_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace fmc {

inline constexpr uint8_t kContainerVersion = 1;
inline constexpr size_t kSequenceHeaderBytes = 33;
inline constexpr size_t kFrameRecordHeaderBytes = 11;

enum class FrameType : uint8_t { kIntra = 0, kInter = 1 };

struct SequenceHeader {
  uint32_t width = 0;
  uint32_t height = 0;
  uint8_t pix_fmt = 0;  // RawFormat
  uint32_t fps_num = 30;
  uint32_t fps_den = 1;
  uint16_t refresh_period = 32;
  uint8_t q_num = 64;
  uint64_t schedule_digest = 0;

  bool operator==(const SequenceHeader&) const = default;
};

struct FrameRecord {
  FrameType frame_type = FrameType::kIntra;
  uint8_t q = 0;
  bool refresh_flag = false;
  std::vector<uint8_t> motion;
  std::vector<uint8_t> coeff;

  // Record header plus payloads.
  size_t SizeBytes() const {
    return kFrameRecordHeaderBytes + motion.size() + coeff.size();
  }
  bool operator==(const FrameRecord&) const = default;
};

struct Bitstream {
  SequenceHeader header;
  std::vector<FrameRecord> records;

  bool operator==(const Bitstream&) const = default;
};

std::vector<uint8_t> SerializeBitstream(const Bitstream& bitstream);
// Validates magic, version, field ranges (q < q_num) and record lengths.
Bitstream ParseBitstream(std::span<const uint8_t> bytes);

void SaveBitstream(const std::filesystem::path& path,
                   const Bitstream& bitstream);
Bitstream LoadBitstream(const std::filesystem::path& path);

}  // namespace fmc

#endif  // FMC_CONTAINER_H_
