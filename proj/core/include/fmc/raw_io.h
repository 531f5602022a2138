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

// Raw planar YUV420P8 / packed RGB24 files and a minimal y4m reader/writer.

#ifndef FMC_RAW_IO_H_
#define FMC_RAW_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fmc/frame.h"

namespace fmc {

enum class RawFormat : uint8_t { kYuv420p = 0, kRgb24 = 1 };

struct Rational {
  uint32_t num = 30;
  uint32_t den = 1;
  double value() const { return static_cast<double>(num) / den; }
  bool operator==(const Rational&) const = default;
};

struct Clip {
  std::vector<Frame> frames;
  Rational fps;
  RawFormat format = RawFormat::kYuv420p;
};

RawFormat ParseRawFormat(std::string_view name);  // "yuv420p" | "rgb24"
std::string_view RawFormatName(RawFormat format);
PixelFormat FramePixelFormat(RawFormat format);

size_t RawFrameBytes(int width, int height, RawFormat format);

// Frames of a yuv420p file come back as kYuv420P8, rgb24 as kRgbR with
// integer samples. Files beginning with "YUV4MPEG2" are parsed as y4m; then
// width/height may be 0 (taken from the header) or must match it.
Clip LoadRaw(const std::filesystem::path& path, int width, int height,
             RawFormat format);
Clip ParseRaw(std::span<const uint8_t> bytes, int width, int height,
              RawFormat format);
Clip ParseY4m(std::span<const uint8_t> bytes);

// Samples are rounded and clamped to 8 bits on write.
std::vector<uint8_t> SerializeRaw(std::span<const Frame> frames,
                                  RawFormat format);
std::vector<uint8_t> SerializeY4m(std::span<const Frame> frames, Rational fps);
void SaveRaw(const std::filesystem::path& path, std::span<const Frame> frames,
             RawFormat format);

std::vector<uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const uint8_t> bytes);

}  // namespace fmc

#endif  // FMC_RAW_IO_H_
