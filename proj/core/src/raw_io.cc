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

#include "fmc/raw_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "fmc/error.h"

namespace fmc {
namespace {

constexpr std::string_view kY4mMagic = "YUV4MPEG2";
constexpr std::string_view kY4mFrameTag = "FRAME";

uint8_t ToByte(float v) {
  return static_cast<uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

void ReadPlane(std::span<const uint8_t> src, Plane& plane) {
  auto dst = plane.samples();
  for (size_t i = 0; i < dst.size(); ++i) dst[i] = src[i];
}

Frame DecodeYuv420(std::span<const uint8_t> src, int width, int height) {
  Frame f(width, height, PixelFormat::kYuv420P8);
  size_t offset = 0;
  for (int c = 0; c < 3; ++c) {
    const size_t n = f.plane(c).size();
    ReadPlane(src.subspan(offset, n), f.plane(c));
    offset += n;
  }
  return f;
}

Frame DecodeRgb24(std::span<const uint8_t> src, int width, int height) {
  Frame f(width, height, PixelFormat::kRgbR);
  const size_t n = static_cast<size_t>(width) * height;
  for (int c = 0; c < 3; ++c) {
    auto dst = f.plane(c).samples();
    for (size_t i = 0; i < n; ++i) dst[i] = src[3 * i + c];
  }
  return f;
}

void AppendFrame(const Frame& frame, RawFormat format,
                 std::vector<uint8_t>& out) {
  if (format == RawFormat::kYuv420p) {
    Require(frame.format() == PixelFormat::kYuv420P8,
            "yuv420p output needs a 4:2:0 frame");
    for (int c = 0; c < 3; ++c) {
      for (float v : frame.plane(c).samples()) out.push_back(ToByte(v));
    }
  } else {
    Require(frame.format() == PixelFormat::kRgbR, "rgb24 output needs RGB");
    const size_t n = frame.plane(0).size();
    for (size_t i = 0; i < n; ++i) {
      for (int c = 0; c < 3; ++c) {
        out.push_back(ToByte(frame.plane(c).samples()[i]));
      }
    }
  }
}

bool StartsWith(std::span<const uint8_t> bytes, std::string_view prefix) {
  return bytes.size() >= prefix.size() &&
         std::equal(prefix.begin(), prefix.end(), bytes.begin());
}

}  // namespace

RawFormat ParseRawFormat(std::string_view name) {
  if (name == "yuv420p") return RawFormat::kYuv420p;
  if (name == "rgb24") return RawFormat::kRgb24;
  Fail(ErrorCode::kInvalidArgument,
       "unknown pixel format '" + std::string(name) + "'");
}

std::string_view RawFormatName(RawFormat format) {
  return format == RawFormat::kYuv420p ? "yuv420p" : "rgb24";
}

PixelFormat FramePixelFormat(RawFormat format) {
  return format == RawFormat::kYuv420p ? PixelFormat::kYuv420P8
                                       : PixelFormat::kRgbR;
}

size_t RawFrameBytes(int width, int height, RawFormat format) {
  const size_t luma = static_cast<size_t>(width) * height;
  if (format == RawFormat::kRgb24) return 3 * luma;
  return luma + 2 * static_cast<size_t>(ChromaDim(width)) * ChromaDim(height);
}

Clip ParseRaw(std::span<const uint8_t> bytes, int width, int height,
              RawFormat format) {
  if (StartsWith(bytes, kY4mMagic)) {
    Clip clip = ParseY4m(bytes);
    if ((width != 0 && width != clip.frames.front().width()) ||
        (height != 0 && height != clip.frames.front().height())) {
      Fail(ErrorCode::kFormat, "y4m header dimensions differ from request");
    }
    return clip;
  }
  Require(width >= kMinFrameDim && height >= kMinFrameDim,
          "raw input needs --width/--height of at least 16");
  const size_t frame_bytes = RawFrameBytes(width, height, format);
  if (bytes.empty() || bytes.size() % frame_bytes != 0) {
    Fail(ErrorCode::kFormat,
         "file size " + std::to_string(bytes.size()) +
             " is not a multiple of the frame size " +
             std::to_string(frame_bytes) + " (truncated or wrong dimensions)");
  }
  Clip clip;
  clip.format = format;
  for (size_t off = 0; off < bytes.size(); off += frame_bytes) {
    auto src = bytes.subspan(off, frame_bytes);
    clip.frames.push_back(format == RawFormat::kYuv420p
                              ? DecodeYuv420(src, width, height)
                              : DecodeRgb24(src, width, height));
  }
  return clip;
}

namespace {

template <typename T>
T ParseHeaderInt(std::string_view text, const std::string& token) {
  T value{};
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    Fail(ErrorCode::kFormat, "bad y4m header token '" + token + "'");
  }
  return value;
}

}  // namespace

Clip ParseY4m(std::span<const uint8_t> bytes) {
  const auto newline = std::find(bytes.begin(), bytes.end(), uint8_t{'\n'});
  if (!StartsWith(bytes, kY4mMagic) || newline == bytes.end()) {
    Fail(ErrorCode::kFormat, "missing y4m header");
  }
  std::istringstream header(std::string(bytes.begin(), newline));
  std::string token;
  header >> token;  // magic
  int width = 0;
  int height = 0;
  Rational fps;
  while (header >> token) {
    const char key = token[0];
    const std::string value = token.substr(1);
    switch (key) {
      case 'W':
        width = ParseHeaderInt<int>(value, token);
        break;
      case 'H':
        height = ParseHeaderInt<int>(value, token);
        break;
      case 'F': {
        const auto colon = value.find(':');
        if (colon == std::string::npos) {
          Fail(ErrorCode::kFormat, "bad y4m frame rate '" + value + "'");
        }
        fps.num = ParseHeaderInt<uint32_t>(value.substr(0, colon), token);
        fps.den = ParseHeaderInt<uint32_t>(value.substr(colon + 1), token);
        if (fps.num == 0 || fps.den == 0) {
          Fail(ErrorCode::kFormat, "bad y4m frame rate '" + value + "'");
        }
        break;
      }
      case 'C':
        // Every 8-bit 4:2:0 siting variant is read the same way.
        if (value != "420" && value != "420jpeg" && value != "420paldv" &&
            value != "420mpeg2") {
          Fail(ErrorCode::kFormat, "unsupported y4m chroma tag C" + value);
        }
        break;
      default:
        break;  // I, A, X and unknown tags are ignored.
    }
  }
  if (width < kMinFrameDim || height < kMinFrameDim) {
    Fail(ErrorCode::kFormat, "y4m header lacks valid W/H");
  }
  Clip clip;
  clip.fps = fps;
  clip.format = RawFormat::kYuv420p;
  const size_t frame_bytes = RawFrameBytes(width, height, RawFormat::kYuv420p);
  size_t pos = static_cast<size_t>(newline - bytes.begin()) + 1;
  while (pos < bytes.size()) {
    if (!StartsWith(bytes.subspan(pos), kY4mFrameTag)) {
      Fail(ErrorCode::kFormat, "expected FRAME marker in y4m stream");
    }
    const auto line_end =
        std::find(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                  bytes.end(), uint8_t{'\n'});
    if (line_end == bytes.end()) Fail(ErrorCode::kFormat, "truncated y4m");
    pos = static_cast<size_t>(line_end - bytes.begin()) + 1;
    if (bytes.size() - pos < frame_bytes) {
      Fail(ErrorCode::kFormat, "truncated y4m frame payload");
    }
    clip.frames.push_back(
        DecodeYuv420(bytes.subspan(pos, frame_bytes), width, height));
    pos += frame_bytes;
  }
  if (clip.frames.empty()) Fail(ErrorCode::kFormat, "y4m has no frames");
  return clip;
}

std::vector<uint8_t> SerializeRaw(std::span<const Frame> frames,
                                  RawFormat format) {
  std::vector<uint8_t> out;
  for (const Frame& f : frames) AppendFrame(f, format, out);
  return out;
}

std::vector<uint8_t> SerializeY4m(std::span<const Frame> frames, Rational fps) {
  Require(!frames.empty(), "y4m needs at least one frame");
  std::ostringstream header;
  header << kY4mMagic << " W" << frames.front().width() << " H"
         << frames.front().height() << " F" << fps.num << ":" << fps.den
         << " Ip A1:1 C420\n";
  const std::string h = header.str();
  std::vector<uint8_t> out(h.begin(), h.end());
  for (const Frame& f : frames) {
    out.insert(out.end(), kY4mFrameTag.begin(), kY4mFrameTag.end());
    out.push_back('\n');
    AppendFrame(f, RawFormat::kYuv420p, out);
  }
  return out;
}

Clip LoadRaw(const std::filesystem::path& path, int width, int height,
             RawFormat format) {
  const std::vector<uint8_t> bytes = ReadFileBytes(path);
  return ParseRaw(bytes, width, height, format);
}

void SaveRaw(const std::filesystem::path& path, std::span<const Frame> frames,
             RawFormat format) {
  WriteFileBytes(path, SerializeRaw(frames, format));
}

std::vector<uint8_t> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in),
                              std::istreambuf_iterator<char>());
}

void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) Fail(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace fmc
