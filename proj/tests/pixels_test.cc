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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fmc/color.h"
#include "fmc/error.h"
#include "fmc/frame.h"
#include "fmc/quality.h"
#include "fmc/raw_io.h"
#include "test_util.h"

namespace fmc {
namespace {

using ::fmc::testing::TempDir;

// Reference values from a 40-digit evaluation of the BT.709 matrix.
constexpr double kRedY = 54.213;
constexpr double kRedU = 98.784112955378314;
constexpr double kRedV = 255.5;

TEST(FrameTest, RejectsTinyDimensions) {
  EXPECT_THROW(Frame(15, 16, PixelFormat::kYuv444R), Error);
  EXPECT_THROW(Frame(16, 15, PixelFormat::kYuv420P8), Error);
}

TEST(FrameTest, ChromaPlanesRoundUp) {
  Frame f(17, 33, PixelFormat::kYuv420P8);
  EXPECT_EQ(f.plane(1).width(), 9);
  EXPECT_EQ(f.plane(1).height(), 17);
  EXPECT_EQ(f.plane(0).width(), 17);
}

TEST(FrameTest, ValidateRejectsFractionalEightBit) {
  Frame f(16, 16, PixelFormat::kYuv420P8, 10.0f);
  f.Validate();
  f.plane(0).at(3, 3) = 1.5f;
  EXPECT_THROW(f.Validate(), Error);
  f.plane(0).at(3, 3) = 256.0f;
  EXPECT_THROW(f.Validate(), Error);
}

TEST(FrameTest, ValidateRejectsNonFinite) {
  Frame f(16, 16, PixelFormat::kYuv444R);
  f.plane(2).at(0, 0) = std::nanf("");
  EXPECT_THROW(f.Validate(), Error);
}

TEST(RawIoTest, Yuv420FileOfTwoFrames) {
  std::vector<uint8_t> bytes(12288, 7);
  Clip clip = ParseRaw(bytes, 64, 64, RawFormat::kYuv420p);
  ASSERT_EQ(clip.frames.size(), 2u);
  EXPECT_EQ(clip.frames[0].format(), PixelFormat::kYuv420P8);
}

TEST(RawIoTest, Rgb24FileOfOneFrame) {
  std::vector<uint8_t> bytes(12288, 7);
  Clip clip = ParseRaw(bytes, 64, 64, RawFormat::kRgb24);
  ASSERT_EQ(clip.frames.size(), 1u);
  EXPECT_EQ(clip.frames[0].format(), PixelFormat::kRgbR);
}

TEST(RawIoTest, TruncatedFileIsFormatError) {
  std::vector<uint8_t> bytes(12287, 7);
  try {
    ParseRaw(bytes, 64, 64, RawFormat::kYuv420p);
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormat);
  }
}

TEST(RawIoTest, RawRoundTripIsByteExact) {
  std::mt19937 rng(3);
  std::vector<uint8_t> bytes(RawFrameBytes(48, 32, RawFormat::kRgb24) * 3);
  for (auto& b : bytes) b = static_cast<uint8_t>(rng());
  Clip clip = ParseRaw(bytes, 48, 32, RawFormat::kRgb24);
  EXPECT_EQ(SerializeRaw(clip.frames, RawFormat::kRgb24), bytes);
  std::vector<uint8_t> yuv(RawFrameBytes(48, 32, RawFormat::kYuv420p) * 2);
  for (auto& b : yuv) b = static_cast<uint8_t>(rng());
  Clip c2 = ParseRaw(yuv, 48, 32, RawFormat::kYuv420p);
  EXPECT_EQ(SerializeRaw(c2.frames, RawFormat::kYuv420p), yuv);
}

// Hand-built y4m stream, independent of the library writer.
std::vector<uint8_t> HandY4m(int w, int h, const std::string& tags,
                             int frames) {
  std::string header = "YUV4MPEG2 W" + std::to_string(w) + " H" +
                       std::to_string(h) + " " + tags + "\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  const size_t payload = static_cast<size_t>(w) * h +
                         2 * static_cast<size_t>((w + 1) / 2) * ((h + 1) / 2);
  for (int f = 0; f < frames; ++f) {
    const std::string tag = "FRAME\n";
    out.insert(out.end(), tag.begin(), tag.end());
    for (size_t i = 0; i < payload; ++i) {
      out.push_back(static_cast<uint8_t>((i * 7 + f) & 0xff));
    }
  }
  return out;
}

TEST(RawIoTest, Y4mHeaderAndPayload) {
  auto bytes = HandY4m(64, 64, "F30:1 C420 Ip A1:1", 1);
  Clip clip = ParseY4m(bytes);
  ASSERT_EQ(clip.frames.size(), 1u);
  EXPECT_EQ(clip.fps, (Rational{30, 1}));
  EXPECT_EQ(clip.frames[0].width(), 64);
  EXPECT_EQ(clip.frames[0].plane(0).at(1, 0), 7.0f);
  EXPECT_EQ(clip.frames[0].plane(1).at(0, 0),
            static_cast<float>((64 * 64 * 7) & 0xff));
}

TEST(RawIoTest, Y4mWriterRoundTrip) {
  Clip clip = fmc::testing::PanClip(3);
  clip.fps = {25, 2};
  auto bytes = SerializeY4m(clip.frames, clip.fps);
  Clip back = ParseY4m(bytes);
  ASSERT_EQ(back.frames.size(), 3u);
  EXPECT_EQ(back.fps, clip.fps);
  for (size_t i = 0; i < 3; ++i) EXPECT_EQ(back.frames[i], clip.frames[i]);
}

TEST(RawIoTest, Y4mUnsupportedChroma) {
  auto bytes = HandY4m(64, 64, "F30:1 C444", 1);
  EXPECT_THROW(ParseY4m(bytes), Error);
}

TEST(RawIoTest, Y4mMalformedNumbersAreFormatErrors) {
  for (const char* tags : {"F30:x C420", "F:1 C420", "F30:0 C420"}) {
    auto bytes = HandY4m(64, 64, tags, 1);
    try {
      ParseY4m(bytes);
      FAIL() << tags;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kFormat) << tags;
    }
  }
  std::string bad = "YUV4MPEG2 Wabc H64 F30:1\n";
  std::vector<uint8_t> bytes(bad.begin(), bad.end());
  EXPECT_THROW(ParseY4m(bytes), Error);
}

TEST(RawIoTest, Y4mTruncatedFrame) {
  auto bytes = HandY4m(64, 64, "F30:1", 2);
  bytes.resize(bytes.size() - 10);
  EXPECT_THROW(ParseY4m(bytes), Error);
}

TEST(RawIoTest, LoadRawDetectsY4mAndChecksDims) {
  TempDir dir("pixels");
  auto bytes = HandY4m(32, 16, "F24:1", 2);
  WriteFileBytes(dir / "a.y4m", bytes);
  Clip clip = LoadRaw(dir / "a.y4m", 0, 0, RawFormat::kYuv420p);
  EXPECT_EQ(clip.frames.size(), 2u);
  EXPECT_EQ(clip.fps, (Rational{24, 1}));
  EXPECT_THROW(LoadRaw(dir / "a.y4m", 64, 16, RawFormat::kYuv420p), Error);
  try {
    LoadRaw(dir / "missing.yuv", 32, 16, RawFormat::kYuv420p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(ColorTest, WhiteAndBlack) {
  Yuv w = RgbToYuv709({255, 255, 255});
  EXPECT_NEAR(w.y, 255.0, 1e-12);
  EXPECT_NEAR(w.u, 128.0, 1e-12);
  EXPECT_NEAR(w.v, 128.0, 1e-12);
  Yuv k = RgbToYuv709({0, 0, 0});
  EXPECT_EQ(k.y, 0.0);
  EXPECT_EQ(k.u, 128.0);
  EXPECT_EQ(k.v, 128.0);
}

TEST(ColorTest, PureRedMatchesHighPrecisionOracle) {
  Yuv r = RgbToYuv709({255, 0, 0});
  EXPECT_NEAR(r.y, kRedY, 1e-9);
  EXPECT_NEAR(r.u, kRedU, 1e-9);
  EXPECT_NEAR(r.v, kRedV, 1e-9);
}

TEST(ColorTest, InverseOfWhite) {
  Rgb c = YuvToRgb709({255, 128, 128});
  EXPECT_NEAR(c.r, 255.0, 1e-12);
  EXPECT_NEAR(c.g, 255.0, 1e-12);
  EXPECT_NEAR(c.b, 255.0, 1e-12);
}

TEST(ColorTest, GrayLevelsRoundTripExactly) {
  Frame rgb(256, 16, PixelFormat::kRgbR);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 256; ++x) {
      for (int c = 0; c < 3; ++c) rgb.plane(c).at(x, y) = static_cast<float>(x);
    }
  }
  Frame back = Yuv444ToRgb(RgbToYuv444(rgb));
  RoundToEightBit(back);
  EXPECT_EQ(back, rgb);
}

TEST(ColorTest, RandomTriplesRoundTripWithinOne) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(0, 255);
  double max_err = 0.0;
  for (int i = 0; i < 100000; ++i) {
    Rgb in{static_cast<double>(d(rng)), static_cast<double>(d(rng)),
           static_cast<double>(d(rng))};
    Rgb out = YuvToRgb709(RgbToYuv709(in));
    max_err = std::max({max_err, std::fabs(out.r - in.r),
                        std::fabs(out.g - in.g), std::fabs(out.b - in.b)});
  }
  EXPECT_LT(max_err, 1.0);
  EXPECT_LT(max_err, 1e-9);
}

TEST(ColorTest, FrameConversionClampsButDoesNotRound) {
  Frame yuv(16, 16, PixelFormat::kYuv444R, 128.0f);
  yuv.plane(0).at(0, 0) = 300.0f;
  yuv.plane(0).at(1, 0) = 100.25f;
  Frame rgb = Yuv444ToRgb(yuv);
  EXPECT_EQ(rgb.plane(0).at(0, 0), 255.0f);
  EXPECT_NEAR(rgb.plane(1).at(1, 0), 100.25f, 1e-4);
}

TEST(ChromaTest, ConstantSurvivesUpAndDown) {
  Frame f(33, 17, PixelFormat::kYuv420P8, 77.0f);
  Frame up = ChromaUpsample(f);
  for (int c = 1; c < 3; ++c) {
    for (float v : up.plane(c).samples()) EXPECT_EQ(v, 77.0f);
  }
  Frame down = ChromaDownsample(up);
  EXPECT_EQ(down, f);
}

TEST(ChromaTest, RampUpThenDownWithinOne) {
  // One level per chroma sample: 256 chroma columns span 0..255.
  Frame f(512, 32, PixelFormat::kYuv420P8);
  const int cw = f.plane(1).width();
  for (int c = 1; c < 3; ++c) {
    for (int y = 0; y < f.plane(c).height(); ++y) {
      for (int x = 0; x < cw; ++x) {
        f.plane(c).at(x, y) = std::round(255.0f * x / (cw - 1));
      }
    }
  }
  Frame down = ChromaDownsample(ChromaUpsample(f));
  double max_dev = 0.0;
  for (int c = 1; c < 3; ++c) {
    for (size_t i = 0; i < f.plane(c).size(); ++i) {
      max_dev = std::max(max_dev,
                         std::fabs(static_cast<double>(
                             down.plane(c).samples()[i] -
                             f.plane(c).samples()[i])));
    }
  }
  EXPECT_LE(max_dev, 1.0);
}

TEST(ChromaTest, UpsampleIsCositedBilinear) {
  Frame f(16, 16, PixelFormat::kYuv420P8, 0.0f);
  f.plane(1).at(0, 0) = 0.0f;
  f.plane(1).at(1, 0) = 100.0f;
  Frame up = ChromaUpsample(f);
  EXPECT_EQ(up.plane(1).at(0, 0), 0.0f);
  EXPECT_EQ(up.plane(1).at(1, 0), 50.0f);
  EXPECT_EQ(up.plane(1).at(2, 0), 100.0f);
  EXPECT_EQ(up.plane(0), f.plane(0));
}

TEST(QualityTest, IdenticalFramesHitCap) {
  Clip clip = fmc::testing::PanClip(1);
  QualityReport q = ComputeQuality(clip.frames[0], clip.frames[0]);
  EXPECT_EQ(q.psnr_y, kDefaultPsnrCap);
  EXPECT_EQ(q.psnr_u, kDefaultPsnrCap);
  EXPECT_EQ(q.psnr_v, kDefaultPsnrCap);
  EXPECT_EQ(q.psnr_weighted, kDefaultPsnrCap);
  QualityReport q60 = ComputeQuality(clip.frames[0], clip.frames[0], 60.0);
  EXPECT_EQ(q60.psnr_weighted, 60.0);
}

TEST(QualityTest, LumaOffByOne) {
  Frame a(32, 32, PixelFormat::kYuv420P8, 100.0f);
  Frame b = a;
  for (float& v : b.plane(0).samples()) v += 1.0f;
  QualityReport q = ComputeQuality(a, b);
  EXPECT_NEAR(q.psnr_y, 20.0 * std::log10(255.0), 1e-12);
  EXPECT_NEAR(q.psnr_y, 48.131, 1e-3);
  EXPECT_EQ(q.psnr_u, kDefaultPsnrCap);
}

TEST(QualityTest, WeightedFormula) {
  EXPECT_DOUBLE_EQ(WeightedPsnr(40, 44, 44), 41.0);
  EXPECT_DOUBLE_EQ(WeightedPsnr(37.5, 37.5, 37.5), 37.5);
}

TEST(QualityTest, SymmetricAndWeighted) {
  Frame a = fmc::testing::RandomFrame444(32, 32, 1);
  Frame b = fmc::testing::RandomFrame444(32, 32, 2);
  QualityReport ab = ComputeQuality(a, b);
  QualityReport ba = ComputeQuality(b, a);
  EXPECT_EQ(ab.psnr_y, ba.psnr_y);
  EXPECT_EQ(ab.psnr_weighted, ba.psnr_weighted);
  EXPECT_DOUBLE_EQ(ab.psnr_weighted,
                   (6 * ab.psnr_y + ab.psnr_u + ab.psnr_v) / 8);
  EXPECT_FALSE(ab.psnr_rgb.has_value());
}

TEST(QualityTest, RgbInputsReportCombinedDistortion) {
  Frame a(16, 16, PixelFormat::kRgbR, 50.0f);
  Frame b = a;
  for (float& v : b.plane(0).samples()) v = 52.0f;  // R off by 2
  QualityReport q = ComputeQuality(a, b);
  ASSERT_TRUE(q.psnr_rgb.has_value());
  // D_rgb = mean of plane MSEs = 4 / 3.
  EXPECT_NEAR(*q.psnr_rgb, 10 * std::log10(255.0 * 255.0 / (4.0 / 3.0)),
              1e-9);
  const double dy = std::pow(2 * kBt709Kr, 2);
  const double du = std::pow(-2 * kBt709Kr / kBt709CbScale, 2);
  const double dv = std::pow(2 * (1 - kBt709Kr) / kBt709CrScale, 2);
  const double d_yuv = (dy + du + dv) / 3;
  EXPECT_NEAR(q.combined_distortion, 0.8 * d_yuv + 0.2 * (4.0 / 3.0), 1e-4);
}

TEST(QualityTest, DimensionMismatch) {
  Frame a(16, 16, PixelFormat::kYuv420P8);
  Frame b(32, 16, PixelFormat::kYuv420P8);
  EXPECT_THROW(ComputeQuality(a, b), Error);
}

}  // namespace
}  // namespace fmc
