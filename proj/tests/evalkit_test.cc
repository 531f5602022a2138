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
#include <limits>
#include <random>
#include <vector>

#include "fmc/bdrate.h"
#include "fmc/error.h"
#include "fmc/eval.h"
#include "test_util.h"

namespace fmc {
namespace {

using ::fmc::testing::HermiteOracle;
using ::fmc::testing::TempDir;

RdCurve MakeCurve(const std::vector<double>& bpp,
                  const std::vector<double>& quality) {
  RdCurve c;
  c.label = "c";
  for (size_t i = 0; i < bpp.size(); ++i) {
    c.points.push_back({bpp[i], quality[i], static_cast<int>(i)});
  }
  return c;
}

RdCurve ScipyAnchor() {
  return MakeCurve({0.05, 0.09, 0.12, 0.25, 0.41, 0.95},
                   {30.0, 33.5, 35.0, 38.2, 41.0, 45.5});
}

RdCurve RandomMonotoneCurve(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> dq(0.3, 4.0);
  std::uniform_real_distribution<double> dr(0.05, 0.9);
  std::uniform_real_distribution<double> start_q(25.0, 35.0);
  std::uniform_real_distribution<double> start_r(-4.0, -1.0);
  std::vector<double> bpp, quality;
  double q = start_q(rng);
  double lr = start_r(rng);
  for (int i = 0; i < n; ++i) {
    quality.push_back(q);
    bpp.push_back(std::exp(lr));
    q += dq(rng);
    lr += dr(rng);
  }
  return MakeCurve(bpp, quality);
}

// Mean of the ln-rate gap sampled at `samples` midpoints of the common
// quality interval.
double DenseBdRate(const RdCurve& a, const RdCurve& b, int samples) {
  auto oracle = [](const RdCurve& c) {
    std::vector<double> x, y;
    for (const RdPoint& p : c.points) {
      x.push_back(p.quality);
      y.push_back(std::log(p.bpp));
    }
    return HermiteOracle(x, y);
  };
  const HermiteOracle ia = oracle(a);
  const HermiteOracle ib = oracle(b);
  const double lo = std::max(a.points.front().quality, b.points.front().quality);
  const double hi = std::min(a.points.back().quality, b.points.back().quality);
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double q = lo + (hi - lo) * (i + 0.5) / samples;
    sum += ib(q) - ia(q);
  }
  return (std::exp(sum / samples) - 1.0) * 100.0;
}

TEST(PchipTest, MatchesScipyGoldenValues) {
  RdCurve c = ScipyAnchor();
  std::vector<double> x, y;
  for (const RdPoint& p : c.points) {
    x.push_back(p.quality);
    y.push_back(std::log(p.bpp));
  }
  Pchip p(x, y);
  const std::vector<std::pair<double, double>> golden = {
      {30.0, -2.995732273553991},  {31.7, -2.723148453843784},
      {34.2, -2.2785016695858307}, {36.6, -1.7502197607985268},
      {39.9, -1.0819033562984728}, {44.0, -0.33738030982283357},
      {45.5, -0.051293294387550564}};
  for (auto [q, v] : golden) EXPECT_NEAR(p(q), v, 1e-12) << q;
  const std::vector<double> slopes = {
      0.15124474628448353, 0.18067004591221522, 0.20667694652954896,
      0.19902897687588864, 0.1811774425814878,  0.19293403476179996};
  for (size_t i = 0; i < slopes.size(); ++i) {
    EXPECT_NEAR(p.slopes()[i], slopes[i], 1e-12);
  }
  EXPECT_NEAR(p.Integrate(31.0, 44.0), -20.599661824735072, 1e-10);
}

TEST(PchipTest, IntegralMatchesQuadrature) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    RdCurve c = RandomMonotoneCurve(rng, 7);
    std::vector<double> x, y;
    for (const RdPoint& p : c.points) {
      x.push_back(p.quality);
      y.push_back(std::log(p.bpp));
    }
    Pchip p(x, y);
    const double a = x[0] + 0.3, b = x.back() - 0.2;
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += p(a + (b - a) * (i + 0.5) / n);
    EXPECT_NEAR(p.Integrate(a, b), sum * (b - a) / n, 1e-7);
  }
}

TEST(PchipTest, NoOvershoot) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    RdCurve c = RandomMonotoneCurve(rng, 8);
    std::vector<double> x, y;
    for (const RdPoint& p : c.points) {
      x.push_back(p.quality);
      y.push_back(std::log(p.bpp));
    }
    Pchip p(x, y);
    for (size_t k = 0; k + 1 < x.size(); ++k) {
      for (int i = 0; i <= 100; ++i) {
        const double v = p(x[k] + (x[k + 1] - x[k]) * i / 100.0);
        ASSERT_GE(v, std::min(y[k], y[k + 1]) - 1e-12);
        ASSERT_LE(v, std::max(y[k], y[k + 1]) + 1e-12);
      }
    }
  }
}

TEST(BdRateTest, IdenticalCurvesAreZero) {
  RdCurve a = ScipyAnchor();
  EXPECT_EQ(BdRate(a, a), 0.0);
}

TEST(BdRateTest, UniformShiftIsMinusTenPercent) {
  RdCurve a = ScipyAnchor();
  RdCurve b = a;
  for (RdPoint& p : b.points) p.bpp *= 0.9;
  EXPECT_NEAR(BdRate(a, b), -10.0, 1e-6);
  // Swapping the curves inverts the rate ratio.
  const double back = BdRate(b, a);
  EXPECT_NEAR(BdRate(a, b), -back / (1 + back / 100), 1e-6);
}

TEST(BdRateTest, MatchesScipyIntegration) {
  RdCurve a = ScipyAnchor();
  RdCurve t = MakeCurve({0.045, 0.07, 0.1, 0.16, 0.3, 0.6},
                        {29.0, 32.0, 34.9, 37.0, 40.0, 43.0});
  EXPECT_NEAR(BdRate(a, t), -9.05532827135933, 1e-9);
}

TEST(BdRateTest, DenseSamplingOracleOnRandomCurves) {
  std::mt19937_64 rng(5);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    RdCurve a = RandomMonotoneCurve(rng, 6);
    RdCurve b = RandomMonotoneCurve(rng, 6);
    const double lo = std::max(a.points.front().quality,
                               b.points.front().quality);
    const double hi = std::min(a.points.back().quality,
                               b.points.back().quality);
    if (!(hi > lo)) {
      EXPECT_THROW(BdRate(a, b), Error);
      continue;
    }
    const double got = BdRate(a, b);
    const double want = DenseBdRate(a, b, 100000);
    worst = std::max(worst, std::fabs(got - want));
  }
  EXPECT_LE(worst, 0.05);
}

TEST(BdRateTest, RejectsInvalidCurves) {
  RdCurve a = ScipyAnchor();
  RdCurve few = a;
  few.points.resize(3);
  EXPECT_THROW(BdRate(a, few), Error);
  RdCurve non_monotone = a;
  non_monotone.points[2].quality = 31.0;
  EXPECT_THROW(BdRate(a, non_monotone), Error);
  RdCurve flat_step = a;
  flat_step.points[2].quality = flat_step.points[1].quality;
  EXPECT_NO_THROW(ValidateCurve(flat_step));
  EXPECT_THROW(BdRate(a, flat_step), Error);
  RdCurve bad_bpp = a;
  bad_bpp.points[0].bpp = 0.0;
  EXPECT_THROW(ValidateCurve(bad_bpp), Error);
  RdCurve disjoint = a;
  for (RdPoint& p : disjoint.points) p.quality += 100;
  EXPECT_THROW(BdRate(a, disjoint), Error);
}

TEST(QualityRangeTest, Examples) {
  RdCurve two = MakeCurve({0.1, 0.2}, {30, 42});
  EXPECT_EQ(QualityRange(two), 12.0);
  RdCurve flat = MakeCurve({0.1, 0.2, 0.3}, {35, 35, 35});
  EXPECT_EQ(QualityRange(flat), 0.0);
  RdCurve scaled = ScipyAnchor();
  const double qr = QualityRange(scaled);
  for (RdPoint& p : scaled.points) p.bpp *= 3.7;
  EXPECT_EQ(QualityRange(scaled), qr);
}

TEST(DefaultQListTest, SpreadsEvenly) {
  std::vector<int> q = DefaultQList(64);
  ASSERT_EQ(q.size(), 16u);
  EXPECT_EQ(q.front(), 0);
  EXPECT_EQ(q.back(), 63);
  EXPECT_TRUE(std::is_sorted(q.begin(), q.end()));
  EXPECT_EQ(std::adjacent_find(q.begin(), q.end()), q.end());
  EXPECT_EQ(DefaultQList(64, 64).size(), 64u);
}

TEST(CollectRdCurveTest, SinglePointAndDeterminism) {
  Clip clip = fmc::testing::PanClip(1);
  std::vector<int> q0 = {0};
  RdCurve one = CollectRdCurve(clip.frames, clip.format, clip.fps, q0,
                               QuantSchedule{});
  ASSERT_EQ(one.points.size(), 1u);
  EXPECT_THROW(ValidateCurve(one), Error);  // below the BD-Rate minimum

  Clip clip6 = fmc::testing::PanClip(6);
  std::vector<int> qs = {0, 16, 32, 48, 63};
  RdCurve a = CollectRdCurve(clip6.frames, clip6.format, clip6.fps, qs,
                             QuantSchedule{}, {}, "x", 1);
  RdCurve b = CollectRdCurve(clip6.frames, clip6.format, clip6.fps, qs,
                             QuantSchedule{}, {}, "x", 4);
  EXPECT_EQ(RdCurveToCsv(a), RdCurveToCsv(b));
  for (size_t i = 1; i < a.points.size(); ++i) {
    EXPECT_GT(a.points[i].bpp, a.points[i - 1].bpp);
    EXPECT_GT(a.points[i].quality, a.points[i - 1].quality);
  }
  SequenceResult r = EncodeSequence(clip6.frames, clip6.format, clip6.fps, 32,
                                    QuantSchedule{});
  double bits = 0, psnr = 0;
  for (const FrameLog& f : r.log) {
    bits += static_cast<double>(f.bits);
    psnr += f.psnr_weighted;
  }
  EXPECT_DOUBLE_EQ(a.points[2].bpp, bits / (64.0 * 48 * 6));
  EXPECT_DOUBLE_EQ(a.points[2].quality, psnr / 6);
  EXPECT_EQ(a.points[2].q, 32);
  std::vector<int> unsorted = {5, 2};
  EXPECT_THROW(CollectRdCurve(clip6.frames, clip6.format, clip6.fps, unsorted,
                              QuantSchedule{}),
               Error);
}

TEST(DriftTest, ConstantLog) {
  std::vector<DriftFrame> f;
  for (int i = 0; i < 40; ++i) f.push_back({i, 100, 37.5});
  DriftReport r = MakeDriftReport(f);
  EXPECT_EQ(r.frames.size(), 40u);
  EXPECT_NEAR(r.slope_db_per_100, 0.0, 1e-12);
  EXPECT_EQ(r.first_quartile_mean, r.last_quartile_mean);
}

TEST(DriftTest, LinearDecay) {
  std::vector<DriftFrame> f;
  for (int i = 0; i < 200; ++i) f.push_back({i, 10, 40.0 - 0.01 * i});
  DriftReport r = MakeDriftReport(f);
  EXPECT_NEAR(r.slope_db_per_100, -1.0, 1e-9);
  EXPECT_NEAR(r.first_quartile_mean, 40.0 - 0.01 * 24.5, 1e-9);
  EXPECT_NEAR(r.last_quartile_mean, 40.0 - 0.01 * 174.5, 1e-9);
}

TEST(DriftTest, FromFrameLogAndEmpty) {
  std::vector<FrameLog> log(5);
  for (int i = 0; i < 5; ++i) {
    log[i].t = i;
    log[i].bits = 80 * (i + 1);
    log[i].psnr_weighted = 30 + i;
  }
  DriftReport r = MakeDriftReport(log);
  ASSERT_EQ(r.frames.size(), 5u);
  EXPECT_EQ(r.frames[4], (DriftFrame{4, 400, 34.0}));
  EXPECT_EQ(r.first_quartile_mean, 30.0);  // max(1, 5/4) = 1 frame
  EXPECT_EQ(r.last_quartile_mean, 34.0);
  std::vector<DriftFrame> none;
  EXPECT_THROW(MakeDriftReport(none), Error);
}

TEST(CsvTest, RdCurveRoundTrip) {
  RdCurve c = ScipyAnchor();
  c.label = "anchor";
  c.points[1].bpp = 0.1 + 0.2;  // needs shortest round-trip formatting
  std::string text = RdCurveToCsv(c);
  EXPECT_EQ(text.substr(0, text.find('\n')), "label,q,bpp,quality");
  EXPECT_EQ(RdCurveFromCsv(text), c);
  EXPECT_EQ(RdCurveToCsv(RdCurveFromCsv(text)), text);
  EXPECT_THROW(RdCurveFromCsv("label,bpp\nx,1\n"), Error);
  EXPECT_THROW(RdCurveFromCsv("label,q,bpp,quality\nx,1,0.1\n"), Error);
  EXPECT_THROW(RdCurveFromCsv("label,q,bpp,quality\nx,1,abc,3\n"), Error);
}

TEST(CsvTest, FrameLogRoundTrip) {
  Clip clip = fmc::testing::PanClip(5);
  SequenceResult r = EncodeSequence(clip.frames, clip.format, clip.fps, 40,
                                    QuantSchedule{});
  std::string text = FrameLogToCsv(r.log, true);
  std::vector<FrameLog> back = FrameLogFromCsv(text);
  ASSERT_EQ(back.size(), r.log.size());
  for (size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].t, r.log[i].t);
    EXPECT_EQ(back[i].type, r.log[i].type);
    EXPECT_EQ(back[i].q, r.log[i].q);
    EXPECT_EQ(back[i].refresh, r.log[i].refresh);
    EXPECT_EQ(back[i].bits, r.log[i].bits);
    EXPECT_EQ(back[i].psnr_weighted, r.log[i].psnr_weighted);
  }
  EXPECT_NE(text.find("\n0,I,40,0,"), std::string::npos);
  std::vector<FrameLog> from_bs = FrameLogFromBitstream(r.bitstream);
  std::string plain = FrameLogToCsv(from_bs, false);
  EXPECT_EQ(plain.substr(0, plain.find('\n')), "t,type,q,refresh,bits");
  std::vector<FrameLog> back2 = FrameLogFromCsv(plain);
  for (size_t i = 0; i < back2.size(); ++i) {
    EXPECT_EQ(back2[i].bits, r.log[i].bits);
  }
}

TEST(CsvTest, RcLogRoundTrip) {
  std::vector<RcLogEntry> log = {{0, 32, 8000, 240000.5, 300000, 38.25, false},
                                 {1, 31, 9000, 255000, 300000, 38.5, true}};
  std::string text = RcLogToCsv(log);
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "frame,q,bits,cum_avg_bps,target_bps,psnr_weighted,unreachable");
  std::vector<RcLogEntry> back = RcLogFromCsv(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].cum_avg_bps, 240000.5);
  EXPECT_EQ(back[1].unreachable, true);
  EXPECT_EQ(RcLogToCsv(back), text);
}

TEST(CsvTest, DriftRoundTrip) {
  std::vector<DriftFrame> f;
  for (int i = 0; i < 12; ++i) f.push_back({i, 100u + i, 35.0 + 0.1 * i});
  DriftReport r = MakeDriftReport(f);
  DriftReport back = DriftReportFromCsv(DriftReportToCsv(r));
  EXPECT_EQ(back.frames, r.frames);
  EXPECT_EQ(back.slope_db_per_100, r.slope_db_per_100);
}

TEST(SvgTest, DeterministicAndSelfContained) {
  RdCurve a = ScipyAnchor();
  a.label = "anchor";
  RdCurve b = a;
  b.label = "test";
  for (RdPoint& p : b.points) p.bpp *= 0.9;
  std::vector<RdCurve> curves = {a, b};
  std::string s1 = RdCurveToSvg(curves);
  std::string s2 = RdCurveToSvg(curves);
  EXPECT_EQ(s1, s2);
  EXPECT_EQ(s1.rfind("<svg", 0), 0u);
  EXPECT_NE(s1.find("</svg>"), std::string::npos);
  EXPECT_NE(s1.find("polyline"), std::string::npos);
  EXPECT_NE(s1.find("anchor"), std::string::npos);
  EXPECT_EQ(s1.find("href"), std::string::npos);
  std::vector<DriftFrame> f;
  for (int i = 0; i < 12; ++i) f.push_back({i, 100, 35.0 + 0.1 * i});
  std::string d = DriftReportToSvg(MakeDriftReport(f));
  EXPECT_EQ(d, DriftReportToSvg(MakeDriftReport(f)));
  EXPECT_NE(d.find("polyline"), std::string::npos);
}

TEST(FileTest, TextRoundTripAndErrors) {
  TempDir dir("eval");
  WriteTextFile(dir / "a.csv", "x,y\n1,2\n");
  EXPECT_EQ(ReadTextFile(dir / "a.csv"), "x,y\n1,2\n");
  try {
    ReadTextFile(dir / "missing.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace fmc
