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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fmc/bac.h"
#include "fmc/codec.h"
#include "fmc/dct.h"
#include "fmc/motion.h"
#include "fmc/synth.h"
#include "fmc/warp.h"

namespace fmc {
namespace {

void BM_Dct8RoundTrip(benchmark::State& state) {
  Block8x8 b;
  std::mt19937_64 rng(1);
  for (double& v : b) v = static_cast<double>(rng() % 256) - 128.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Dct8Inverse(Dct8Forward(b)));
  }
}
BENCHMARK(BM_Dct8RoundTrip);

void BM_RangeCoderEncode(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::vector<int> bits(1 << 16);
  for (int& b : bits) b = rng() % 10 == 0;
  for (auto _ : state) {
    BinaryContext ctx;
    BacEncoder enc;
    for (int b : bits) enc.EncodeBit(ctx, b);
    benchmark::DoNotOptimize(enc.Finish());
  }
  state.SetItemsProcessed(state.iterations() * bits.size());
}
BENCHMARK(BM_RangeCoderEncode);

void BM_RangeCoderDecode(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<int> bits(1 << 16);
  for (int& b : bits) b = rng() % 10 == 0;
  BinaryContext ectx;
  BacEncoder enc;
  for (int b : bits) enc.EncodeBit(ectx, b);
  const std::vector<uint8_t> payload = enc.Finish();
  for (auto _ : state) {
    BinaryContext ctx;
    BacDecoder dec(payload);
    int sum = 0;
    for (size_t i = 0; i < bits.size(); ++i) sum += dec.DecodeBit(ctx);
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * bits.size());
}
BENCHMARK(BM_RangeCoderDecode);

void BM_EstimateMotion(benchmark::State& state) {
  SynthOptions o;
  o.frames = 2;
  const Clip clip = GenerateClip(o);
  const Frame a = ToWorkingFormat(clip.frames[0]);
  const Frame b = ToWorkingFormat(clip.frames[1]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(EstimateMotion(b.plane(0), a.plane(0)));
  }
}
BENCHMARK(BM_EstimateMotion)->Unit(benchmark::kMillisecond);

void BM_Warp(benchmark::State& state) {
  const auto mode = static_cast<WarpPrecision>(state.range(0));
  const Frame ref = RandomUnitFrame(1920, 1080, 1);
  const MotionField mv = RandomMotionField(1920, 1080, 64, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(WarpPlane(ref.plane(0), mv, mode));
  }
  state.SetLabel(std::string(WarpPrecisionName(mode)));
}
BENCHMARK(BM_Warp)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_EncodeSequence(benchmark::State& state) {
  SynthOptions o;
  o.frames = 8;
  const Clip clip = GenerateClip(o);
  const QuantSchedule s;
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        EncodeSequence(clip.frames, clip.format, clip.fps, q, s));
  }
  state.SetItemsProcessed(state.iterations() * o.frames);
}
BENCHMARK(BM_EncodeSequence)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace fmc

BENCHMARK_MAIN();
