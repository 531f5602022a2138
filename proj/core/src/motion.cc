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

#include "fmc/motion.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <tuple>

#include "fmc/error.h"
#include "fmc/warp.h"

namespace fmc {
namespace {

struct Candidate {
  MotionVector mv;
  double sad;

  auto Key() const {
    return std::make_tuple(sad, std::abs(mv.dx) + std::abs(mv.dy), mv.dy,
                           mv.dx);
  }
  bool BetterThan(const Candidate& other) const { return Key() < other.Key(); }
};

class BlockSearch {
 public:
  BlockSearch(const Plane& cur, const Plane& ref, int bx, int by, int limit)
      : cur_(cur), ref_(ref), bx_(bx), by_(by), limit_(limit) {}

  // Evaluates a half-pel vector and keeps it if it ranks better. Returns
  // false for vectors outside the search window.
  bool Try(MotionVector mv) {
    if (std::abs(mv.dx) > limit_ || std::abs(mv.dy) > limit_) return false;
    const Candidate c{mv, BlockSad(cur_, ref_, bx_, by_, mv)};
    if (!has_best_ || c.BetterThan(best_)) {
      best_ = c;
      has_best_ = true;
    }
    return true;
  }
  const Candidate& best() const { return best_; }

 private:
  const Plane& cur_;
  const Plane& ref_;
  int bx_;
  int by_;
  int limit_;
  Candidate best_{};
  bool has_best_ = false;
};

MotionVector ToFullPel(MotionVector mv) {
  // Truncate toward zero, then back to half-pel units.
  return {(mv.dx / 2) * 2, (mv.dy / 2) * 2};
}

constexpr MotionVector kLargeDiamond[] = {{0, -4}, {-2, -2}, {2, -2}, {-4, 0},
                                          {4, 0},  {-2, 2},  {2, 2},  {0, 4}};
constexpr MotionVector kSmallDiamond[] = {{0, -2}, {-2, 0}, {2, 0}, {0, 2}};
constexpr MotionVector kHalfPelRing[] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                         {1, 0},   {-1, 1}, {0, 1},  {1, 1}};
constexpr int kMaxDiamondSteps = 64;

}  // namespace

bool MotionField::IsZero() const {
  return std::all_of(mv_.begin(), mv_.end(),
                     [](const MotionVector& v) { return v.dx == 0 && v.dy == 0; });
}

double BlockSad(const Plane& current, const Plane& reference, int bx, int by,
                MotionVector mv) {
  const int x0 = bx * kMotionBlock;
  const int y0 = by * kMotionBlock;
  const int x1 = std::min(x0 + kMotionBlock, current.width());
  const int y1 = std::min(y0 + kMotionBlock, current.height());
  double sad = 0.0;
  if ((mv.dx & 1) == 0 && (mv.dy & 1) == 0) {
    const int ox = mv.dx / 2;
    const int oy = mv.dy / 2;
    for (int y = y0; y < y1; ++y) {
      for (int x = x0; x < x1; ++x) {
        sad += std::abs(static_cast<double>(current.at(x, y)) -
                        reference.clamped(x + ox, y + oy));
      }
    }
    return sad;
  }
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      sad += std::abs(static_cast<double>(current.at(x, y)) -
                      SampleBilinear(reference, x, y, mv));
    }
  }
  return sad;
}

MotionField EstimateMotion(const Plane& current, const Plane& reference,
                           const MotionSearchOptions& options) {
  Require(current.width() == reference.width() &&
              current.height() == reference.height(),
          "motion estimation needs equal dimensions");
  Require(options.search_range >= 0, "search range must be non-negative");
  const int limit = 2 * options.search_range;
  MotionField field = MotionField::ForFrame(current.width(), current.height());
  for (int by = 0; by < field.blocks_y(); ++by) {
    for (int bx = 0; bx < field.blocks_x(); ++bx) {
      BlockSearch search(current, reference, bx, by, limit);
      search.Try({0, 0});
      // Spatial predictors from already-searched neighbours.
      if (bx > 0) search.Try(ToFullPel(field.at(bx - 1, by)));
      if (by > 0) {
        search.Try(ToFullPel(field.at(bx, by - 1)));
        if (bx + 1 < field.blocks_x()) {
          search.Try(ToFullPel(field.at(bx + 1, by - 1)));
        }
      }
      for (int step = 0; step < kMaxDiamondSteps; ++step) {
        const MotionVector center = search.best().mv;
        for (MotionVector d : kLargeDiamond) {
          search.Try({center.dx + d.dx, center.dy + d.dy});
        }
        if (search.best().mv == center) break;
      }
      const MotionVector center = search.best().mv;
      for (MotionVector d : kSmallDiamond) {
        search.Try({center.dx + d.dx, center.dy + d.dy});
      }
      if (options.half_pel) {
        const MotionVector full = search.best().mv;
        for (MotionVector d : kHalfPelRing) {
          search.Try({full.dx + d.dx, full.dy + d.dy});
        }
      }
      field.at(bx, by) = search.best().mv;
    }
  }
  return field;
}

MotionField EstimateMotion(const Frame& current, const Frame& reference,
                           const MotionSearchOptions& options) {
  return EstimateMotion(current.plane(0), reference.plane(0), options);
}

}  // namespace fmc
