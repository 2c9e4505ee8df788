// Copyright 2026 The vstats authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "vstats/frameio.hpp"
#include "vstats/partition.hpp"

namespace vstats {

constexpr int kDefaultIouBins = 16;

/// RGB octant of one pixel: each channel splits at 128, and the bin index
/// is 1 + 4*(R>=128) + 2*(G>=128) + (B>=128), i.e. 1..8.
inline int colorOctant(Rgb c) {
    return 1 + 4 * (c.r >= 128) + 2 * (c.g >= 128) + (c.b >= 128);
}

/// Temporal color-diversity score of one block: per channel, a histogram
/// with `binCount` equal-width bins over [0,255] is built for every frame,
/// and IoU = sum_b min_i V_i[b] / sum_b max_i V_i[b]; the result averages
/// the three channels. 1.0 means the block looks identical in every frame.
/// `framePixels` holds the block's pixels for each frame (all non-empty
/// and of equal size).
double temporalIoU(const std::vector<std::vector<Rgb>>& framePixels, int binCount);

/// Blocks with the largest (argmin IoU) and smallest (argmax IoU) temporal
/// color diversity; ties go to the lowest block index.
struct DiversityLabels {
    int p_l = 1;
    int p_s = 1;
};
DiversityLabels diversityLabels(const Clip& clip, const PartitionPattern& pattern, int binCount);

/// Most populated color octant of a pixel multiset (ties -> lowest bin).
int dominantColor(std::span<const Rgb> pixels);

struct PatternAppearanceLabels {
    int p_l = 1;
    int c_l = 1;
    int p_s = 1;
    int c_s = 1;

    bool operator==(const PatternAppearanceLabels&) const = default;
};

struct AppearanceLabels {
    std::array<PatternAppearanceLabels, 3> perPattern; // patterns 1, 2, 3
    int C = 1; // dominant color of the whole clip

    bool operator==(const AppearanceLabels&) const = default;
};

/// Per-pattern diversity locations with their dominant colors (computed
/// over the block's pixels across all frames), plus the global dominant
/// color of the clip.
AppearanceLabels appearanceLabels(const Clip& clip,
                                  const std::array<PartitionPattern, 3>& patterns, int binCount);

} // namespace vstats
