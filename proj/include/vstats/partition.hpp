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
#include <cstdint>
#include <utility>
#include <vector>

namespace vstats {

/// One of the three fixed spatial layouts used to quantize "where":
///   pattern 1 — 4x4 grid of equal cells, numbered row-major from the
///               top-left (1) to the bottom-right (16);
///   pattern 2 — 4 nested rectangular rings with margins stepping by 1/8
///               of each dimension, numbered 1 (outermost) to 4 (center);
///   pattern 3 — 8 sectors cut by the two center lines and the two corner
///               diagonals, numbered counterclockwise starting from the
///               sector immediately right of the upward center line.
///
/// Block indices are 1-based. Every pixel belongs to exactly one block.
class PartitionPattern {
public:
    static PartitionPattern build(int patternId, int width, int height);

    int patternId() const { return patternId_; }
    int blockCount() const { return blockCount_; }
    int width() const { return width_; }
    int height() const { return height_; }

    /// Block index of pixel (x, y), in 1..blockCount().
    int blockAt(int x, int y) const { return indexMap_[std::size_t(y) * width_ + x]; }

    const std::vector<std::uint8_t>& indexMap() const { return indexMap_; }

    /// Number of pixels in each block (entry b-1 for block b).
    const std::vector<int>& blockSizes() const { return blockSizes_; }

    /// 2D coordinate encoding of a block index. Pattern 1 maps block b to
    /// (row, column) in 1..4 each; pattern 3 maps sector s to (quadrant,
    /// half) with quadrant in 1..4 counterclockwise and half in {1, 2}.
    /// Pattern 2 has no 2D encoding and throws.
    static std::pair<int, int> to2DCoord(int patternId, int blockIndex);

    /// Inverse of to2DCoord for patterns 1 and 3.
    static int from2DCoord(int patternId, std::pair<int, int> coord);

private:
    int patternId_ = 0;
    int blockCount_ = 0;
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> indexMap_;
    std::vector<int> blockSizes_;
};

/// Blocks per pattern: 16, 4, 8.
int patternBlockCount(int patternId);

/// All three patterns for one frame size, indexed by patternId - 1.
std::array<PartitionPattern, 3> buildAllPatterns(int width, int height);

} // namespace vstats
