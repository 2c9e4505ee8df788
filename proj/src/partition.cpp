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

#include "vstats/partition.hpp"

#include <stdexcept>
#include <string>

namespace vstats {
namespace {

int gridBand(int coord, int extent) {
    // Band boundaries floor(extent * k / 4); band index in 0..3.
    for (int k = 1; k < 4; ++k)
        if (coord < extent * k / 4) return k - 1;
    return 3;
}

int gridBlock(int x, int y, int width, int height) {
    return gridBand(y, height) * 4 + gridBand(x, width) + 1;
}

int ringBlock(int x, int y, int width, int height) {
    // Ring j (1..3) lies between the rectangles inset by (j-1)/8 and j/8 of
    // each dimension; block 4 is the innermost rectangle.
    for (int j = 3; j >= 1; --j) {
        const int ix = width * j / 8;
        const int iy = height * j / 8;
        if (x >= ix && x < width - ix && y >= iy && y < height - iy) return j + 1;
    }
    return 1;
}

int sectorBlock(int x, int y, int width, int height) {
    // Work in doubled, height/width-normalized coordinates around the frame
    // center so that the corner diagonals become |X| = |Y|. All comparisons
    // are exact integer arithmetic; boundary pixels follow half-open sectors
    // whose lower (clockwise) edge is included.
    const long long ix = 2LL * x + 1 - width;                    // 2 * (px - cx)
    const long long iy = (long long)height - 2LL * y - 1;        // 2 * (cy - py), y up
    const long long X = ix * height;
    const long long Y = iy * width;
    const long long d1 = Y - X; // > 0 above the bottom-left/top-right diagonal
    const long long d2 = Y + X; // > 0 above the top-left/bottom-right diagonal
    if (ix == 0 && iy == 0) return 1; // exact center (odd dims only)
    if (X > 0 && Y > 0 && d1 >= 0) return 1;  // [45, 90)
    if (X <= 0 && Y > 0 && d2 > 0) return 2;  // [90, 135)
    if (Y > 0 && d2 <= 0) return 3;           // [135, 180)
    if (X < 0 && Y <= 0 && d1 > 0) return 4;  // [180, 225)
    if (X < 0 && d1 <= 0 && Y < 0) return 5;  // [225, 270)
    if (X >= 0 && Y < 0 && d2 < 0) return 6;  // [270, 315)
    if (X > 0 && Y < 0 && d2 >= 0) return 7;  // [315, 360)
    return 8;                                 // [0, 45)
}

} // namespace

int patternBlockCount(int patternId) {
    switch (patternId) {
        case 1: return 16;
        case 2: return 4;
        case 3: return 8;
        default:
            throw std::invalid_argument("unknown partition pattern id " +
                                        std::to_string(patternId));
    }
}

PartitionPattern PartitionPattern::build(int patternId, int width, int height) {
    const int blocks = patternBlockCount(patternId);
    if (width < 8 || height < 8)
        throw std::invalid_argument("partition pattern needs at least 8x8 pixels");

    PartitionPattern p;
    p.patternId_ = patternId;
    p.blockCount_ = blocks;
    p.width_ = width;
    p.height_ = height;
    p.indexMap_.resize(std::size_t(width) * height);
    p.blockSizes_.assign(blocks, 0);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            int b = 0;
            switch (patternId) {
                case 1: b = gridBlock(x, y, width, height); break;
                case 2: b = ringBlock(x, y, width, height); break;
                case 3: b = sectorBlock(x, y, width, height); break;
            }
            p.indexMap_[std::size_t(y) * width + x] = std::uint8_t(b);
            ++p.blockSizes_[b - 1];
        }
    }
    return p;
}

std::pair<int, int> PartitionPattern::to2DCoord(int patternId, int blockIndex) {
    const int blocks = patternBlockCount(patternId);
    if (blockIndex < 1 || blockIndex > blocks)
        throw std::invalid_argument("block index " + std::to_string(blockIndex) +
                                    " out of range for pattern " + std::to_string(patternId));
    switch (patternId) {
        case 1: return {(blockIndex - 1) / 4 + 1, (blockIndex - 1) % 4 + 1};
        case 3: return {(blockIndex - 1) / 2 + 1, (blockIndex - 1) % 2 + 1};
        default:
            throw std::invalid_argument("pattern 2 has no 2D encoding");
    }
}

int PartitionPattern::from2DCoord(int patternId, std::pair<int, int> coord) {
    switch (patternId) {
        case 1:
            if (coord.first < 1 || coord.first > 4 || coord.second < 1 || coord.second > 4)
                throw std::invalid_argument("pattern 1 coordinate out of range");
            return (coord.first - 1) * 4 + coord.second;
        case 3:
            if (coord.first < 1 || coord.first > 4 || coord.second < 1 || coord.second > 2)
                throw std::invalid_argument("pattern 3 coordinate out of range");
            return (coord.first - 1) * 2 + coord.second;
        default:
            throw std::invalid_argument("pattern 2 has no 2D encoding");
    }
}

std::array<PartitionPattern, 3> buildAllPatterns(int width, int height) {
    return {PartitionPattern::build(1, width, height),
            PartitionPattern::build(2, width, height),
            PartitionPattern::build(3, width, height)};
}

} // namespace vstats
