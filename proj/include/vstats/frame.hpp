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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vstats {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    bool operator==(const Rgb&) const = default;
};

/// One 8-bit RGB image, row-major interleaved.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // width * height * 3 bytes

    Frame() = default;
    Frame(int w, int h) : width(w), height(h), pixels(std::size_t(w) * h * 3, 0) {
        if (w <= 0 || h <= 0)
            throw std::invalid_argument("Frame: dimensions must be positive");
    }

    std::size_t offset(int x, int y) const { return (std::size_t(y) * width + x) * 3; }

    Rgb pixel(int x, int y) const {
        const std::size_t o = offset(x, y);
        return {pixels[o], pixels[o + 1], pixels[o + 2]};
    }

    void setPixel(int x, int y, Rgb c) {
        const std::size_t o = offset(x, y);
        pixels[o] = c.r;
        pixels[o + 1] = c.g;
        pixels[o + 2] = c.b;
    }

    void fill(Rgb c) {
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) setPixel(x, y, c);
    }

    bool sameSize(const Frame& other) const {
        return width == other.width && height == other.height;
    }

    bool operator==(const Frame&) const = default;
};

/// ITU-R 601 luma of one pixel, in [0, 255].
inline double luma601(Rgb c) { return 0.299 * c.r + 0.587 * c.g + 0.114 * c.b; }

} // namespace vstats
