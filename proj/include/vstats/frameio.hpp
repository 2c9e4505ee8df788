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
#include <filesystem>
#include <string>
#include <vector>

#include "vstats/frame.hpp"
#include "vstats/rng.hpp"

namespace vstats {

enum class SamplerMode { NonOverlapping, RandomStart };
enum class CropMode { Random, Center };

/// Clip extraction and preprocessing parameters. Defaults follow the usual
/// 16-frame / 128x171 / 112x112 video pipeline setup.
struct SamplerConfig {
    SamplerMode mode = SamplerMode::NonOverlapping;
    int clipLength = 16;
    int resizeHeight = 128;
    int resizeWidth = 171;
    int cropHeight = 112;
    int cropWidth = 112;
    CropMode cropMode = CropMode::Random;
    double horizontalFlipProbability = 0.5;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument if any constraint is violated
    /// (clipLength >= 2, crop <= resize, flip probability in [0,1]).
    void validate() const;
};

/// The resize/crop/flip actually applied to a clip, shared by all frames.
struct TransformRecord {
    int resizeHeight = 0;
    int resizeWidth = 0;
    int cropX = 0;
    int cropY = 0;
    int cropHeight = 0;
    int cropWidth = 0;
    bool flipped = false;

    bool operator==(const TransformRecord&) const = default;
};

/// An ordered stack of same-sized RGB frames plus provenance.
struct Clip {
    std::vector<Frame> frames;
    std::string sourceId;
    int frameOffset = 0;
    TransformRecord transform;

    int width() const { return frames.empty() ? 0 : frames.front().width; }
    int height() const { return frames.empty() ? 0 : frames.front().height; }
    int length() const { return int(frames.size()); }
};

/// Sorted list of the decodable frame files (*.png, *.ppm) in a directory.
std::vector<std::filesystem::path> listFrameFiles(const std::filesystem::path& dir);

/// Bilinear resize with half-pixel center alignment; rounds to nearest
/// 8-bit value. Resizing to the source size is the identity.
Frame resizeBilinear(const Frame& src, int dstWidth, int dstHeight);

/// Applies resize -> crop -> flip to every frame, drawing the crop window
/// and the flip decision once from `rng` (crop position first, then flip;
/// a flip decision is always drawn, whatever the probability).
Clip applyTransform(const Clip& clip, const SamplerConfig& sampler, SeededRng& rng);

/// Loads the index-th clip from a directory of frame images and applies the
/// sampler transform. In NonOverlapping mode clip k starts at frame
/// k * clipLength; in RandomStart mode the start offset is drawn from a
/// generator seeded by (sampler.seed, directory name, index), so identical
/// inputs always produce byte-identical clips.
Clip loadClip(const std::filesystem::path& directory, const SamplerConfig& sampler, int index);

} // namespace vstats
