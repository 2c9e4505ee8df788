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

#include <filesystem>
#include <vector>

#include "vstats/frame.hpp"
#include "vstats/frameio.hpp"

namespace vstats {

/// Dense per-pixel displacement between two frames, in pixels/frame.
struct FlowField {
    int width = 0;
    int height = 0;
    std::vector<float> u; // horizontal component, row-major
    std::vector<float> v; // vertical component, row-major

    FlowField() = default;
    FlowField(int w, int h)
        : width(w), height(h), u(std::size_t(w) * h, 0.0f), v(std::size_t(w) * h, 0.0f) {}

    std::size_t at(int x, int y) const { return std::size_t(y) * width + x; }

    bool operator==(const FlowField&) const = default;
};

/// Coarse-to-fine estimator parameters.
struct FlowConfig {
    double pyramidScale = 0.5;   // per-level shrink factor, in (0,1)
    int pyramidLevels = 4;       // including the full-resolution level
    double smoothnessWeight = 15.0;
    int iterationsPerLevel = 50;
    int warpsPerLevel = 3;

    void validate() const;
};

/// Estimates dense optical flow from frameA to frameB with a pyramidal
/// Horn-Schunck scheme: ITU-R 601 luma data term, central-difference
/// spatial derivatives averaged over the two frames, bilinear warping
/// between levels, replicate-edge padding throughout. Deterministic:
/// identical inputs and config give bitwise-identical fields.
FlowField estimateFlow(const Frame& frameA, const Frame& frameB, const FlowConfig& cfg);

/// Flow for every consecutive frame pair of a clip (N-1 fields).
std::vector<FlowField> clipFlows(const Clip& clip, const FlowConfig& cfg);

/// Middlebury .flo: "PIEH", little-endian int32 width and height, then
/// row-major interleaved (u, v) float32 pairs. Round trips bit-exactly.
FlowField readFlo(const std::filesystem::path& path);
void writeFlo(const FlowField& field, const std::filesystem::path& path);

} // namespace vstats
