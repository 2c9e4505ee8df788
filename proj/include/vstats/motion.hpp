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

#include "vstats/flow.hpp"
#include "vstats/partition.hpp"

namespace vstats {

/// A per-pixel 2-vector field (row-major x and y component planes).
struct VecField {
    int width = 0;
    int height = 0;
    std::vector<float> x;
    std::vector<float> y;

    VecField() = default;
    VecField(int w, int h)
        : width(w), height(h), x(std::size_t(w) * h, 0.0f), y(std::size_t(w) * h, 0.0f) {}

    std::size_t at(int px, int py) const { return std::size_t(py) * width + px; }
};

/// Spatial derivatives of the two flow components: ux, uy, vx, vy.
struct MotionBoundary {
    int width = 0;
    int height = 0;
    std::vector<float> ux, uy, vx, vy;
};

/// Element-wise sums of the per-pair motion boundaries of a clip,
/// grouped as Mu = (sum ux, sum uy) and Mv = (sum vx, sum vy).
struct SummarizedBoundary {
    VecField mu;
    VecField mv;
};

/// Per-pixel magnitude and 45-degree orientation bin of a 2-vector field.
/// Bins are counted counterclockwise from +x with the y axis pointing up
/// (image rows point down, so the stored y component is negated), using
/// half-open intervals [(k-1)*45, k*45). Zero vectors get bin 1.
struct PolarMap {
    int width = 0;
    int height = 0;
    std::vector<double> magnitude;
    std::vector<int> orientationBin; // 1..8
};

/// Labels of one partitioning pattern: the largest-mean-magnitude block
/// and the magnitude-weighted dominant orientation bin inside it, for each
/// of Mu and Mv. Ties break to the lowest index.
struct PatternMotionLabels {
    int p_u = 1;
    int o_u = 1;
    int p_v = 1;
    int o_v = 1;

    bool operator==(const PatternMotionLabels&) const = default;
};

struct MotionLabels {
    std::array<PatternMotionLabels, 3> perPattern; // patterns 1, 2, 3
    int I_u = 1; // 1-based frame-pair index of the largest Mu magnitude sum
    int I_v = 1;
    int flowCount = 1; // N-1; bounds the global labels

    bool operator==(const MotionLabels&) const = default;
};

/// Central-difference x/y derivatives of both flow components; replicate
/// padding makes the stencil one-sided (and halved) at the borders, so a
/// spatially constant flow always differentiates to exactly zero.
MotionBoundary motionBoundary(const FlowField& flow);

/// Element-wise sum of the boundaries. The list must be non-empty and
/// uniform in size.
SummarizedBoundary summarize(std::span<const MotionBoundary> boundaries);

PolarMap toPolar(const VecField& field);

/// Orientation bin of a single vector under the PolarMap convention,
/// given the y-up vector components. Exposed for reuse by the polar map
/// and by equivariance reasoning in tests.
int orientationBinYUp(double x, double yUp);

PatternMotionLabels localMotionLabels(const SummarizedBoundary& summary,
                                      const PartitionPattern& pattern);

/// 1-based indices of the flows with the largest total boundary magnitude
/// for the u and v components (ties go to the lowest index).
std::pair<int, int> globalMotionLabels(std::span<const FlowField> flows);

/// All motion labels for a clip's flows against the given patterns.
MotionLabels motionLabels(std::span<const FlowField> flows,
                          const std::array<PartitionPattern, 3>& patterns);

} // namespace vstats
