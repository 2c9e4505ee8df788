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
#include <vector>

#include "vstats/appearance.hpp"
#include "vstats/motion.hpp"

namespace vstats {

/// The 14 motion + 13 appearance statistical labels of one clip.
///
/// Canonical 1D ordering, used by every encoding and by the loss split:
///   motion:      p1.p_u p1.o_u p1.p_v p1.o_v  p2.*  p3.*  I_u I_v   (14)
///   appearance:  p1.p_l p1.c_l p1.p_s p1.c_s  p2.*  p3.*  C         (13)
struct LabelSet {
    MotionLabels motion;
    AppearanceLabels appearance;

    bool operator==(const LabelSet&) const = default;
};

constexpr int kMotionLabelCount = 14;
constexpr int kAppearanceLabelCount = 13;
constexpr int kLabelCount = kMotionLabelCount + kAppearanceLabelCount; // 27
constexpr int kReg2DMotionLength = 18;
constexpr int kReg2DAppearanceLength = 17;
constexpr int kReg2DLength = kReg2DMotionLength + kReg2DAppearanceLength; // 35

enum class TargetFormat { Reg1D, Reg2D, Classification };

/// One training-target encoding of a LabelSet.
///  - Reg1D: 27 raw label values.
///  - Reg2D: 35 values; the location labels of patterns 1 and 3 are
///    replaced by their 2D coordinate pairs.
///  - Classification: 27 zero-based class indices plus the per-head class
///    counts (16/4/8 for pattern-1/2/3 locations, 8 for orientations and
///    colors, N-1 for the global frame indices).
struct TargetVector {
    TargetFormat format = TargetFormat::Reg1D;
    std::vector<double> values;  // regression formats
    std::vector<int> classes;    // classification
    std::vector<int> headSizes;  // classification

    bool operator==(const TargetVector&) const = default;
};

struct LossConfig {
    double lambdaM = 1.0;
    double lambdaA = 0.1;
};

/// Validates label ranges and produces the requested encoding.
TargetVector encode(const LabelSet& labels, TargetFormat format);

/// Reconstructs the 27-entry 1D vector from a Reg2D encoding by collapsing
/// each coordinate pair through the inverse block-coordinate map.
std::vector<double> collapseReg2D(const TargetVector& reg2d);

/// lambda_m * ||pred_m - target_m||_2 + lambda_a * ||pred_a - target_a||_2
/// over the motion/appearance split of the canonical ordering. Both
/// vectors must share a regression format.
double regressionLoss(const TargetVector& pred, const TargetVector& target,
                      const LossConfig& cfg);

/// Sum of per-head cross-entropies -log p(target), weighted lambda_m over
/// the 14 motion heads and lambda_a over the 13 appearance heads.
/// Probabilities are clamped at 1e-12 before the log. Each head of
/// `predProbs` must be a nonnegative vector of the head's class count
/// summing to 1 within 1e-6.
double classificationLoss(const std::vector<std::vector<double>>& predProbs,
                          const TargetVector& target, const LossConfig& cfg);

} // namespace vstats
