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

#include "vstats/targets.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vstats {
namespace {

struct LabelRef {
    int value;     // 1-based label
    int classes;   // head size
    int patternId; // 1..3 for expandable location labels, 0 otherwise
};

// The canonical flat ordering with per-head metadata.
std::vector<LabelRef> flatten(const LabelSet& ls) {
    const int frames = ls.motion.flowCount;
    std::vector<LabelRef> out;
    out.reserve(kLabelCount);
    for (int p = 0; p < 3; ++p) {
        const auto& m = ls.motion.perPattern[std::size_t(p)];
        const int blocks = patternBlockCount(p + 1);
        const bool expandable = (p + 1 != 2);
        out.push_back({m.p_u, blocks, expandable ? p + 1 : 0});
        out.push_back({m.o_u, 8, 0});
        out.push_back({m.p_v, blocks, expandable ? p + 1 : 0});
        out.push_back({m.o_v, 8, 0});
    }
    out.push_back({ls.motion.I_u, frames, 0});
    out.push_back({ls.motion.I_v, frames, 0});
    for (int p = 0; p < 3; ++p) {
        const auto& a = ls.appearance.perPattern[std::size_t(p)];
        const int blocks = patternBlockCount(p + 1);
        const bool expandable = (p + 1 != 2);
        out.push_back({a.p_l, blocks, expandable ? p + 1 : 0});
        out.push_back({a.c_l, 8, 0});
        out.push_back({a.p_s, blocks, expandable ? p + 1 : 0});
        out.push_back({a.c_s, 8, 0});
    }
    out.push_back({ls.appearance.C, 8, 0});
    return out;
}

void validate(const std::vector<LabelRef>& flat, int flowCount) {
    if (flowCount < 1)
        throw std::invalid_argument("encode: flow count must be at least 1");
    for (std::size_t i = 0; i < flat.size(); ++i)
        if (flat[i].value < 1 || flat[i].value > flat[i].classes)
            throw std::invalid_argument("encode: label " + std::to_string(i + 1) + " value " +
                                        std::to_string(flat[i].value) + " outside 1.." +
                                        std::to_string(flat[i].classes));
}

double l2(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

void validateWeights(const LossConfig& cfg) {
    if (cfg.lambdaM < 0.0 || cfg.lambdaA < 0.0)
        throw std::invalid_argument("loss weights must be nonnegative");
}

} // namespace

TargetVector encode(const LabelSet& labels, TargetFormat format) {
    const auto flat = flatten(labels);
    validate(flat, labels.motion.flowCount);

    TargetVector out;
    out.format = format;
    switch (format) {
        case TargetFormat::Reg1D:
            out.values.reserve(kLabelCount);
            for (const LabelRef& ref : flat) out.values.push_back(double(ref.value));
            break;
        case TargetFormat::Reg2D:
            out.values.reserve(kReg2DLength);
            for (const LabelRef& ref : flat) {
                if (ref.patternId != 0) {
                    const auto [a, b] = PartitionPattern::to2DCoord(ref.patternId, ref.value);
                    out.values.push_back(double(a));
                    out.values.push_back(double(b));
                } else {
                    out.values.push_back(double(ref.value));
                }
            }
            break;
        case TargetFormat::Classification:
            out.classes.reserve(kLabelCount);
            out.headSizes.reserve(kLabelCount);
            for (const LabelRef& ref : flat) {
                out.classes.push_back(ref.value - 1);
                out.headSizes.push_back(ref.classes);
            }
            break;
    }
    return out;
}

std::vector<double> collapseReg2D(const TargetVector& reg2d) {
    if (reg2d.format != TargetFormat::Reg2D || reg2d.values.size() != kReg2DLength)
        throw std::invalid_argument("collapseReg2D: input is not a Reg2D vector");

    // Pattern ids of the 27 canonical slots (0 = not expanded).
    static constexpr int kSlotPattern[kLabelCount] = {
        1, 0, 1, 0, 0, 0, 0, 0, 3, 0, 3, 0, 0, 0, // motion
        1, 0, 1, 0, 0, 0, 0, 0, 3, 0, 3, 0, 0};   // appearance

    std::vector<double> out;
    out.reserve(kLabelCount);
    std::size_t i = 0;
    for (int slot = 0; slot < kLabelCount; ++slot) {
        if (kSlotPattern[slot] != 0) {
            const int a = int(reg2d.values[i]);
            const int b = int(reg2d.values[i + 1]);
            out.push_back(double(PartitionPattern::from2DCoord(kSlotPattern[slot], {a, b})));
            i += 2;
        } else {
            out.push_back(reg2d.values[i]);
            i += 1;
        }
    }
    return out;
}

double regressionLoss(const TargetVector& pred, const TargetVector& target,
                      const LossConfig& cfg) {
    validateWeights(cfg);
    if (pred.format != target.format ||
        (pred.format != TargetFormat::Reg1D && pred.format != TargetFormat::Reg2D))
        throw std::invalid_argument("regressionLoss: formats must match and be regression");
    if (pred.values.size() != target.values.size())
        throw std::invalid_argument("regressionLoss: length mismatch");
    const std::size_t expected =
        pred.format == TargetFormat::Reg1D ? kLabelCount : kReg2DLength;
    if (pred.values.size() != expected)
        throw std::invalid_argument("regressionLoss: unexpected vector length");

    const std::size_t motionLen =
        pred.format == TargetFormat::Reg1D ? kMotionLabelCount : kReg2DMotionLength;
    const double lm = l2(pred.values.data(), target.values.data(), motionLen);
    const double la = l2(pred.values.data() + motionLen, target.values.data() + motionLen,
                         pred.values.size() - motionLen);
    return cfg.lambdaM * lm + cfg.lambdaA * la;
}

double classificationLoss(const std::vector<std::vector<double>>& predProbs,
                          const TargetVector& target, const LossConfig& cfg) {
    validateWeights(cfg);
    if (target.format != TargetFormat::Classification ||
        target.classes.size() != kLabelCount || target.headSizes.size() != kLabelCount)
        throw std::invalid_argument("classificationLoss: target is not a classification vector");
    if (predProbs.size() != kLabelCount)
        throw std::invalid_argument("classificationLoss: expected " +
                                    std::to_string(kLabelCount) + " probability heads, got " +
                                    std::to_string(predProbs.size()));

    double motionSum = 0.0, appearanceSum = 0.0;
    for (int head = 0; head < kLabelCount; ++head) {
        const auto& probs = predProbs[std::size_t(head)];
        const std::string headName = "head " + std::to_string(head + 1);
        if (int(probs.size()) != target.headSizes[std::size_t(head)])
            throw std::invalid_argument("classificationLoss: " + headName + " has " +
                                        std::to_string(probs.size()) + " classes, expected " +
                                        std::to_string(target.headSizes[std::size_t(head)]));
        double sum = 0.0;
        for (double p : probs) {
            if (p < 0.0 || !std::isfinite(p))
                throw std::invalid_argument("classificationLoss: " + headName +
                                            " has a negative or non-finite probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-6)
            throw std::invalid_argument("classificationLoss: " + headName +
                                        " probabilities sum to " + std::to_string(sum));
        const int cls = target.classes[std::size_t(head)];
        if (cls < 0 || cls >= int(probs.size()))
            throw std::invalid_argument("classificationLoss: " + headName +
                                        " target class out of range");
        const double p = std::max(probs[std::size_t(cls)], 1e-12);
        (head < kMotionLabelCount ? motionSum : appearanceSum) += -std::log(p);
    }
    return cfg.lambdaM * motionSum + cfg.lambdaA * appearanceSum;
}

} // namespace vstats
