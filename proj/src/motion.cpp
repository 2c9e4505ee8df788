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

#include "vstats/motion.hpp"

#include <cmath>
#include <stdexcept>

namespace vstats {
namespace {

inline int clampIndex(int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); }

// Central difference with replicate padding, applied to one plane.
void derive(const std::vector<float>& src, int w, int h, std::vector<float>& dx,
            std::vector<float>& dy) {
    dx.resize(src.size());
    dy.resize(src.size());
    for (int y = 0; y < h; ++y) {
        const int ym = clampIndex(y - 1, h - 1);
        const int yp = clampIndex(y + 1, h - 1);
        for (int x = 0; x < w; ++x) {
            const int xm = clampIndex(x - 1, w - 1);
            const int xp = clampIndex(x + 1, w - 1);
            const std::size_t i = std::size_t(y) * w + x;
            dx[i] = (src[std::size_t(y) * w + xp] - src[std::size_t(y) * w + xm]) * 0.5f;
            dy[i] = (src[std::size_t(yp) * w + x] - src[std::size_t(ym) * w + x]) * 0.5f;
        }
    }
}

} // namespace

MotionBoundary motionBoundary(const FlowField& flow) {
    MotionBoundary mb;
    mb.width = flow.width;
    mb.height = flow.height;
    derive(flow.u, flow.width, flow.height, mb.ux, mb.uy);
    derive(flow.v, flow.width, flow.height, mb.vx, mb.vy);
    return mb;
}

SummarizedBoundary summarize(std::span<const MotionBoundary> boundaries) {
    if (boundaries.empty())
        throw std::invalid_argument("summarize: boundary list must be non-empty");
    const int w = boundaries.front().width;
    const int h = boundaries.front().height;
    const std::size_t n = std::size_t(w) * h;

    std::vector<double> mux(n, 0.0), muy(n, 0.0), mvx(n, 0.0), mvy(n, 0.0);
    for (const MotionBoundary& b : boundaries) {
        if (b.width != w || b.height != h)
            throw std::invalid_argument("summarize: boundary dimensions differ");
        for (std::size_t i = 0; i < n; ++i) {
            mux[i] += b.ux[i];
            muy[i] += b.uy[i];
            mvx[i] += b.vx[i];
            mvy[i] += b.vy[i];
        }
    }

    SummarizedBoundary s;
    s.mu = VecField(w, h);
    s.mv = VecField(w, h);
    for (std::size_t i = 0; i < n; ++i) {
        s.mu.x[i] = float(mux[i]);
        s.mu.y[i] = float(muy[i]);
        s.mv.x[i] = float(mvx[i]);
        s.mv.y[i] = float(mvy[i]);
    }
    return s;
}

int orientationBinYUp(double x, double y) {
    // Exact sign/magnitude comparisons instead of atan2 so that vectors on
    // bin boundaries land deterministically in the half-open bin whose
    // start angle they sit on.
    if (x > 0 && y > 0 && y >= x) return 2;  // [45, 90)
    if (x <= 0 && y > 0 && y > -x) return 3; // [90, 135)
    if (x < 0 && y > 0 && y <= -x) return 4; // [135, 180)
    if (x < 0 && y <= 0 && y > x) return 5;  // [180, 225)
    if (x < 0 && y <= x) return 6;           // [225, 270)
    if (x >= 0 && y < 0 && x < -y) return 7; // [270, 315)
    if (x > 0 && y < 0 && x >= -y) return 8; // [315, 360)
    return 1;                                // [0, 45) and the zero vector
}

PolarMap toPolar(const VecField& field) {
    PolarMap polar;
    polar.width = field.width;
    polar.height = field.height;
    const std::size_t n = field.x.size();
    polar.magnitude.resize(n);
    polar.orientationBin.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double vx = field.x[i];
        const double vy = field.y[i];
        polar.magnitude[i] = std::sqrt(vx * vx + vy * vy);
        polar.orientationBin[i] = orientationBinYUp(vx, -vy); // image rows point down
    }
    return polar;
}

namespace {

// Largest-mean-magnitude block and the dominant orientation inside it.
std::pair<int, int> fieldLabels(const VecField& field, const PartitionPattern& pattern) {
    const PolarMap polar = toPolar(field);
    const int blocks = pattern.blockCount();
    std::vector<double> sums(std::size_t(blocks), 0.0);
    const auto& map = pattern.indexMap();
    for (std::size_t i = 0; i < map.size(); ++i) sums[std::size_t(map[i]) - 1] += polar.magnitude[i];

    int best = 1;
    double bestMean = sums[0] / pattern.blockSizes()[0];
    for (int b = 2; b <= blocks; ++b) {
        const double mean = sums[std::size_t(b) - 1] / pattern.blockSizes()[std::size_t(b) - 1];
        if (mean > bestMean) {
            bestMean = mean;
            best = b;
        }
    }

    std::array<double, 8> histogram{};
    for (std::size_t i = 0; i < map.size(); ++i)
        if (map[i] == best) histogram[std::size_t(polar.orientationBin[i]) - 1] += polar.magnitude[i];
    int bin = 1;
    for (int k = 2; k <= 8; ++k)
        if (histogram[std::size_t(k) - 1] > histogram[std::size_t(bin) - 1]) bin = k;
    return {best, bin};
}

} // namespace

PatternMotionLabels localMotionLabels(const SummarizedBoundary& summary,
                                      const PartitionPattern& pattern) {
    if (summary.mu.width != pattern.width() || summary.mu.height != pattern.height())
        throw std::invalid_argument("localMotionLabels: summary and pattern dimensions differ");
    PatternMotionLabels labels;
    std::tie(labels.p_u, labels.o_u) = fieldLabels(summary.mu, pattern);
    std::tie(labels.p_v, labels.o_v) = fieldLabels(summary.mv, pattern);
    return labels;
}

std::pair<int, int> globalMotionLabels(std::span<const FlowField> flows) {
    if (flows.empty())
        throw std::invalid_argument("globalMotionLabels: need at least one flow");
    int iu = 1, iv = 1;
    double bestU = -1.0, bestV = -1.0;
    for (std::size_t i = 0; i < flows.size(); ++i) {
        const MotionBoundary mb = motionBoundary(flows[i]);
        double sumU = 0.0, sumV = 0.0;
        for (std::size_t k = 0; k < mb.ux.size(); ++k) {
            sumU += std::sqrt(double(mb.ux[k]) * mb.ux[k] + double(mb.uy[k]) * mb.uy[k]);
            sumV += std::sqrt(double(mb.vx[k]) * mb.vx[k] + double(mb.vy[k]) * mb.vy[k]);
        }
        if (sumU > bestU) {
            bestU = sumU;
            iu = int(i) + 1;
        }
        if (sumV > bestV) {
            bestV = sumV;
            iv = int(i) + 1;
        }
    }
    return {iu, iv};
}

MotionLabels motionLabels(std::span<const FlowField> flows,
                          const std::array<PartitionPattern, 3>& patterns) {
    std::vector<MotionBoundary> boundaries;
    boundaries.reserve(flows.size());
    for (const FlowField& f : flows) boundaries.push_back(motionBoundary(f));
    const SummarizedBoundary summary = summarize(boundaries);

    MotionLabels labels;
    for (std::size_t p = 0; p < 3; ++p)
        labels.perPattern[p] = localMotionLabels(summary, patterns[p]);
    std::tie(labels.I_u, labels.I_v) = globalMotionLabels(flows);
    labels.flowCount = int(flows.size());
    return labels;
}

} // namespace vstats
