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

#include "vstats/appearance.hpp"

#include <algorithm>
#include <stdexcept>

namespace vstats {
namespace {

inline int channelBin(std::uint8_t value, int binCount) {
    int b = int(value) * binCount / 256;
    return b >= binCount ? binCount - 1 : b;
}

// IoU of per-frame histograms: one histogram per frame per channel,
// flattened as [channel][bin].
double iouFromHistograms(const std::vector<std::vector<long long>>& frameHists, int binCount) {
    double total = 0.0;
    for (int c = 0; c < 3; ++c) {
        long long inter = 0, uni = 0;
        for (int b = 0; b < binCount; ++b) {
            const std::size_t idx = std::size_t(c) * binCount + b;
            long long lo = frameHists[0][idx];
            long long hi = frameHists[0][idx];
            for (std::size_t f = 1; f < frameHists.size(); ++f) {
                lo = std::min(lo, frameHists[f][idx]);
                hi = std::max(hi, frameHists[f][idx]);
            }
            inter += lo;
            uni += hi;
        }
        total += double(inter) / double(uni);
    }
    return total / 3.0;
}

} // namespace

double temporalIoU(const std::vector<std::vector<Rgb>>& framePixels, int binCount) {
    if (binCount < 1) throw std::invalid_argument("temporalIoU: binCount must be positive");
    if (framePixels.empty() || framePixels.front().empty())
        throw std::invalid_argument("temporalIoU: block must be non-empty");

    std::vector<std::vector<long long>> hists(framePixels.size(),
                                              std::vector<long long>(std::size_t(binCount) * 3, 0));
    for (std::size_t f = 0; f < framePixels.size(); ++f) {
        if (framePixels[f].size() != framePixels.front().size())
            throw std::invalid_argument("temporalIoU: frames disagree on block size");
        for (const Rgb& px : framePixels[f]) {
            ++hists[f][std::size_t(0) * binCount + channelBin(px.r, binCount)];
            ++hists[f][std::size_t(1) * binCount + channelBin(px.g, binCount)];
            ++hists[f][std::size_t(2) * binCount + channelBin(px.b, binCount)];
        }
    }
    return iouFromHistograms(hists, binCount);
}

namespace {

// Per-block, per-frame channel histograms for a whole clip in one pass.
std::vector<std::vector<std::vector<long long>>> blockHistograms(const Clip& clip,
                                                                 const PartitionPattern& pattern,
                                                                 int binCount) {
    const int blocks = pattern.blockCount();
    std::vector<std::vector<std::vector<long long>>> hists(
        std::size_t(blocks),
        std::vector<std::vector<long long>>(clip.frames.size(),
                                            std::vector<long long>(std::size_t(binCount) * 3, 0)));
    const auto& map = pattern.indexMap();
    for (std::size_t f = 0; f < clip.frames.size(); ++f) {
        const Frame& frame = clip.frames[f];
        for (int y = 0; y < frame.height; ++y)
            for (int x = 0; x < frame.width; ++x) {
                const Rgb px = frame.pixel(x, y);
                auto& hist = hists[std::size_t(map[std::size_t(y) * frame.width + x]) - 1][f];
                ++hist[std::size_t(0) * binCount + channelBin(px.r, binCount)];
                ++hist[std::size_t(1) * binCount + channelBin(px.g, binCount)];
                ++hist[std::size_t(2) * binCount + channelBin(px.b, binCount)];
            }
    }
    return hists;
}

} // namespace

DiversityLabels diversityLabels(const Clip& clip, const PartitionPattern& pattern, int binCount) {
    if (clip.frames.empty()) throw std::invalid_argument("diversityLabels: empty clip");
    if (clip.width() != pattern.width() || clip.height() != pattern.height())
        throw std::invalid_argument("diversityLabels: clip and pattern dimensions differ");

    const auto hists = blockHistograms(clip, pattern, binCount);
    DiversityLabels labels;
    double lo = 2.0, hi = -1.0;
    for (int b = 1; b <= pattern.blockCount(); ++b) {
        const double iou = iouFromHistograms(hists[std::size_t(b) - 1], binCount);
        if (iou < lo) {
            lo = iou;
            labels.p_l = b;
        }
        if (iou > hi) {
            hi = iou;
            labels.p_s = b;
        }
    }
    return labels;
}

int dominantColor(std::span<const Rgb> pixels) {
    if (pixels.empty()) throw std::invalid_argument("dominantColor: empty pixel set");
    std::array<long long, 8> counts{};
    for (const Rgb& px : pixels) ++counts[std::size_t(colorOctant(px)) - 1];
    int best = 1;
    for (int b = 2; b <= 8; ++b)
        if (counts[std::size_t(b) - 1] > counts[std::size_t(best) - 1]) best = b;
    return best;
}

namespace {

// Dominant octant of one block across all frames, without materializing
// the pixel list.
int blockDominantColor(const Clip& clip, const PartitionPattern& pattern, int block) {
    std::array<long long, 8> counts{};
    const auto& map = pattern.indexMap();
    for (const Frame& frame : clip.frames)
        for (int y = 0; y < frame.height; ++y)
            for (int x = 0; x < frame.width; ++x)
                if (map[std::size_t(y) * frame.width + x] == block)
                    ++counts[std::size_t(colorOctant(frame.pixel(x, y))) - 1];
    int best = 1;
    for (int b = 2; b <= 8; ++b)
        if (counts[std::size_t(b) - 1] > counts[std::size_t(best) - 1]) best = b;
    return best;
}

} // namespace

AppearanceLabels appearanceLabels(const Clip& clip,
                                  const std::array<PartitionPattern, 3>& patterns, int binCount) {
    AppearanceLabels labels;
    for (std::size_t p = 0; p < 3; ++p) {
        const DiversityLabels d = diversityLabels(clip, patterns[p], binCount);
        labels.perPattern[p].p_l = d.p_l;
        labels.perPattern[p].p_s = d.p_s;
        labels.perPattern[p].c_l = blockDominantColor(clip, patterns[p], d.p_l);
        labels.perPattern[p].c_s = blockDominantColor(clip, patterns[p], d.p_s);
    }

    std::array<long long, 8> counts{};
    for (const Frame& frame : clip.frames)
        for (int y = 0; y < frame.height; ++y)
            for (int x = 0; x < frame.width; ++x)
                ++counts[std::size_t(colorOctant(frame.pixel(x, y))) - 1];
    labels.C = 1;
    for (int b = 2; b <= 8; ++b)
        if (counts[std::size_t(b) - 1] > counts[std::size_t(labels.C) - 1]) labels.C = b;
    return labels;
}

} // namespace vstats
