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

#include "vstats/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace vstats {
namespace {

constexpr int kMinPyramidSide = 4;

// A single-channel double image used inside the estimator.
struct Plane {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Plane() = default;
    Plane(int w, int h) : width(w), height(h), data(std::size_t(w) * h, 0.0) {}

    double at(int x, int y) const {
        x = std::clamp(x, 0, width - 1);
        y = std::clamp(y, 0, height - 1);
        return data[std::size_t(y) * width + x];
    }
    double& ref(int x, int y) { return data[std::size_t(y) * width + x]; }
};

Plane toLuma(const Frame& frame) {
    Plane p(frame.width, frame.height);
    for (int y = 0; y < frame.height; ++y)
        for (int x = 0; x < frame.width; ++x) p.ref(x, y) = luma601(frame.pixel(x, y));
    return p;
}

Plane gaussianBlur(const Plane& src, double sigma) {
    if (sigma <= 0.0) return src;
    const int radius = std::max(1, int(std::ceil(3.0 * sigma)));
    std::vector<double> kernel(std::size_t(radius) + 1);
    double norm = 0.0;
    for (int i = 0; i <= radius; ++i) {
        kernel[std::size_t(i)] = std::exp(-0.5 * (double(i) * i) / (sigma * sigma));
        norm += (i == 0 ? 1.0 : 2.0) * kernel[std::size_t(i)];
    }
    for (auto& k : kernel) k /= norm;

    Plane tmp(src.width, src.height);
    for (int y = 0; y < src.height; ++y)
        for (int x = 0; x < src.width; ++x) {
            double acc = kernel[0] * src.at(x, y);
            for (int i = 1; i <= radius; ++i)
                acc += kernel[std::size_t(i)] * (src.at(x - i, y) + src.at(x + i, y));
            tmp.ref(x, y) = acc;
        }
    Plane dst(src.width, src.height);
    for (int y = 0; y < src.height; ++y)
        for (int x = 0; x < src.width; ++x) {
            double acc = kernel[0] * tmp.at(x, y);
            for (int i = 1; i <= radius; ++i)
                acc += kernel[std::size_t(i)] * (tmp.at(x, y - i) + tmp.at(x, y + i));
            dst.ref(x, y) = acc;
        }
    return dst;
}

double sampleBilinear(const Plane& p, double x, double y) {
    x = std::clamp(x, 0.0, double(p.width - 1));
    y = std::clamp(y, 0.0, double(p.height - 1));
    const int x0 = int(x);
    const int y0 = int(y);
    const int x1 = std::min(x0 + 1, p.width - 1);
    const int y1 = std::min(y0 + 1, p.height - 1);
    const double fx = x - x0;
    const double fy = y - y0;
    const double top = (1.0 - fx) * p.at(x0, y0) + fx * p.at(x1, y0);
    const double bot = (1.0 - fx) * p.at(x0, y1) + fx * p.at(x1, y1);
    return (1.0 - fy) * top + fy * bot;
}

Plane resizePlane(const Plane& src, int dstWidth, int dstHeight) {
    Plane dst(dstWidth, dstHeight);
    const double scaleX = double(src.width) / dstWidth;
    const double scaleY = double(src.height) / dstHeight;
    for (int y = 0; y < dstHeight; ++y)
        for (int x = 0; x < dstWidth; ++x)
            dst.ref(x, y) = sampleBilinear(src, (x + 0.5) * scaleX - 0.5, (y + 0.5) * scaleY - 0.5);
    return dst;
}

// The classic Horn-Schunck neighborhood average: 1/6 for the 4-neighbors,
// 1/12 for the diagonals, replicate padding at the borders.
double neighborAverage(const Plane& p, int x, int y) {
    return (p.at(x - 1, y) + p.at(x + 1, y) + p.at(x, y - 1) + p.at(x, y + 1)) / 6.0 +
           (p.at(x - 1, y - 1) + p.at(x + 1, y - 1) + p.at(x - 1, y + 1) + p.at(x + 1, y + 1)) /
               12.0;
}

// One pyramid level of Horn-Schunck with warping. u and v are updated
// in place with accumulated increments.
void hornSchunckLevel(const Plane& i1, const Plane& i2, Plane& u, Plane& v,
                      const FlowConfig& cfg) {
    const int w = i1.width;
    const int h = i1.height;
    const double alpha2 = cfg.smoothnessWeight * cfg.smoothnessWeight;

    Plane warped(w, h), ix(w, h), iy(w, h), it(w, h);
    Plane du(w, h), dv(w, h), duNext(w, h), dvNext(w, h);

    for (int warp = 0; warp < cfg.warpsPerLevel; ++warp) {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                warped.ref(x, y) = sampleBilinear(i2, x + u.at(x, y), y + v.at(x, y));

        // Spatial derivatives averaged over the two frames; temporal
        // derivative after warping.
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                ix.ref(x, y) = 0.25 * (i1.at(x + 1, y) - i1.at(x - 1, y) +
                                       warped.at(x + 1, y) - warped.at(x - 1, y));
                iy.ref(x, y) = 0.25 * (i1.at(x, y + 1) - i1.at(x, y - 1) +
                                       warped.at(x, y + 1) - warped.at(x, y - 1));
                it.ref(x, y) = warped.at(x, y) - i1.at(x, y);
            }

        std::fill(du.data.begin(), du.data.end(), 0.0);
        std::fill(dv.data.begin(), dv.data.end(), 0.0);
        for (int iter = 0; iter < cfg.iterationsPerLevel; ++iter) {
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const double ubar = neighborAverage(du, x, y);
                    const double vbar = neighborAverage(dv, x, y);
                    const double gx = ix.at(x, y);
                    const double gy = iy.at(x, y);
                    const double shared =
                        (gx * ubar + gy * vbar + it.at(x, y)) / (alpha2 + gx * gx + gy * gy);
                    duNext.ref(x, y) = ubar - gx * shared;
                    dvNext.ref(x, y) = vbar - gy * shared;
                }
            std::swap(du, duNext);
            std::swap(dv, dvNext);
        }
        for (std::size_t i = 0; i < u.data.size(); ++i) {
            u.data[i] += du.data[i];
            v.data[i] += dv.data[i];
        }
    }
}

} // namespace

void FlowConfig::validate() const {
    if (!(pyramidScale > 0.0 && pyramidScale < 1.0))
        throw std::invalid_argument("flow: pyramidScale must be in (0,1)");
    if (pyramidLevels < 1 || iterationsPerLevel < 1 || warpsPerLevel < 1)
        throw std::invalid_argument("flow: all counts must be at least 1");
}

FlowField estimateFlow(const Frame& frameA, const Frame& frameB, const FlowConfig& cfg) {
    cfg.validate();
    if (!frameA.sameSize(frameB))
        throw std::invalid_argument("estimateFlow: frame dimensions differ");
    if (frameA.width < 8 || frameA.height < 8)
        throw std::invalid_argument("estimateFlow: frames must be at least 8x8");

    // Plan the pyramid and reject configurations that shrink below the
    // smallest workable level.
    std::vector<std::pair<int, int>> sizes{{frameA.width, frameA.height}};
    for (int level = 1; level < cfg.pyramidLevels; ++level) {
        const int w = int(std::lround(sizes.back().first * cfg.pyramidScale));
        const int h = int(std::lround(sizes.back().second * cfg.pyramidScale));
        if (w < kMinPyramidSide || h < kMinPyramidSide)
            throw std::invalid_argument(
                "pyramid underflow: level " + std::to_string(level) + " would be " +
                std::to_string(w) + "x" + std::to_string(h) +
                "; use fewer pyramid levels for this frame size");
        sizes.emplace_back(w, h);
    }

    const double downsampleSigma =
        0.6 * std::sqrt(1.0 / (cfg.pyramidScale * cfg.pyramidScale) - 1.0);

    std::vector<Plane> pyr1, pyr2;
    pyr1.push_back(gaussianBlur(toLuma(frameA), 0.8));
    pyr2.push_back(gaussianBlur(toLuma(frameB), 0.8));
    for (std::size_t level = 1; level < sizes.size(); ++level) {
        pyr1.push_back(resizePlane(gaussianBlur(pyr1.back(), downsampleSigma),
                                   sizes[level].first, sizes[level].second));
        pyr2.push_back(resizePlane(gaussianBlur(pyr2.back(), downsampleSigma),
                                   sizes[level].first, sizes[level].second));
    }

    Plane u(sizes.back().first, sizes.back().second);
    Plane v(sizes.back().first, sizes.back().second);
    for (int level = int(sizes.size()) - 1; level >= 0; --level) {
        if (level != int(sizes.size()) - 1) {
            const auto [w, h] = sizes[std::size_t(level)];
            Plane uUp = resizePlane(u, w, h);
            Plane vUp = resizePlane(v, w, h);
            const double sx = double(w) / u.width;
            const double sy = double(h) / u.height;
            for (auto& x : uUp.data) x *= sx;
            for (auto& x : vUp.data) x *= sy;
            u = std::move(uUp);
            v = std::move(vUp);
        }
        hornSchunckLevel(pyr1[std::size_t(level)], pyr2[std::size_t(level)], u, v, cfg);
    }

    FlowField flow(frameA.width, frameA.height);
    for (std::size_t i = 0; i < u.data.size(); ++i) {
        flow.u[i] = float(u.data[i]);
        flow.v[i] = float(v.data[i]);
        if (!std::isfinite(flow.u[i]) || !std::isfinite(flow.v[i]))
            throw std::runtime_error("estimateFlow: non-finite value in result");
    }
    return flow;
}

std::vector<FlowField> clipFlows(const Clip& clip, const FlowConfig& cfg) {
    if (clip.length() < 2)
        throw std::invalid_argument("clipFlows: clip must have at least 2 frames");
    std::vector<FlowField> flows;
    flows.reserve(std::size_t(clip.length()) - 1);
    for (int i = 0; i + 1 < clip.length(); ++i) {
        try {
            flows.push_back(estimateFlow(clip.frames[std::size_t(i)],
                                         clip.frames[std::size_t(i) + 1], cfg));
        } catch (const std::exception& e) {
            throw std::runtime_error("flow between frames " + std::to_string(i) + " and " +
                                     std::to_string(i + 1) + ": " + e.what());
        }
    }
    return flows;
}

namespace {

[[noreturn]] void floError(const std::filesystem::path& path, const std::string& what,
                           std::uint64_t byteOffset) {
    throw std::runtime_error("flo file '" + path.string() + "': " + what + " at byte " +
                             std::to_string(byteOffset));
}

} // namespace

FlowField readFlo(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("flo file '" + path.string() + "': cannot open");

    char magic[4] = {};
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, "PIEH", 4) != 0)
        floError(path, "bad magic (expected \"PIEH\")", 0);

    std::int32_t w = 0, h = 0;
    in.read(reinterpret_cast<char*>(&w), 4);
    if (in.gcount() != 4) floError(path, "truncated width", 4);
    in.read(reinterpret_cast<char*>(&h), 4);
    if (in.gcount() != 4) floError(path, "truncated height", 8);
    if (w <= 0 || h <= 0 || w > 1 << 16 || h > 1 << 16)
        floError(path, "implausible dimensions " + std::to_string(w) + "x" + std::to_string(h), 4);

    FlowField field(w, h);
    std::vector<float> row(std::size_t(w) * 2);
    for (int y = 0; y < h; ++y) {
        const std::streamsize bytes = std::streamsize(row.size() * sizeof(float));
        in.read(reinterpret_cast<char*>(row.data()), bytes);
        if (in.gcount() != bytes)
            floError(path, "truncated payload",
                     12 + (std::uint64_t(y) * w * 2) * sizeof(float) + std::uint64_t(in.gcount()));
        for (int x = 0; x < w; ++x) {
            field.u[field.at(x, y)] = row[std::size_t(x) * 2];
            field.v[field.at(x, y)] = row[std::size_t(x) * 2 + 1];
        }
    }
    return field;
}

void writeFlo(const FlowField& field, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("flo file '" + path.string() + "': cannot open for writing");
    out.write("PIEH", 4);
    const std::int32_t w = field.width;
    const std::int32_t h = field.height;
    out.write(reinterpret_cast<const char*>(&w), 4);
    out.write(reinterpret_cast<const char*>(&h), 4);
    std::vector<float> row(std::size_t(field.width) * 2);
    for (int y = 0; y < field.height; ++y) {
        for (int x = 0; x < field.width; ++x) {
            row[std::size_t(x) * 2] = field.u[field.at(x, y)];
            row[std::size_t(x) * 2 + 1] = field.v[field.at(x, y)];
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  std::streamsize(row.size() * sizeof(float)));
    }
    if (!out) throw std::runtime_error("flo file '" + path.string() + "': write failed");
}

} // namespace vstats
