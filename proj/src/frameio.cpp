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

#include "vstats/frameio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vstats/image_io.hpp"

namespace vstats {

void SamplerConfig::validate() const {
    if (clipLength < 2)
        throw std::invalid_argument("sampler: clipLength must be at least 2");
    if (resizeHeight <= 0 || resizeWidth <= 0 || cropHeight <= 0 || cropWidth <= 0)
        throw std::invalid_argument("sampler: sizes must be positive");
    if (cropHeight > resizeHeight || cropWidth > resizeWidth)
        throw std::invalid_argument("sampler: crop size exceeds resize size");
    if (horizontalFlipProbability < 0.0 || horizontalFlipProbability > 1.0)
        throw std::invalid_argument("sampler: flip probability must be in [0,1]");
}

std::vector<std::filesystem::path> listFrameFiles(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw std::runtime_error("frame source '" + dir.string() + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return char(std::tolower(c)); });
        if (ext == ".png" || ext == ".ppm") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    return files;
}

Frame resizeBilinear(const Frame& src, int dstWidth, int dstHeight) {
    if (dstWidth <= 0 || dstHeight <= 0)
        throw std::invalid_argument("resize: target size must be positive");
    if (dstWidth == src.width && dstHeight == src.height) return src;

    Frame dst(dstWidth, dstHeight);
    const double scaleX = double(src.width) / dstWidth;
    const double scaleY = double(src.height) / dstHeight;
    for (int y = 0; y < dstHeight; ++y) {
        double sy = (y + 0.5) * scaleY - 0.5;
        sy = std::clamp(sy, 0.0, double(src.height - 1));
        const int y0 = int(sy);
        const int y1 = std::min(y0 + 1, src.height - 1);
        const double fy = sy - y0;
        for (int x = 0; x < dstWidth; ++x) {
            double sx = (x + 0.5) * scaleX - 0.5;
            sx = std::clamp(sx, 0.0, double(src.width - 1));
            const int x0 = int(sx);
            const int x1 = std::min(x0 + 1, src.width - 1);
            const double fx = sx - x0;
            const std::size_t o = dst.offset(x, y);
            for (int c = 0; c < 3; ++c) {
                const double top = (1.0 - fx) * src.pixels[src.offset(x0, y0) + c] +
                                   fx * src.pixels[src.offset(x1, y0) + c];
                const double bot = (1.0 - fx) * src.pixels[src.offset(x0, y1) + c] +
                                   fx * src.pixels[src.offset(x1, y1) + c];
                const double v = (1.0 - fy) * top + fy * bot;
                dst.pixels[o + c] = std::uint8_t(std::clamp(std::lround(v), 0L, 255L));
            }
        }
    }
    return dst;
}

namespace {

Frame cropFrame(const Frame& src, int cropX, int cropY, int cropWidth, int cropHeight) {
    if (cropX < 0 || cropY < 0 || cropX + cropWidth > src.width ||
        cropY + cropHeight > src.height)
        throw std::logic_error("crop window outside resized bounds");
    Frame dst(cropWidth, cropHeight);
    for (int y = 0; y < cropHeight; ++y) {
        const auto* row = src.pixels.data() + src.offset(cropX, cropY + y);
        std::copy(row, row + std::size_t(cropWidth) * 3,
                  dst.pixels.data() + dst.offset(0, y));
    }
    return dst;
}

Frame flipHorizontal(const Frame& src) {
    Frame dst(src.width, src.height);
    for (int y = 0; y < src.height; ++y)
        for (int x = 0; x < src.width; ++x) dst.setPixel(x, y, src.pixel(src.width - 1 - x, y));
    return dst;
}

} // namespace

Clip applyTransform(const Clip& clip, const SamplerConfig& sampler, SeededRng& rng) {
    sampler.validate();
    TransformRecord record;
    record.resizeHeight = sampler.resizeHeight;
    record.resizeWidth = sampler.resizeWidth;
    record.cropHeight = sampler.cropHeight;
    record.cropWidth = sampler.cropWidth;
    if (sampler.cropMode == CropMode::Random) {
        record.cropX = int(rng.nextBelow(std::uint64_t(sampler.resizeWidth - sampler.cropWidth) + 1));
        record.cropY = int(rng.nextBelow(std::uint64_t(sampler.resizeHeight - sampler.cropHeight) + 1));
    } else {
        record.cropX = (sampler.resizeWidth - sampler.cropWidth) / 2;
        record.cropY = (sampler.resizeHeight - sampler.cropHeight) / 2;
    }
    record.flipped = rng.nextUnit() < sampler.horizontalFlipProbability;

    Clip out;
    out.sourceId = clip.sourceId;
    out.frameOffset = clip.frameOffset;
    out.transform = record;
    out.frames.reserve(clip.frames.size());
    for (const Frame& frame : clip.frames) {
        Frame f = resizeBilinear(frame, sampler.resizeWidth, sampler.resizeHeight);
        f = cropFrame(f, record.cropX, record.cropY, record.cropWidth, record.cropHeight);
        if (record.flipped) f = flipHorizontal(f);
        out.frames.push_back(std::move(f));
    }
    return out;
}

Clip loadClip(const std::filesystem::path& directory, const SamplerConfig& sampler, int index) {
    sampler.validate();
    if (index < 0) throw std::invalid_argument("clip index must be nonnegative");

    const std::string sourceId = directory.filename().string();
    const auto files = listFrameFiles(directory);
    const int total = int(files.size());
    const int length = sampler.clipLength;

    SeededRng rng(mixSeed(sampler.seed, hashString(sourceId), std::uint64_t(index)));

    int start = 0;
    if (sampler.mode == SamplerMode::NonOverlapping) {
        start = index * length;
        if (start + length > total)
            throw std::runtime_error("insufficient frames in '" + sourceId + "': clip " +
                                     std::to_string(index) + " needs frames up to " +
                                     std::to_string(start + length) + " but only " +
                                     std::to_string(total) + " are present");
    } else {
        if (total < length)
            throw std::runtime_error("insufficient frames in '" + sourceId + "': need " +
                                     std::to_string(length) + ", found " + std::to_string(total));
        start = int(rng.nextBelow(std::uint64_t(total - length) + 1));
    }

    Clip raw;
    raw.sourceId = sourceId;
    raw.frameOffset = start;
    raw.frames.reserve(std::size_t(length));
    for (int i = 0; i < length; ++i) raw.frames.push_back(readImage(files[std::size_t(start + i)]));
    return applyTransform(raw, sampler, rng);
}

} // namespace vstats
