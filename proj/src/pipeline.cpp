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

#include "vstats/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <thread>

#include "vstats/appearance.hpp"
#include "vstats/image_io.hpp"

namespace vstats {
namespace {

struct ClipTask {
    std::filesystem::path sourceDir;
    std::string sourceId;
    int ordinal = 0;
};

struct ClipResult {
    std::optional<ManifestEntry> entry;
    std::optional<ClipFailure> failure;
};

std::vector<std::filesystem::path> listSourceDirs(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(root))
        throw std::runtime_error("dataset root '" + root.string() + "' is not a directory");
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory()) dirs.push_back(entry.path());
    std::sort(dirs.begin(), dirs.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    return dirs;
}

// Loads precomputed flow for a clip if every <source>/flow/<i>.flo sibling
// exists; the files must match the transformed clip size.
std::optional<std::vector<FlowField>> importFlows(const ClipTask& task, const Clip& clip) {
    namespace fs = std::filesystem;
    const fs::path flowDir = task.sourceDir / "flow";
    std::vector<fs::path> paths;
    for (int i = 0; i + 1 < clip.length(); ++i) {
        fs::path p = flowDir / (std::to_string(clip.frameOffset + i) + ".flo");
        if (!fs::is_regular_file(p)) return std::nullopt;
        paths.push_back(std::move(p));
    }
    std::vector<FlowField> flows;
    flows.reserve(paths.size());
    for (const fs::path& p : paths) {
        FlowField f = readFlo(p);
        if (f.width != clip.width() || f.height != clip.height())
            throw std::runtime_error("imported flow '" + p.string() + "' is " +
                                     std::to_string(f.width) + "x" + std::to_string(f.height) +
                                     " but the transformed clip is " +
                                     std::to_string(clip.width()) + "x" +
                                     std::to_string(clip.height()));
        for (std::size_t i = 0; i < f.u.size(); ++i)
            if (!std::isfinite(f.u[i]) || !std::isfinite(f.v[i]))
                throw std::runtime_error("imported flow '" + p.string() +
                                         "' contains non-finite values");
        flows.push_back(std::move(f));
    }
    return flows;
}

ManifestEntry processClip(const ClipTask& task, const ProcessOptions& options,
                          const std::array<PartitionPattern, 3>& patterns,
                          SummarizedBoundary* summaryOut) {
    const Clip clip = loadClip(task.sourceDir, options.sampler, task.ordinal);

    std::vector<FlowField> flows;
    std::string flowSource = "estimated";
    if (options.useFlo) {
        if (auto imported = importFlows(task, clip)) {
            flows = std::move(*imported);
            flowSource = "imported";
        }
    }
    if (flows.empty()) flows = clipFlows(clip, options.flow);

    std::vector<MotionBoundary> boundaries;
    boundaries.reserve(flows.size());
    for (const FlowField& f : flows) boundaries.push_back(motionBoundary(f));
    SummarizedBoundary summary = summarize(boundaries);

    ManifestEntry entry;
    entry.sourceId = task.sourceId;
    entry.frameOffset = clip.frameOffset;
    entry.clipId = task.sourceId + "/" + std::to_string(clip.frameOffset);
    entry.transformRecord = clip.transform;
    for (std::size_t p = 0; p < 3; ++p)
        entry.labelSet.motion.perPattern[p] = localMotionLabels(summary, patterns[p]);
    std::tie(entry.labelSet.motion.I_u, entry.labelSet.motion.I_v) = globalMotionLabels(flows);
    entry.labelSet.motion.flowCount = int(flows.size());
    entry.labelSet.appearance = appearanceLabels(clip, patterns, options.iouBins);
    entry.reg1D = encode(entry.labelSet, TargetFormat::Reg1D);
    entry.reg2D = encode(entry.labelSet, TargetFormat::Reg2D);
    entry.classification = encode(entry.labelSet, TargetFormat::Classification);
    entry.curriculumScore = score(summary, patterns[0]);
    entry.flowSource = flowSource;

    if (summaryOut) *summaryOut = std::move(summary);
    return entry;
}

std::vector<std::uint8_t> normalizedMagnitude(const VecField& field) {
    const PolarMap polar = toPolar(field);
    double lo = polar.magnitude.empty() ? 0.0 : polar.magnitude[0];
    double hi = lo;
    for (double m : polar.magnitude) {
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    const double span = hi - lo;
    std::vector<std::uint8_t> gray(polar.magnitude.size(), 0);
    if (span > 0.0)
        for (std::size_t i = 0; i < gray.size(); ++i)
            gray[i] = std::uint8_t(std::lround((polar.magnitude[i] - lo) / span * 255.0));
    return gray;
}

void writeBlockOverlay(const std::filesystem::path& path, const std::vector<std::uint8_t>& gray,
                       const PartitionPattern& pattern, int block) {
    const int w = pattern.width();
    const int h = pattern.height();
    Frame img(w, h);
    const auto& map = pattern.indexMap();
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const std::size_t i = std::size_t(y) * w + x;
            const std::uint8_t g = gray[i];
            Rgb px{g, g, g};
            if (int(map[i]) == block) {
                const bool edge =
                    x == 0 || y == 0 || x == w - 1 || y == h - 1 ||
                    int(map[i - 1]) != block || int(map[i + 1]) != block ||
                    int(map[i - std::size_t(w)]) != block || int(map[i + std::size_t(w)]) != block;
                if (edge) px = {255, 0, 0};
            }
            img.setPixel(x, y, px);
        }
    writePng(path, img);
}

} // namespace

void dumpDiagnostics(const ManifestEntry& entry, const SummarizedBoundary& summary,
                     const std::array<PartitionPattern, 3>& patterns,
                     const std::filesystem::path& outDir) {
    namespace fs = std::filesystem;
    fs::create_directories(outDir);
    const std::string tag = entry.sourceId + "_" + std::to_string(entry.frameOffset);

    const auto muGray = normalizedMagnitude(summary.mu);
    const auto mvGray = normalizedMagnitude(summary.mv);
    const int w = summary.mu.width;
    const int h = summary.mu.height;
    writeGrayPng(outDir / (tag + "_mu.png"), w, h, muGray);
    writeGrayPng(outDir / (tag + "_mv.png"), w, h, mvGray);

    for (std::size_t p = 0; p < 3; ++p) {
        const auto& labels = entry.labelSet.motion.perPattern[p];
        const std::string prefix = tag + "_p" + std::to_string(p + 1);
        writeBlockOverlay(outDir / (prefix + "_u.png"), muGray, patterns[p], labels.p_u);
        writeBlockOverlay(outDir / (prefix + "_v.png"), mvGray, patterns[p], labels.p_v);
    }
}

Manifest processDataset(const ProcessOptions& options) {
    options.sampler.validate();
    options.flow.validate();
    if (options.iouBins < 1) throw std::invalid_argument("iouBins must be positive");
    if (options.workerCount < 1) throw std::invalid_argument("workerCount must be positive");

    const auto patterns = buildAllPatterns(options.sampler.cropWidth, options.sampler.cropHeight);

    std::vector<ClipTask> tasks;
    std::vector<ClipFailure> failures;
    for (const auto& dir : listSourceDirs(options.root)) {
        const std::string sourceId = dir.filename().string();
        int frameCount = 0;
        try {
            frameCount = int(listFrameFiles(dir).size());
        } catch (const std::exception& e) {
            failures.push_back({sourceId, e.what()});
            continue;
        }
        const int clips = frameCount / options.sampler.clipLength;
        if (clips == 0) {
            failures.push_back({sourceId, "insufficient frames: " + std::to_string(frameCount) +
                                              " < " + std::to_string(options.sampler.clipLength)});
            continue;
        }
        for (int k = 0; k < clips; ++k) tasks.push_back({dir, sourceId, k});
    }

    // Each worker fills independent slots; entry order is fixed afterwards
    // by sorting, so scheduling cannot affect the output.
    std::vector<ClipResult> results(tasks.size());
    std::atomic<std::size_t> nextTask{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = nextTask.fetch_add(1);
            if (i >= tasks.size()) break;
            try {
                SummarizedBoundary summary;
                const bool wantDump = !options.dumpDir.empty();
                ManifestEntry entry =
                    processClip(tasks[i], options, patterns, wantDump ? &summary : nullptr);
                if (wantDump) dumpDiagnostics(entry, summary, patterns, options.dumpDir);
                results[i].entry = std::move(entry);
            } catch (const std::exception& e) {
                results[i].failure =
                    ClipFailure{tasks[i].sourceId + "/#" + std::to_string(tasks[i].ordinal),
                                e.what()};
            }
        }
    };

    const int workers = std::min<int>(options.workerCount, std::max<std::size_t>(tasks.size(), 1));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    Manifest manifest;
    manifest.samplerConfig = options.sampler;
    manifest.flowConfig = options.flow;
    manifest.binCount = options.iouBins;
    manifest.failures = std::move(failures);
    for (ClipResult& r : results) {
        if (r.entry) manifest.entries.push_back(std::move(*r.entry));
        if (r.failure) manifest.failures.push_back(std::move(*r.failure));
    }

    std::stable_sort(manifest.entries.begin(), manifest.entries.end(),
                     [](const ManifestEntry& a, const ManifestEntry& b) {
                         if (a.sourceId != b.sourceId) return a.sourceId < b.sourceId;
                         return a.frameOffset < b.frameOffset;
                     });
    // RandomStart ordinals can draw the same offset twice; the clips are
    // byte-identical, keep the first.
    manifest.entries.erase(std::unique(manifest.entries.begin(), manifest.entries.end(),
                                       [](const ManifestEntry& a, const ManifestEntry& b) {
                                           return a.sourceId == b.sourceId &&
                                                  a.frameOffset == b.frameOffset;
                                       }),
                           manifest.entries.end());

    if (manifest.entries.empty())
        throw std::runtime_error("no clips succeeded (" +
                                 std::to_string(manifest.failures.size()) + " failures)");

    std::vector<std::pair<std::string, double>> scores;
    scores.reserve(manifest.entries.size());
    for (const ManifestEntry& e : manifest.entries)
        scores.emplace_back(e.clipId, e.curriculumScore);
    manifest.pacingPlan = buildPlan(scores, options.switchIteration);
    return manifest;
}

} // namespace vstats
