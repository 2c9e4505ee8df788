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

#include <cstdio>
#include <exception>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "vstats/pipeline.hpp"

namespace {

bool parseSize(const std::string& text, int& height, int& width) {
    const auto sep = text.find('x');
    if (sep == std::string::npos) return false;
    try {
        height = std::stoi(text.substr(0, sep));
        width = std::stoi(text.substr(sep + 1));
    } catch (const std::exception&) {
        return false;
    }
    return height > 0 && width > 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vstats: derive motion/appearance statistical labels and a curriculum "
                 "manifest from directories of video frames"};

    std::string root;
    std::string mode = "nonoverlap";
    std::string resize = "128x171";
    std::string crop = "112x112";
    std::string cropMode = "random";
    std::string out;
    std::string dumpDir;
    vstats::ProcessOptions options;
    options.workerCount = int(std::max(1u, std::thread::hardware_concurrency()));

    app.add_option("--root", root, "Dataset root: one subdirectory of frame images per source")
        ->required();
    app.add_option("--mode", mode, "Clip sampling: nonoverlap or random")
        ->check(CLI::IsMember({"nonoverlap", "random"}));
    app.add_option("--clip-len", options.sampler.clipLength, "Frames per clip (default 16)");
    app.add_option("--resize", resize, "Resize HxW applied to every frame (default 128x171)");
    app.add_option("--crop", crop, "Crop HxW applied after the resize (default 112x112)");
    app.add_option("--crop-mode", cropMode, "Crop placement: random or center")
        ->check(CLI::IsMember({"random", "center"}));
    app.add_option("--flip-prob", options.sampler.horizontalFlipProbability,
                   "Horizontal flip probability (default 0.5)");
    app.add_option("--seed", options.sampler.seed, "Seed for all sampling decisions");
    app.add_option("--iou-bins", options.iouBins,
                   "Histogram bins per channel for the color IoU (default 16)");
    app.add_option("--switch-iter", options.switchIteration,
                   "Training iteration at which stage 2 clips join");
    app.add_option("--workers", options.workerCount, "Worker threads (default: hardware)");
    app.add_option("--out", out, "Output manifest path")->required();
    app.add_option("--dump-diagnostics", dumpDir, "Directory for per-clip diagnostic images");
    app.add_flag("--use-flo", options.useFlo,
                 "Import <source>/flow/<frameIndex>.flo instead of estimating when present");
    app.add_option("--pyramid-scale", options.flow.pyramidScale, "Flow pyramid scale (default 0.5)");
    app.add_option("--pyramid-levels", options.flow.pyramidLevels, "Flow pyramid levels (default 4)");
    app.add_option("--smoothness", options.flow.smoothnessWeight,
                   "Flow smoothness weight (default 15)");
    app.add_option("--flow-iters", options.flow.iterationsPerLevel,
                   "Flow iterations per level (default 50)");
    app.add_option("--flow-warps", options.flow.warpsPerLevel, "Flow warps per level (default 3)");

    CLI11_PARSE(app, argc, argv);

    options.root = root;
    options.dumpDir = dumpDir;
    options.sampler.mode =
        mode == "random" ? vstats::SamplerMode::RandomStart : vstats::SamplerMode::NonOverlapping;
    options.sampler.cropMode =
        cropMode == "center" ? vstats::CropMode::Center : vstats::CropMode::Random;
    if (!parseSize(resize, options.sampler.resizeHeight, options.sampler.resizeWidth)) {
        std::fprintf(stderr, "error: --resize expects HxW, got '%s'\n", resize.c_str());
        return 1;
    }
    if (!parseSize(crop, options.sampler.cropHeight, options.sampler.cropWidth)) {
        std::fprintf(stderr, "error: --crop expects HxW, got '%s'\n", crop.c_str());
        return 1;
    }

    try {
        const vstats::Manifest manifest = vstats::processDataset(options);
        for (const auto& failure : manifest.failures)
            std::fprintf(stderr, "warning: skipped %s: %s\n", failure.clipTag.c_str(),
                         failure.reason.c_str());
        vstats::writeManifest(manifest, std::filesystem::path(out));
        std::fprintf(stderr, "wrote %zu entries to %s (%zu skipped)\n",
                     manifest.entries.size(), out.c_str(), manifest.failures.size());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
