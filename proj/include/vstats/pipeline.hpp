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

#include "vstats/manifest.hpp"

namespace vstats {

struct ProcessOptions {
    std::filesystem::path root;       // one subdirectory of frames per source
    SamplerConfig sampler;
    FlowConfig flow;
    int iouBins = kDefaultIouBins;
    std::uint64_t switchIteration = 0;
    int workerCount = 1;
    bool useFlo = false;              // import <source>/flow/<frameIndex>.flo when present
    std::filesystem::path dumpDir;    // when set, write per-clip diagnostics here
};

/// Walks every source directory under root, processes each clip
/// (transform -> flows -> summarized boundaries -> labels -> targets ->
/// score), and assembles the manifest with its pacing plan. Per-clip
/// failures are recorded and skipped; throws only if no clip succeeds.
/// The result is independent of workerCount, byte for byte.
Manifest processDataset(const ProcessOptions& options);

/// Writes the diagnostic images for one entry: min-max normalized
/// grayscale PNGs of the Mu/Mv magnitudes, and per (pattern, field) an
/// overlay PNG with the selected block outlined on the magnitude image.
void dumpDiagnostics(const ManifestEntry& entry, const SummarizedBoundary& summary,
                     const std::array<PartitionPattern, 3>& patterns,
                     const std::filesystem::path& outDir);

} // namespace vstats
