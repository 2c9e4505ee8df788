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
#include <iosfwd>
#include <string>
#include <vector>

#include "vstats/curriculum.hpp"
#include "vstats/targets.hpp"

namespace vstats {

/// One processed clip: identity, applied transform, labels, the three
/// target encodings, and its curriculum score.
struct ManifestEntry {
    std::string clipId; // "<sourceId>/<frameOffset>"
    std::string sourceId;
    int frameOffset = 0;
    TransformRecord transformRecord;
    LabelSet labelSet;
    TargetVector reg1D;
    TargetVector reg2D;
    TargetVector classification;
    double curriculumScore = 0.0;
    std::string flowSource; // "estimated" or "imported"
};

struct ClipFailure {
    std::string clipTag;
    std::string reason;
};

/// The full output of a dataset run. Serialized as JSON Lines: a versioned
/// header object, one object per entry in (sourceId, frameOffset) order,
/// and a trailing pacing-plan object. Identical runs produce byte-identical
/// files regardless of worker count.
struct Manifest {
    std::string version = "vstats/1";
    SamplerConfig samplerConfig;
    FlowConfig flowConfig;
    int binCount = kDefaultIouBins;
    std::vector<ManifestEntry> entries;
    PacingPlan pacingPlan;
    std::vector<ClipFailure> failures; // reporting only, not serialized
};

void writeManifest(const Manifest& manifest, std::ostream& out);
void writeManifest(const Manifest& manifest, const std::filesystem::path& path);

} // namespace vstats
