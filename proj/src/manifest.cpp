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

#include "vstats/manifest.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace vstats {
namespace {

using nlohmann::json;

json toJson(const SamplerConfig& s) {
    return {{"mode", s.mode == SamplerMode::NonOverlapping ? "nonOverlapping" : "randomStart"},
            {"clipLength", s.clipLength},
            {"resizeTo", {s.resizeHeight, s.resizeWidth}},
            {"cropTo", {s.cropHeight, s.cropWidth}},
            {"cropMode", s.cropMode == CropMode::Random ? "random" : "center"},
            {"horizontalFlipProbability", s.horizontalFlipProbability},
            {"seed", s.seed}};
}

json toJson(const FlowConfig& f) {
    return {{"pyramidScale", f.pyramidScale},
            {"pyramidLevels", f.pyramidLevels},
            {"smoothnessWeight", f.smoothnessWeight},
            {"iterationsPerLevel", f.iterationsPerLevel},
            {"warpsPerLevel", f.warpsPerLevel}};
}

json toJson(const TransformRecord& t) {
    return {{"resizeTo", {t.resizeHeight, t.resizeWidth}},
            {"cropX", t.cropX},
            {"cropY", t.cropY},
            {"cropTo", {t.cropHeight, t.cropWidth}},
            {"flipped", t.flipped}};
}

json toJson(const LabelSet& ls) {
    json motion;
    json appearance;
    for (int p = 0; p < 3; ++p) {
        const auto& m = ls.motion.perPattern[std::size_t(p)];
        motion["pattern" + std::to_string(p + 1)] = {
            {"p_u", m.p_u}, {"o_u", m.o_u}, {"p_v", m.p_v}, {"o_v", m.o_v}};
        const auto& a = ls.appearance.perPattern[std::size_t(p)];
        appearance["pattern" + std::to_string(p + 1)] = {
            {"p_l", a.p_l}, {"c_l", a.c_l}, {"p_s", a.p_s}, {"c_s", a.c_s}};
    }
    motion["I_u"] = ls.motion.I_u;
    motion["I_v"] = ls.motion.I_v;
    appearance["C"] = ls.appearance.C;
    return {{"motion", motion}, {"appearance", appearance}};
}

json toJson(const ManifestEntry& e) {
    return {{"clipId", e.clipId},
            {"sourceId", e.sourceId},
            {"frameOffset", e.frameOffset},
            {"transformRecord", toJson(e.transformRecord)},
            {"labelSet", toJson(e.labelSet)},
            {"targets",
             {{"reg1D", e.reg1D.values},
              {"reg2D", e.reg2D.values},
              {"classification",
               {{"classes", e.classification.classes},
                {"headSizes", e.classification.headSizes}}}}},
            {"curriculumScore", e.curriculumScore},
            {"flowSource", e.flowSource}};
}

} // namespace

void writeManifest(const Manifest& manifest, std::ostream& out) {
    json header = {{"version", manifest.version},
                   {"samplerConfig", toJson(manifest.samplerConfig)},
                   {"flowConfig", toJson(manifest.flowConfig)},
                   {"binCount", manifest.binCount}};
    out << header.dump() << "\n";
    for (const ManifestEntry& e : manifest.entries) out << toJson(e).dump() << "\n";
    json plan = {{"pacingPlan",
                  {{"stage1", manifest.pacingPlan.stage1},
                   {"stage2", manifest.pacingPlan.stage2},
                   {"switchIteration", manifest.pacingPlan.switchIteration}}}};
    out << plan.dump() << "\n";
}

void writeManifest(const Manifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("manifest '" + path.string() + "': cannot open for writing");
    writeManifest(manifest, out);
    if (!out) throw std::runtime_error("manifest '" + path.string() + "': write failed");
}

} // namespace vstats
