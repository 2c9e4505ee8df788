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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vstats/motion.hpp"
#include "vstats/partition.hpp"

namespace vstats {

/// Difficulty score of one clip: for each of Mu and Mv, take the pattern-1
/// block selected by the largest-motion rule and divide its magnitude sum
/// by the whole-field magnitude sum; f is the larger of the two ratios.
/// High f = concentrated motion = easy sample. A field with zero total
/// magnitude contributes the uniform-equivalent ratio 1/16.
double score(const SummarizedBoundary& summary, const PartitionPattern& pattern1);

/// Two-stage single-step pacing plan: clips sorted easy-to-hard
/// (descending f, ties by ascending clip id), split into the first
/// ceil(n/2) (stage 1) and the rest (stage 2); stage 2 joins training at
/// iteration `switchIteration`.
struct PacingPlan {
    std::vector<std::string> stage1;
    std::vector<std::string> stage2;
    std::uint64_t switchIteration = 0;
};

PacingPlan buildPlan(const std::vector<std::pair<std::string, double>>& scores,
                     std::uint64_t switchIteration);

} // namespace vstats
