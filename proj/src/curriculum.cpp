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

#include "vstats/curriculum.hpp"

#include <algorithm>
#include <stdexcept>

namespace vstats {
namespace {

double fieldRatio(const VecField& field, const PartitionPattern& pattern) {
    const PolarMap polar = toPolar(field);
    const int blocks = pattern.blockCount();
    std::vector<double> sums(std::size_t(blocks), 0.0);
    double total = 0.0;
    const auto& map = pattern.indexMap();
    for (std::size_t i = 0; i < map.size(); ++i) {
        sums[std::size_t(map[i]) - 1] += polar.magnitude[i];
        total += polar.magnitude[i];
    }
    if (total == 0.0) return 1.0 / blocks;

    // Same block selection as the location label: largest mean magnitude,
    // ties to the lowest index.
    int best = 1;
    double bestMean = sums[0] / pattern.blockSizes()[0];
    for (int b = 2; b <= blocks; ++b) {
        const double mean = sums[std::size_t(b) - 1] / pattern.blockSizes()[std::size_t(b) - 1];
        if (mean > bestMean) {
            bestMean = mean;
            best = b;
        }
    }
    return sums[std::size_t(best) - 1] / total;
}

} // namespace

double score(const SummarizedBoundary& summary, const PartitionPattern& pattern1) {
    if (summary.mu.width != pattern1.width() || summary.mu.height != pattern1.height())
        throw std::invalid_argument("score: summary and pattern dimensions differ");
    return std::max(fieldRatio(summary.mu, pattern1), fieldRatio(summary.mv, pattern1));
}

PacingPlan buildPlan(const std::vector<std::pair<std::string, double>>& scores,
                     std::uint64_t switchIteration) {
    if (scores.empty()) throw std::invalid_argument("buildPlan: no scores");

    std::vector<std::pair<std::string, double>> sorted = scores;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    PacingPlan plan;
    plan.switchIteration = switchIteration;
    const std::size_t half = (sorted.size() + 1) / 2;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        (i < half ? plan.stage1 : plan.stage2).push_back(sorted[i].first);
    return plan;
}

} // namespace vstats
