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

#include <doctest.h>

#include <cmath>
#include <set>

#include "vstats/rng.hpp"
#include "vstats/targets.hpp"

using namespace vstats;

namespace {

// A valid LabelSet with every field covering its range given the seed.
LabelSet randomLabelSet(std::uint64_t seed, int flowCount = 15) {
    SeededRng rng(seed);
    LabelSet ls;
    for (int p = 0; p < 3; ++p) {
        const int blocks = patternBlockCount(p + 1);
        auto& m = ls.motion.perPattern[std::size_t(p)];
        m.p_u = 1 + int(rng.nextBelow(std::uint64_t(blocks)));
        m.o_u = 1 + int(rng.nextBelow(8));
        m.p_v = 1 + int(rng.nextBelow(std::uint64_t(blocks)));
        m.o_v = 1 + int(rng.nextBelow(8));
        auto& a = ls.appearance.perPattern[std::size_t(p)];
        a.p_l = 1 + int(rng.nextBelow(std::uint64_t(blocks)));
        a.c_l = 1 + int(rng.nextBelow(8));
        a.p_s = 1 + int(rng.nextBelow(std::uint64_t(blocks)));
        a.c_s = 1 + int(rng.nextBelow(8));
    }
    ls.motion.I_u = 1 + int(rng.nextBelow(std::uint64_t(flowCount)));
    ls.motion.I_v = 1 + int(rng.nextBelow(std::uint64_t(flowCount)));
    ls.motion.flowCount = flowCount;
    ls.appearance.C = 1 + int(rng.nextBelow(8));
    return ls;
}

const std::vector<int> kExpectedHeadSizes = {16, 8, 16, 8, 4, 8, 4, 8, 8, 8, 8, 8, 15, 15,
                                             16, 8, 16, 8, 4, 8, 4, 8, 8, 8, 8, 8, 8};

} // namespace

TEST_CASE("encodings have the documented lengths and head table") {
    const LabelSet ls = randomLabelSet(1);
    CHECK(encode(ls, TargetFormat::Reg1D).values.size() == 27);
    CHECK(encode(ls, TargetFormat::Reg2D).values.size() == 35);

    const TargetVector cls = encode(ls, TargetFormat::Classification);
    CHECK(cls.classes.size() == 27);
    CHECK(cls.headSizes == kExpectedHeadSizes);
    for (std::size_t i = 0; i < cls.classes.size(); ++i) {
        CHECK(cls.classes[i] >= 0);
        CHECK(cls.classes[i] < cls.headSizes[i]);
    }
}

TEST_CASE("reg2D writes the 2D coordinates of pattern 1 and 3 locations") {
    LabelSet ls = randomLabelSet(2);
    ls.motion.perPattern[0].p_u = 7;
    const TargetVector v = encode(ls, TargetFormat::Reg2D);
    CHECK(v.values[0] == 2.0); // block 7 -> (2, 3)
    CHECK(v.values[1] == 3.0);

    // Pattern-2 entries stay scalar: slots 6..9 of the motion part hold
    // p_u, o_u, p_v, o_v of pattern 2.
    CHECK(v.values[6] == double(ls.motion.perPattern[1].p_u));
}

TEST_CASE("collapsing reg2D reproduces reg1D") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const LabelSet ls = randomLabelSet(seed);
        const TargetVector r1 = encode(ls, TargetFormat::Reg1D);
        const TargetVector r2 = encode(ls, TargetFormat::Reg2D);
        CHECK(collapseReg2D(r2) == r1.values);
    }
}

TEST_CASE("encode is injective per format") {
    std::set<std::vector<double>> reg1d, reg2d;
    std::set<std::vector<int>> cls;
    std::set<std::vector<double>> seen;
    int distinct = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const LabelSet ls = randomLabelSet(seed);
        const auto r1 = encode(ls, TargetFormat::Reg1D).values;
        if (seen.contains(r1)) continue; // duplicate LabelSet draw
        seen.insert(r1);
        ++distinct;
        reg1d.insert(r1);
        reg2d.insert(encode(ls, TargetFormat::Reg2D).values);
        cls.insert(encode(ls, TargetFormat::Classification).classes);
    }
    CHECK(int(reg1d.size()) == distinct);
    CHECK(int(reg2d.size()) == distinct);
    CHECK(int(cls.size()) == distinct);
}

TEST_CASE("encode rejects out-of-range labels") {
    LabelSet ls = randomLabelSet(3);
    ls.motion.perPattern[1].p_u = 5; // pattern 2 has 4 blocks
    CHECK_THROWS_AS(encode(ls, TargetFormat::Reg1D), std::invalid_argument);

    LabelSet ls2 = randomLabelSet(4);
    ls2.motion.I_u = 16; // flowCount is 15
    CHECK_THROWS_AS(encode(ls2, TargetFormat::Classification), std::invalid_argument);
}

TEST_CASE("regression loss is zero at the target and counts single errors") {
    const LabelSet ls = randomLabelSet(5);
    const TargetVector target = encode(ls, TargetFormat::Reg1D);
    CHECK(regressionLoss(target, target, LossConfig{}) == 0.0);

    TargetVector pred = target;
    pred.values[2] += 3.0; // one motion entry off by 3
    CHECK(regressionLoss(pred, target, LossConfig{}) == doctest::Approx(3.0).epsilon(1e-12));

    TargetVector predA = target;
    predA.values[20] += 4.0; // one appearance entry off by 4, weighted 0.1
    CHECK(regressionLoss(predA, target, LossConfig{}) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("regression loss matches the direct two-norm formula") {
    SeededRng rng(88);
    for (int trial = 0; trial < 30; ++trial) {
        const LabelSet ls = randomLabelSet(std::uint64_t(trial) + 600);
        const TargetVector target = encode(ls, TargetFormat::Reg2D);
        TargetVector pred = target;
        for (double& v : pred.values) v += rng.nextUnit() * 4.0 - 2.0;

        double m = 0.0, a = 0.0;
        for (std::size_t i = 0; i < pred.values.size(); ++i) {
            const double d = pred.values[i] - target.values[i];
            (i < kReg2DMotionLength ? m : a) += d * d;
        }
        const double expected = 1.0 * std::sqrt(m) + 0.1 * std::sqrt(a);
        const double got = regressionLoss(pred, target, LossConfig{});
        CHECK(got == doctest::Approx(expected).epsilon(1e-9));
    }

    TargetVector r1 = encode(randomLabelSet(7), TargetFormat::Reg1D);
    TargetVector r2 = encode(randomLabelSet(7), TargetFormat::Reg2D);
    CHECK_THROWS_AS(regressionLoss(r1, r2, LossConfig{}), std::invalid_argument);
}

TEST_CASE("regression loss scales linearly in the lambdas") {
    const TargetVector target = encode(randomLabelSet(9), TargetFormat::Reg1D);
    TargetVector pred = target;
    pred.values[0] += 1.5;
    pred.values[26] += 2.5;
    const double base = regressionLoss(pred, target, LossConfig{1.0, 1.0});
    const double motionOnly = regressionLoss(pred, target, LossConfig{1.0, 0.0});
    const double appOnly = regressionLoss(pred, target, LossConfig{0.0, 1.0});
    CHECK(base == doctest::Approx(motionOnly + appOnly).epsilon(1e-12));
    CHECK(regressionLoss(pred, target, LossConfig{2.0, 3.0}) ==
          doctest::Approx(2.0 * motionOnly + 3.0 * appOnly).epsilon(1e-12));
}

namespace {

std::vector<std::vector<double>> perfectProbs(const TargetVector& target) {
    std::vector<std::vector<double>> probs;
    for (std::size_t h = 0; h < target.classes.size(); ++h) {
        std::vector<double> p(std::size_t(target.headSizes[h]), 0.0);
        p[std::size_t(target.classes[h])] = 1.0;
        probs.push_back(std::move(p));
    }
    return probs;
}

} // namespace

TEST_CASE("classification loss is zero for a perfect prediction") {
    const TargetVector target = encode(randomLabelSet(11), TargetFormat::Classification);
    CHECK(classificationLoss(perfectProbs(target), target, LossConfig{}) == 0.0);
}

TEST_CASE("one uniform 16-class head contributes log 16") {
    LabelSet ls = randomLabelSet(12);
    const TargetVector target = encode(ls, TargetFormat::Classification);
    auto probs = perfectProbs(target);
    probs[0].assign(16, 1.0 / 16.0); // the pattern-1 p_u head
    const double loss = classificationLoss(probs, target, LossConfig{});
    CHECK(loss == doctest::Approx(std::log(16.0)).epsilon(1e-9));
}

TEST_CASE("classification loss matches a per-head cross-entropy oracle") {
    SeededRng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const TargetVector target =
            encode(randomLabelSet(std::uint64_t(trial) + 100), TargetFormat::Classification);
        std::vector<std::vector<double>> probs;
        for (int h = 0; h < 27; ++h) {
            std::vector<double> p(std::size_t(target.headSizes[std::size_t(h)]));
            double sum = 0.0;
            for (double& x : p) {
                x = rng.nextUnit() + 1e-3;
                sum += x;
            }
            for (double& x : p) x /= sum;
            probs.push_back(std::move(p));
        }
        double m = 0.0, a = 0.0;
        for (int h = 0; h < 27; ++h) {
            const double p = probs[std::size_t(h)][std::size_t(target.classes[std::size_t(h)])];
            (h < 14 ? m : a) += -std::log(std::max(p, 1e-12));
        }
        const double got = classificationLoss(probs, target, LossConfig{});
        CHECK(got == doctest::Approx(1.0 * m + 0.1 * a).epsilon(1e-9));
    }
}

TEST_CASE("degenerate probabilities stay finite through the clamp") {
    const TargetVector target = encode(randomLabelSet(14), TargetFormat::Classification);
    auto probs = perfectProbs(target);
    // Send all mass away from the target class in head 4.
    const int head = 4;
    probs[head].assign(probs[head].size(), 0.0);
    probs[head][std::size_t((target.classes[head] + 1) % target.headSizes[head])] = 1.0;
    const double loss = classificationLoss(probs, target, LossConfig{});
    CHECK(std::isfinite(loss));
    CHECK(loss == doctest::Approx(-std::log(1e-12)).epsilon(1e-9));
}

TEST_CASE("malformed probability vectors name the offending head") {
    const TargetVector target = encode(randomLabelSet(15), TargetFormat::Classification);

    auto wrongSize = perfectProbs(target);
    wrongSize[6].push_back(0.0);
    CHECK_THROWS_WITH_AS(classificationLoss(wrongSize, target, LossConfig{}),
                         doctest::Contains("head 7"), std::invalid_argument);

    auto badSum = perfectProbs(target);
    badSum[2][0] += 0.5;
    CHECK_THROWS_WITH_AS(classificationLoss(badSum, target, LossConfig{}),
                         doctest::Contains("head 3"), std::invalid_argument);

    auto negative = perfectProbs(target);
    negative[9][0] = -0.25;
    negative[9][std::size_t(target.classes[9])] = 1.25;
    CHECK_THROWS_WITH_AS(classificationLoss(negative, target, LossConfig{}),
                         doctest::Contains("head 10"), std::invalid_argument);
}

TEST_CASE("loss defaults weigh motion 1.0 and appearance 0.1") {
    const LossConfig cfg;
    CHECK(cfg.lambdaM == 1.0);
    CHECK(cfg.lambdaA == 0.1);
}
