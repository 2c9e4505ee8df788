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
#include <cstring>
#include <fstream>

#include "support/test_utils.hpp"
#include "vstats/flow.hpp"

using namespace vstats;
using namespace vstats::testing;

TEST_CASE("identical frames give near-zero flow") {
    const Frame a = texturedFrame(48, 48, 3);
    const FlowField f = estimateFlow(a, a, FlowConfig{});
    std::vector<float> mags;
    for (std::size_t i = 0; i < f.u.size(); ++i)
        mags.push_back(float(std::hypot(f.u[i], f.v[i])));
    CHECK(medianOf(mags) <= 0.1);
}

TEST_CASE("integer circular shifts are recovered on textured images") {
    for (int shift : {1, 2, 3}) {
        const Frame a = texturedFrame(64, 64, 17);
        const Frame b = circularShiftX(a, shift);
        const FlowField f = estimateFlow(a, b, FlowConfig{});
        const int border = 2 * shift;
        std::vector<float> us, vs;
        for (int y = border; y < 64 - border; ++y)
            for (int x = border; x < 64 - border; ++x) {
                us.push_back(f.u[f.at(x, y)]);
                vs.push_back(f.v[f.at(x, y)]);
            }
        CHECK(std::abs(medianOf(us) - shift) <= 0.5);
        CHECK(std::abs(medianOf(vs)) <= 0.5);
    }
}

TEST_CASE("constant frames give finite flow") {
    Frame a(32, 32), b(32, 32);
    a.fill({80, 80, 80});
    b.fill({80, 80, 80});
    const FlowField f = estimateFlow(a, b, FlowConfig{});
    for (std::size_t i = 0; i < f.u.size(); ++i) {
        CHECK(std::isfinite(f.u[i]));
        CHECK(std::isfinite(f.v[i]));
    }
}

TEST_CASE("estimateFlow is bitwise deterministic") {
    const Frame a = texturedFrame(40, 36, 5);
    const Frame b = circularShiftX(a, 2);
    const FlowField f1 = estimateFlow(a, b, FlowConfig{});
    const FlowField f2 = estimateFlow(a, b, FlowConfig{});
    CHECK(f1 == f2);
}

TEST_CASE("estimateFlow contract errors") {
    const Frame a = texturedFrame(32, 32, 1);
    const Frame b = texturedFrame(16, 32, 1);
    CHECK_THROWS_AS(estimateFlow(a, b, FlowConfig{}), std::invalid_argument);

    const Frame tiny = texturedFrame(8, 8, 2);
    CHECK_THROWS_WITH_AS(estimateFlow(tiny, tiny, FlowConfig{}),
                         doctest::Contains("pyramid underflow"), std::invalid_argument);
    FlowConfig shallow;
    shallow.pyramidLevels = 1;
    CHECK_NOTHROW(estimateFlow(tiny, tiny, shallow));

    FlowConfig bad;
    bad.pyramidScale = 1.0;
    CHECK_THROWS_AS(estimateFlow(a, a, bad), std::invalid_argument);
}

TEST_CASE("clipFlows yields N-1 fields in order") {
    Clip clip;
    for (int i = 0; i < 16; ++i) clip.frames.push_back(texturedFrame(32, 32, 50));

    FlowConfig cfg;
    cfg.pyramidLevels = 2;
    cfg.iterationsPerLevel = 10;
    const auto flows = clipFlows(clip, cfg);
    CHECK(flows.size() == 15);

    // Static clip: all fields near zero.
    for (const FlowField& f : flows) {
        std::vector<float> mags;
        for (std::size_t i = 0; i < f.u.size(); ++i)
            mags.push_back(float(std::hypot(f.u[i], f.v[i])));
        CHECK(medianOf(mags) <= 0.1);
    }

    Clip pair;
    pair.frames.push_back(texturedFrame(32, 32, 51));
    pair.frames.push_back(texturedFrame(32, 32, 52));
    CHECK(clipFlows(pair, cfg).size() == 1);

    Clip single;
    single.frames.push_back(texturedFrame(32, 32, 53));
    CHECK_THROWS_AS(clipFlows(single, cfg), std::invalid_argument);
}

TEST_CASE("flo format writes the documented byte layout") {
    TempDir tmp("flo_layout");
    FlowField f(2, 1);
    f.u = {1.0f, 2.0f};
    f.v = {3.0f, 4.0f};
    const auto path = tmp.path() / "tiny.flo";
    writeFlo(f, path);

    std::ifstream in(path, std::ios::binary);
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    REQUIRE(bytes.size() == 28);
    CHECK(std::memcmp(bytes.data(), "PIEH", 4) == 0);
    std::int32_t w = 0, h = 0;
    std::memcpy(&w, bytes.data() + 4, 4);
    std::memcpy(&h, bytes.data() + 8, 4);
    CHECK(w == 2);
    CHECK(h == 1);
    float payload[4];
    std::memcpy(payload, bytes.data() + 12, 16);
    CHECK(payload[0] == 1.0f); // u(0,0)
    CHECK(payload[1] == 3.0f); // v(0,0)
    CHECK(payload[2] == 2.0f); // u(1,0)
    CHECK(payload[3] == 4.0f); // v(1,0)
}

TEST_CASE("flo round trip is bit exact") {
    TempDir tmp("flo_rt");
    const FlowField f = randomFlow(64, 48, 23, 100.0);
    const auto path = tmp.path() / "field.flo";
    writeFlo(f, path);
    CHECK(readFlo(path) == f);
}

TEST_CASE("flo rejects bad magic and truncation with byte offsets") {
    TempDir tmp("flo_bad");

    const auto badMagic = tmp.path() / "bad.flo";
    std::ofstream(badMagic, std::ios::binary) << "XXXX1234567890123456";
    CHECK_THROWS_WITH_AS(readFlo(badMagic), doctest::Contains("bad magic"), std::runtime_error);
    CHECK_THROWS_WITH_AS(readFlo(badMagic), doctest::Contains("byte 0"), std::runtime_error);

    const auto truncated = tmp.path() / "short.flo";
    {
        FlowField f(4, 4);
        writeFlo(f, truncated);
        std::filesystem::resize_file(truncated, 40); // cut inside the payload
    }
    CHECK_THROWS_WITH_AS(readFlo(truncated), doctest::Contains("truncated payload"),
                         std::runtime_error);
}
