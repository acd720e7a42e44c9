#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "topocode/diagram_ops.hpp"
#include "topocode/errors.hpp"

using namespace topocode;

TEST_CASE("total_persistence sums finite distances") {
    const PersistenceDiagram d = testutil::diagram_from_pairs(0, {{0.0, 1.0}, {0.2, 0.5}});
    CHECK(total_persistence(d, 0) == doctest::Approx(1.3));
    CHECK(total_persistence(d, 1) == 0.0);
}

TEST_CASE("total_persistence excludes essential classes") {
    PersistenceDiagram d;
    d.group(0).essential.push_back({0.3, -1});
    CHECK(total_persistence(d, 0) == 0.0);
}

TEST_CASE("denoise at alpha 0 is the identity") {
    const PersistenceDiagram d = testutil::diagram_from_pairs(1, {{0.0, 1.0}, {0.4, 0.45}});
    CHECK(denoise(d, 0.0) == d);
}

TEST_CASE("denoise removes pairs strictly below the floor") {
    // persistences {1.0, 0.3}: floor = 0.3 * 1.3 = 0.39
    const PersistenceDiagram d = testutil::diagram_from_pairs(1, {{0.0, 1.0}, {0.1, 0.4}});
    const PersistenceDiagram out = denoise(d, 0.3);
    REQUIRE(out.group(1).finite.size() == 1);
    CHECK(out.group(1).finite[0].death == 1.0);
}

TEST_CASE("denoise floor can exceed every pair") {
    // persistences {0.6, 0.4}: alpha 1 gives floor 1.0, both removed
    const PersistenceDiagram d = testutil::diagram_from_pairs(0, {{0.0, 0.6}, {0.3, 0.7}});
    const PersistenceDiagram out = denoise(d, 1.0);
    CHECK(out.group(0).finite.empty());
}

TEST_CASE("denoise keeps essential classes and thresholds dimensions independently") {
    PersistenceDiagram d = testutil::diagram_from_pairs(0, {{0.0, 1.0}, {0.45, 0.5}});
    d.group(1).finite.push_back({0.0, 0.9, -1, -1});
    d.group(0).essential.push_back({0.0, -1});
    const PersistenceDiagram out = denoise(d, 0.3);
    CHECK(out.group(0).essential.size() == 1);
    CHECK(out.group(0).finite.size() == 1);  // 0.05 < 0.3 * 1.05
    CHECK(out.group(1).finite.size() == 1);  // its own total persistence
}

TEST_CASE("denoise applied twice equals denoise applied once") {
    // the second floor is computed from the already-reduced total persistence,
    // which can only shrink, so no further pairs can fall below it
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        PersistenceDiagram d = testutil::diagram_from_pairs(0, testutil::random_pairs(rng, 6));
        d.groups[1] = testutil::diagram_from_pairs(1, testutil::random_pairs(rng, 6)).groups[1];
        for (double alpha : {0.1, 0.3, 0.7, 1.0}) {
            const PersistenceDiagram once = denoise(d, alpha);
            CHECK(denoise(once, alpha) == once);
        }
    }
}

TEST_CASE("denoise never increases total persistence") {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const PersistenceDiagram d = testutil::diagram_from_pairs(1, testutil::random_pairs(rng, 8));
        for (double alpha : {0.0, 0.2, 0.5, 0.9}) {
            CHECK(total_persistence(denoise(d, alpha), 1) <= total_persistence(d, 1));
        }
    }
}

TEST_CASE("quantize endpoints are exact") {
    const PersistenceDiagram d = testutil::diagram_from_pairs(0, {{0.0, 1.0}});
    const QuantizedDiagram q = quantize(d);
    CHECK(q.group(0).finite[0].birth == 0);
    CHECK(q.group(0).finite[0].death == 255);
    const PersistenceDiagram back = dequantize(q);
    CHECK(back.group(0).finite[0].birth == 0.0);
    CHECK(back.group(0).finite[0].death == 1.0);
}

TEST_CASE("quantize rounding example") {
    const PersistenceDiagram d = testutil::diagram_from_pairs(0, {{0.5, 0.75}});
    const QuantizedDiagram q = quantize(d);
    CHECK(q.group(0).finite[0].birth == 128);
    CHECK(q.group(0).finite[0].death == 191);
    const PersistenceDiagram back = dequantize(q);
    CHECK(back.group(0).finite[0].birth == doctest::Approx(128.0 / 255.0));
    CHECK(back.group(0).finite[0].death == doctest::Approx(191.0 / 255.0));
}

TEST_CASE("collapsed pairs are dropped on dequantize") {
    const PersistenceDiagram d = testutil::diagram_from_pairs(0, {{0.501, 0.503}});
    const QuantizedDiagram q = quantize(d);
    CHECK(q.group(0).finite[0].birth == q.group(0).finite[0].death);
    CHECK(dequantize(q).group(0).finite.empty());
}

TEST_CASE("quantize rejects out-of-range coordinates") {
    const PersistenceDiagram d = testutil::diagram_from_pairs(0, {{-0.1, 0.5}});
    CHECK_THROWS_AS(quantize(d), ValueError);
}

TEST_CASE("round trip is exact on all 256 levels and within 1/510 everywhere") {
    for (int level = 0; level < 256; ++level) {
        const double v = level / 255.0;
        const PersistenceDiagram d = testutil::diagram_from_pairs(0, {{v, 1.0}});
        const PersistenceDiagram back = dequantize(quantize(d));
        if (level == 255) continue; // collapses against death = 1.0
        CHECK(back.group(0).finite[0].birth == v);
    }
    const double bound = 1.0 / 510.0 + 1e-12;
    for (int k = 0; k <= 1020; ++k) {
        const double v = k / 1020.0;
        PersistenceDiagram d;
        d.group(0).essential.push_back({v, -1});
        const PersistenceDiagram back = dequantize(quantize(d));
        CHECK(std::abs(back.group(0).essential[0].birth - v) <= bound);
    }
}
