#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "test_util.hpp"
#include "topocode/cubical.hpp"
#include "topocode/errors.hpp"
#include "topocode/persistence.hpp"

using namespace topocode;

TEST_CASE("normalize divides by the per-image maximum") {
    const GrayImage img = normalize({0, 128, 255, 64}, 2, 2);
    CHECK(img.pixels[0] == 0.0);
    CHECK(img.pixels[1] == doctest::Approx(128.0 / 255.0));
    CHECK(img.pixels[2] == 1.0);
    CHECK(img.pixels[3] == doctest::Approx(64.0 / 255.0));
}

TEST_CASE("normalize passes an all-zero grid through") {
    const GrayImage img = normalize({0, 0, 0, 0}, 2, 2);
    for (double v : img.pixels) CHECK(v == 0.0);
}

TEST_CASE("normalize fixed_255 divides by 255") {
    const GrayImage img = normalize({200, 100, 0, 50}, 2, 2, NormalizeMode::fixed_255);
    CHECK(img.pixels[0] == doctest::Approx(200.0 / 255.0));
}

TEST_CASE("normalize rejects negative intensities") {
    CHECK_THROWS_AS(normalize({1, -2, 3, 4}, 2, 2), ValueError);
}

TEST_CASE("build_complex rejects thin images") {
    GrayImage img;
    img.width = 5;
    img.height = 1;
    img.pixels.assign(5, 0.5);
    CHECK_THROWS_AS(build_complex(img, Orientation::sublevel), DimensionError);
}

TEST_CASE("constant 2x2 image: all nine cells carry the constant") {
    const GrayImage img = testutil::image_from({{0.5, 0.5}, {0.5, 0.5}});
    const CubicalComplex cx = build_complex(img, Orientation::sublevel);
    CHECK(cx.cell_count() == 25);
    int squares = 0, edges = 0, vertices = 0;
    for (const Cell& c : cx.cells) {
        CHECK(c.value == 0.5);
        if (c.dim == 2) ++squares;
        else if (c.dim == 1) ++edges;
        else ++vertices;
    }
    CHECK(squares == 4);
    CHECK(edges == 12);
    CHECK(vertices == 9);
}

TEST_CASE("2x2 face minimization by hand") {
    // pixel 0 = 0.1, all others 0.9: every face of pixel 0 carries 0.1 with
    // provenance 0 (including the edges and vertices shared with neighbors)
    const GrayImage img = testutil::image_from({{0.1, 0.9}, {0.9, 0.9}});
    const CubicalComplex cx = build_complex(img, Orientation::sublevel);

    auto cell = [&](int y, int x) { return cx.cells[static_cast<std::size_t>(cx.cell_index(y, x))]; };

    // the corner vertex and the two boundary edges touching only pixel 0
    CHECK(cell(0, 0).value == 0.1);
    CHECK(cell(0, 0).provenance == 0);
    CHECK(cell(0, 1).value == 0.1);
    CHECK(cell(0, 1).provenance == 0);
    CHECK(cell(1, 0).value == 0.1);
    CHECK(cell(1, 0).provenance == 0);
    // shared faces also minimize to pixel 0
    CHECK(cell(1, 2).value == 0.1); // edge shared with pixel 1
    CHECK(cell(1, 2).provenance == 0);
    CHECK(cell(2, 1).value == 0.1); // edge shared with pixel 2
    CHECK(cell(2, 2).value == 0.1); // center vertex, shared by all four
    CHECK(cell(2, 2).provenance == 0);
    // faces not touching pixel 0 carry 0.9
    CHECK(cell(3, 4).value == 0.9);
    CHECK(cell(4, 4).value == 0.9);
    CHECK(cell(3, 3).value == 0.9);
    // the full complex of a rectangle has Euler characteristic 1
    CHECK(cx.euler_characteristic(1.0) == 1);
}

TEST_CASE("filtration validity: faces never exceed cofaces") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const GrayImage img = testutil::random_distinct_image(6, 6, rng);
        const CubicalComplex cx = build_complex(img, Orientation::sublevel);
        for (int c = 0; c < cx.cell_count(); ++c) {
            int count = 0;
            const auto faces = cx.boundary(c, count);
            for (int k = 0; k < count; ++k)
                CHECK(cx.cells[static_cast<std::size_t>(faces[k])].value <= cx.cells[static_cast<std::size_t>(c)].value);
        }
    }
}

TEST_CASE("compute_persistence rejects invalid filtrations") {
    const GrayImage img = testutil::image_from({{0.2, 0.4}, {0.6, 0.8}});
    CubicalComplex cx = build_complex(img, Orientation::sublevel);
    cx.cells[0].value = 0.9; // corner vertex above its cofaces
    CHECK_THROWS_AS(compute_persistence(cx), FiltrationError);
}

TEST_CASE("constant image: one essential H0, empty H1") {
    const GrayImage img = testutil::image_from({{0.25, 0.25}, {0.25, 0.25}});
    const PersistenceDiagram d = diagram_of(img, Orientation::sublevel);
    CHECK(d.group(0).finite.empty());
    REQUIRE(d.group(0).essential.size() == 1);
    CHECK(d.group(0).essential[0].birth == 0.25);
    CHECK(d.group(1).finite.empty());
    CHECK(d.group(1).essential.empty());
}

TEST_CASE("two dark blobs merge at the background level") {
    // 6x6, two separated dark blobs on a bright background
    GrayImage img;
    img.width = 6;
    img.height = 6;
    img.pixels.assign(36, 0.9);
    img.at(1, 1) = 0.1;
    img.at(1, 2) = 0.12;
    img.at(4, 3) = 0.2;
    img.at(4, 4) = 0.22;
    const PersistenceDiagram d = diagram_of(img, Orientation::sublevel);

    REQUIRE(d.group(0).essential.size() == 1);
    CHECK(d.group(0).essential[0].birth == 0.1);
    REQUIRE(d.group(0).finite.size() == 1);
    CHECK(d.group(0).finite[0].birth == 0.2);
    CHECK(d.group(0).finite[0].death == 0.9);

    const oracle::H0Barcode barcode = oracle::h0_union_find(img, Orientation::sublevel);
    REQUIRE(barcode.finite.size() == 1);
    CHECK(barcode.finite[0].birth == 0.2);
    CHECK(barcode.finite[0].death == 0.9);
    CHECK(barcode.essential_birth == 0.1);
}

TEST_CASE("9x9 annulus: one H1 pair, verified against brute-force Betti numbers") {
    GrayImage img;
    img.width = 9;
    img.height = 9;
    img.pixels.assign(81, 1.0);
    // ring of radius ~3 around the center
    for (int r = 0; r < 9; ++r) {
        for (int c = 0; c < 9; ++c) {
            const int dr = r - 4, dc = c - 4;
            const int d2 = dr * dr + dc * dc;
            if (d2 >= 4 && d2 <= 10) img.at(r, c) = 0.1;
        }
    }
    const PersistenceDiagram d = diagram_of(img, Orientation::sublevel);
    REQUIRE(d.group(1).finite.size() == 1);
    CHECK(d.group(1).finite[0].birth == 0.1);
    CHECK(d.group(1).finite[0].death == 1.0);
    CHECK(d.group(1).essential.empty());

    const oracle::Betti at_ring = oracle::betti_bruteforce(img, Orientation::sublevel, 0.1);
    CHECK(at_ring.b0 == 1);
    CHECK(at_ring.b1 == 1);
    const oracle::Betti at_top = oracle::betti_bruteforce(img, Orientation::sublevel, 1.0);
    CHECK(at_top.b0 == 1);
    CHECK(at_top.b1 == 0);
}

TEST_CASE("H0 barcode equals the union-find sweep on random images") {
    Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const GrayImage img = testutil::random_distinct_image(6, 6, rng);
        const PersistenceDiagram d = diagram_of(img, Orientation::sublevel);
        const oracle::H0Barcode barcode = oracle::h0_union_find(img, Orientation::sublevel);

        REQUIRE(d.group(0).finite.size() == barcode.finite.size());
        for (std::size_t i = 0; i < barcode.finite.size(); ++i) {
            CHECK(d.group(0).finite[i].birth == barcode.finite[i].birth);
            CHECK(d.group(0).finite[i].death == barcode.finite[i].death);
        }
        REQUIRE(d.group(0).essential.size() == 1);
        CHECK(d.group(0).essential[0].birth == barcode.essential_birth);
        CHECK(d.group(1).essential.empty());
    }
}

TEST_CASE("diagram Betti counts satisfy the Euler identity at every threshold") {
    Rng rng(202);
    for (int trial = 0; trial < 10; ++trial) {
        const GrayImage img = testutil::random_distinct_image(5, 5, rng);
        const CubicalComplex cx = build_complex(img, Orientation::sublevel);
        const PersistenceDiagram d = compute_persistence(cx);
        for (double t : img.pixels) {
            int b0 = 0, b1 = 0;
            for (const FinitePair& pair : d.group(0).finite)
                if (pair.birth <= t && pair.death > t) ++b0;
            for (const EssentialClass& e : d.group(0).essential)
                if (e.birth <= t) ++b0;
            for (const FinitePair& pair : d.group(1).finite)
                if (pair.birth <= t && pair.death > t) ++b1;
            CHECK(b0 - b1 == cx.euler_characteristic(t));

            const oracle::Betti betti = oracle::betti_bruteforce(img, Orientation::sublevel, t);
            CHECK(b0 == betti.b0);
            CHECK(b1 == betti.b1);
        }
    }
}

TEST_CASE("provenance permanence: diagram values are exact pixel values") {
    Rng rng(303);
    for (int trial = 0; trial < 20; ++trial) {
        const GrayImage img = testutil::random_distinct_image(7, 5, rng);
        for (Orientation o : {Orientation::sublevel, Orientation::superlevel}) {
            const PersistenceDiagram d = diagram_of(img, o);
            for (int h = 0; h <= 1; ++h) {
                for (const FinitePair& pair : d.group(h).finite) {
                    REQUIRE(pair.birth_pixel != kNoPixel);
                    REQUIRE(pair.death_pixel != kNoPixel);
                    CHECK(filtration_value(img.pixels[static_cast<std::size_t>(pair.birth_pixel)], o) == pair.birth);
                    CHECK(filtration_value(img.pixels[static_cast<std::size_t>(pair.death_pixel)], o) == pair.death);
                }
                for (const EssentialClass& e : d.group(h).essential)
                    CHECK(filtration_value(img.pixels[static_cast<std::size_t>(e.birth_pixel)], o) == e.birth);
            }
        }
    }
}

TEST_CASE("adding a constant shifts every birth and death exactly") {
    Rng rng(404);
    const GrayImage img = testutil::random_distinct_image(6, 6, rng, 0.0, 0.7);
    const double c = 0.25;
    GrayImage shifted = img;
    for (double& v : shifted.pixels) v += c;

    const PersistenceDiagram d0 = diagram_of(img, Orientation::sublevel);
    const PersistenceDiagram d1 = diagram_of(shifted, Orientation::sublevel);

    REQUIRE(d0.group(0).finite.size() == d1.group(0).finite.size());
    REQUIRE(d0.group(1).finite.size() == d1.group(1).finite.size());
    for (int h = 0; h <= 1; ++h) {
        for (std::size_t i = 0; i < d0.group(h).finite.size(); ++i) {
            CHECK(d1.group(h).finite[i].birth == d0.group(h).finite[i].birth + c);
            CHECK(d1.group(h).finite[i].death == d0.group(h).finite[i].death + c);
        }
    }
    CHECK(d1.group(0).essential[0].birth == d0.group(0).essential[0].birth + c);
}

TEST_CASE("superlevel loop count matches the hand count for glyph masks") {
    // binary ring: exactly one bright loop
    GrayImage ring;
    ring.width = 11;
    ring.height = 11;
    ring.pixels.assign(121, 0.0);
    for (int r = 0; r < 11; ++r) {
        for (int c = 0; c < 11; ++c) {
            const int dr = r - 5, dc = c - 5;
            const int d2 = dr * dr + dc * dc;
            if (d2 >= 6 && d2 <= 14) ring.at(r, c) = 1.0;
        }
    }
    const PersistenceDiagram d = diagram_of(ring, Orientation::superlevel);
    REQUIRE(d.group(1).finite.size() == 1);
    CHECK(d.group(1).finite[0].birth == 0.0);
    CHECK(d.group(1).finite[0].death == 1.0);

    // two stacked rings: exactly two loops
    GrayImage eight;
    eight.width = 9;
    eight.height = 17;
    eight.pixels.assign(9 * 17, 0.0);
    for (int r = 0; r < 17; ++r) {
        for (int c = 0; c < 9; ++c) {
            for (int center : {4, 12}) {
                const int dr = r - center, dc = c - 4;
                const int d2 = dr * dr + dc * dc;
                if (d2 >= 4 && d2 <= 10) eight.at(r, c) = 1.0;
            }
        }
    }
    const PersistenceDiagram d8 = diagram_of(eight, Orientation::superlevel);
    CHECK(d8.group(1).finite.size() == 2);
}

TEST_CASE("crop_interior") {
    Rng rng(505);
    const GrayImage img = testutil::random_distinct_image(28, 28, rng);
    const GrayImage cropped = crop_interior(img, 1);
    CHECK(cropped.width == 26);
    CHECK(cropped.height == 26);
    CHECK(cropped.at(0, 0) == img.at(1, 1));
    CHECK(crop_interior(img, 0) == img);
    CHECK_THROWS_AS(crop_interior(img, 14), DimensionError);
}
