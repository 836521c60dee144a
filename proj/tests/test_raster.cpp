#include "support/oracles.hpp"

#include "linea/error.hpp"
#include "linea/image_io.hpp"
#include "linea/raster.hpp"
#include "linea/serial.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>

using namespace linea;

TEST_CASE("GrayImage rejects out-of-range data")
{
    CHECK_THROWS_AS(GrayImage(2, 1, std::vector<double>{0.5, 1.5}), ArgumentError);
    CHECK_THROWS_AS(GrayImage(2, 2, std::vector<double>{0.5}), ArgumentError);
    GrayImage img(2, 2);
    CHECK_THROWS_AS(img.set(0, 0, -0.1), ArgumentError);
}

TEST_CASE("binarize marks pixels strictly darker than the threshold")
{
    GrayImage img(4, 1, std::vector<double>{0.0, 0.94, 0.95, 1.0});
    const LineMask m = binarize(img, 0.95);
    CHECK(m.at(0, 0));
    CHECK(m.at(1, 0));
    CHECK_FALSE(m.at(2, 0));
    CHECK_FALSE(m.at(3, 0));

    CHECK(effective_count(binarize(GrayImage(5, 5, 1.0))) == 0);
    CHECK_FALSE(binarize(GrayImage(1, 1, 1.0), 1.0).at(0, 0));
    CHECK_THROWS_AS(binarize(img, 0.0), ArgumentError);
    CHECK_THROWS_AS(binarize(img, 1.5), ArgumentError);
}

TEST_CASE("binarize inverts to_image for any mask")
{
    testing::Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = testing::random_mask(rng, testing::uniform_int(rng, 1, 40),
                                            testing::uniform_int(rng, 1, 40), 0.3);
        CHECK(binarize(to_image(m)) == m);
    }
}

TEST_CASE("effective_count")
{
    CHECK(effective_count(LineMask(4, 4)) == 0);
    CHECK(effective_count(LineMask(3, 3, true)) == 9);
    testing::Rng rng(3);
    const auto m = testing::random_mask(rng, 37, 23, 0.2);
    std::size_t scan = 0;
    for (int y = 0; y < 23; ++y)
        for (int x = 0; x < 37; ++x)
            scan += m.at(x, y) ? 1 : 0;
    CHECK(effective_count(m) == scan);
}

TEST_CASE("distance transform of a single centre pixel")
{
    LineMask m(3, 3);
    m.set(1, 1, true);
    const auto d = distance_transform(m);
    CHECK(d.at(1, 1) == 0.0);
    CHECK(d.at(0, 1) == 1.0);
    CHECK(d.at(1, 2) == 1.0);
    CHECK(d.at(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(d.at(2, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("empty mask gives the diameter everywhere")
{
    const LineMask m(10, 10);
    for (const auto& d : {distance_transform(m), distance_transform_bruteforce(m)})
        for (double v : d.values())
            CHECK(v == doctest::Approx(std::sqrt(200.0)).epsilon(1e-15));
}

TEST_CASE("brute-force transform guards its size")
{
    CHECK_NOTHROW(distance_transform_bruteforce(LineMask(100, 100)));
    CHECK_THROWS_AS(distance_transform_bruteforce(LineMask(101, 100)), ArgumentError);
}

TEST_CASE("fast transform equals brute force on random masks")
{
    testing::Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const int w = testing::uniform_int(rng, 1, 64);
        const int h = testing::uniform_int(rng, 1, std::min(64, 10000 / w));
        const double density = testing::uniform(rng, 0.0, 0.2);
        const auto m = testing::random_mask(rng, w, h, density);
        const auto fast = distance_transform(m);
        const auto slow = distance_transform_bruteforce(m);
        for (std::size_t i = 0; i < m.dims().area(); ++i)
            REQUIRE(std::abs(fast.values()[i] - slow.values()[i]) <= 1e-9);
    }
}

TEST_CASE("brute force agrees with the test-local nearest-ink search")
{
    testing::Rng rng(5);
    const auto m = testing::random_mask(rng, 13, 9, 0.1);
    const auto d = distance_transform_bruteforce(m);
    for (int y = 0; y < 9; ++y)
        for (int x = 0; x < 13; ++x)
            CHECK(d.at(x, y) == doctest::Approx(testing::nearest_ink(m, x, y)).epsilon(1e-15));
}

TEST_CASE("distance transform zero set and bound")
{
    testing::Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        auto m = testing::random_mask(rng, 50, 30, 0.05);
        m.set(testing::uniform_int(rng, 0, 49), testing::uniform_int(rng, 0, 29), true);
        const auto d = distance_transform(m);
        const double diam = diameter(m.dims());
        for (int y = 0; y < 30; ++y)
            for (int x = 0; x < 50; ++x) {
                CHECK((d.at(x, y) == 0.0) == m.at(x, y));
                CHECK(d.at(x, y) <= diam);
            }
    }
}

TEST_CASE("adding an effective pixel never increases a distance")
{
    testing::Rng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        auto m = testing::random_mask(rng, 40, 40, 0.02);
        const auto before = distance_transform(m);
        m.set(testing::uniform_int(rng, 0, 39), testing::uniform_int(rng, 0, 39), true);
        const auto after = distance_transform(m);
        for (std::size_t i = 0; i < m.dims().area(); ++i)
            CHECK(after.values()[i] <= before.values()[i]);
    }
}

TEST_CASE("parallel and serial transforms are bit-identical")
{
    testing::Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = testing::random_mask(rng, testing::uniform_int(rng, 1, 300),
                                            testing::uniform_int(rng, 1, 300), 0.01);
        const auto a = distance_transform(m);
        const auto b = serial::distance_transform(m);
        CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
    }
}

TEST_CASE("PNG and PGM round trips")
{
    const auto dir = testing::scratch_dir("raster_io");
    std::vector<double> v;
    for (int i = 0; i < 256; ++i)
        v.push_back(i / 255.0);
    const GrayImage ramp(16, 16, v);
    for (const char* name : {"ramp.png", "ramp.pgm"}) {
        save_image(ramp, dir / name);
        const GrayImage back = load_image(dir / name);
        REQUIRE(back.dims() == ramp.dims());
        for (std::size_t i = 0; i < v.size(); ++i)
            CHECK(back.pixels()[i] == v[i]);
    }
    CHECK(load_image(dir / "ramp.png").at(0, 8) == doctest::Approx(128.0 / 255.0).epsilon(1e-15));

    save_png(GrayImage(3, 2, 1.0), dir / "white.png");
    const auto white = load_image(dir / "white.png");
    for (double p : white.pixels())
        CHECK(p == 1.0);
    save_png(GrayImage(3, 2, 0.0), dir / "black.png");
    const auto black = load_image(dir / "black.png");
    for (double p : black.pixels())
        CHECK(p == 0.0);
}

TEST_CASE("PGM with a small maxval scales by maxval")
{
    const auto dir = testing::scratch_dir("raster_pgm");
    {
        std::ofstream out(dir / "m.pgm", std::ios::binary);
        out << "P5\n# comment\n2 1\n15\n";
        out.put(0);
        out.put(15);
    }
    const auto img = load_image(dir / "m.pgm");
    CHECK(img.at(0, 0) == 0.0);
    CHECK(img.at(1, 0) == 1.0);
}

TEST_CASE("load_image errors carry the path")
{
    const auto dir = testing::scratch_dir("raster_err");
    try {
        load_image(dir / "missing.png");
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("missing.png") != std::string::npos);
    }
    {
        std::ofstream out(dir / "junk.png", std::ios::binary);
        out << "not an image";
    }
    CHECK_THROWS_AS(load_image(dir / "junk.png"), IoError);
}

TEST_CASE("save_mask writes effective pixels white")
{
    const auto dir = testing::scratch_dir("raster_mask");
    LineMask m(2, 1);
    m.set(0, 0, true);
    save_mask(m, dir / "m.png");
    const auto img = load_image(dir / "m.png");
    CHECK(img.at(0, 0) == 1.0);
    CHECK(img.at(1, 0) == 0.0);
}
