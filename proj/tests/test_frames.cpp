// SPDX-License-Identifier: Apache-2.0
// Detector frames: synthesis, blob counting, stream analysis, PGM I/O.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <vector>

#include "photostat/frames.hpp"
#include "photostat/rng.hpp"

using namespace photostat;

namespace {

Frame blank(int w, int h) {
    Frame f;
    f.width = w;
    f.height = h;
    f.pixels.assign(static_cast<std::size_t>(w) * h, 0);
    return f;
}

void fill_rect(Frame& f, int x0, int y0, int x1, int y1, std::uint16_t v) {
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            f.pixels[static_cast<std::size_t>(y) * f.width + x] = v;
        }
    }
}

SpotModel quiet_model() {
    SpotModel m;
    m.noise_sigma = 0.0;
    m.threshold = 1000.0;
    m.min_area_px = 4;
    return m;
}

std::string temp_path(const char* name) {
    return std::string("/tmp/photostat_test_") + name;
}

}  // namespace

TEST_CASE("spot model validation") {
    SpotModel m;
    CHECK_NOTHROW(m.validate());
    m.threshold = 4.9 * m.noise_sigma;
    CHECK_THROWS_AS(m.validate(), std::domain_error);
    m = SpotModel{};
    m.sigma_px = 0.0;
    CHECK_THROWS_AS(m.validate(), std::domain_error);
    m = SpotModel{};
    m.min_area_px = 0;
    CHECK_THROWS_AS(m.validate(), std::domain_error);
    m = SpotModel{};
    m.amplitude_max = m.amplitude_min - 1.0;
    CHECK_THROWS_AS(m.validate(), std::domain_error);
}

TEST_CASE("hand-built frames count as expected") {
    const SpotModel m = quiet_model();

    SUBCASE("blank frame has no blobs") {
        CHECK(count_blobs(blank(64, 64), m) == 0);
    }

    SUBCASE("one bright square") {
        Frame f = blank(64, 64);
        fill_rect(f, 10, 10, 12, 12, 5000);
        CHECK(count_blobs(f, m) == 1);
    }

    SUBCASE("area below min_area_px is ignored") {
        Frame f = blank(64, 64);
        fill_rect(f, 10, 10, 12, 10, 5000);  // 3 pixels < min_area 4
        CHECK(count_blobs(f, m) == 0);
        fill_rect(f, 20, 20, 21, 21, 5000);  // 4 pixels passes
        CHECK(count_blobs(f, m) == 1);
    }

    SUBCASE("diagonal touch merges under 8-connectivity") {
        Frame f = blank(64, 64);
        fill_rect(f, 10, 10, 11, 11, 5000);
        fill_rect(f, 12, 12, 13, 13, 5000);  // corner contact at (11,11)-(12,12)
        CHECK(count_blobs(f, m) == 1);
    }

    SUBCASE("separated squares stay distinct") {
        Frame f = blank(64, 64);
        fill_rect(f, 5, 5, 7, 7, 5000);
        fill_rect(f, 30, 30, 32, 32, 5000);
        fill_rect(f, 50, 8, 52, 10, 5000);
        CHECK(count_blobs(f, m) == 3);
    }

    SUBCASE("threshold is inclusive") {
        Frame f = blank(32, 32);
        fill_rect(f, 4, 4, 6, 6, 1000);  // exactly at threshold
        CHECK(count_blobs(f, m) == 1);
        fill_rect(f, 4, 4, 6, 6, 999);
        CHECK(count_blobs(f, m) == 0);
    }
}

TEST_CASE("generated frames: empty, exact counts, determinism") {
    SpotModel model;  // defaults: sigma 2, amplitudes 20000..40000, noise 200
    FrameGeometry geom;
    geom.min_separation_px = 24.0;

    SUBCASE("count zero gives a noise-only frame with no blobs") {
        Rng rng(12);
        const Frame f = generate_frame(0, model, geom, rng);
        CHECK(count_blobs(f, model) == 0);
    }

    SUBCASE("ten well-separated spots count exactly") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Rng rng = derive_rng(99, 1, seed);
            const Frame f = generate_frame(10, model, geom, rng);
            CHECK(count_blobs(f, model) == 10);
        }
    }

    SUBCASE("same seed, same frame") {
        Rng r1(5), r2(5);
        const Frame a = generate_frame(7, model, geom, r1);
        const Frame b = generate_frame(7, model, geom, r2);
        CHECK(a.pixels == b.pixels);
    }

    SUBCASE("impossible separation fails loudly") {
        FrameGeometry tight;
        tight.width = 64;
        tight.height = 64;
        tight.min_separation_px = 200.0;
        Rng rng(3);
        CHECK_THROWS_AS(generate_frame(3, model, tight, rng),
                        std::runtime_error);
    }
}

TEST_CASE("crowding merges blobs, never splits them") {
    SpotModel model;
    FrameGeometry geom;  // no separation constraint
    double prev_fraction = 1.1;
    for (int k : {50, 150, 300}) {
        double mean_fraction = 0.0;
        const int trials = 5;
        for (int t = 0; t < trials; ++t) {
            Rng rng = derive_rng(2024, static_cast<std::uint64_t>(k),
                                static_cast<std::uint64_t>(t));
            const Frame f = generate_frame(k, model, geom, rng);
            const int counted = count_blobs(f, model);
            CHECK(counted <= k);
            CHECK(counted > 0);
            mean_fraction += static_cast<double>(counted) / k;
        }
        mean_fraction /= trials;
        CHECK(mean_fraction < prev_fraction);
        prev_fraction = mean_fraction;
    }
}

TEST_CASE("frame stream analysis") {
    SpotModel model;
    FrameGeometry geom;
    geom.min_separation_px = 30.0;
    std::vector<Frame> frames;
    for (int i = 0; i < 24; ++i) {
        Rng rng = derive_rng(7, 0, static_cast<std::uint64_t>(i));
        Frame f = generate_frame(i % 5, model, geom, rng);
        f.pulse_index = i;
        frames.push_back(std::move(f));
    }

    SUBCASE("histogram reflects the planted counts") {
        const auto result = analyze_frame_stream(frames, model);
        CHECK(result.skipped.empty());
        CHECK(result.histogram.total_pulses == 24);
        // Counts cycle 0..4 with well-separated spots, so each count
        // appears at least its share of times.
        for (int k = 0; k < 5; ++k) {
            CHECK(result.histogram.counts.count(k) == 1);
        }
    }

    SUBCASE("order does not matter") {
        auto shuffled = frames;
        std::reverse(shuffled.begin(), shuffled.end());
        const auto a = analyze_frame_stream(frames, model);
        const auto b = analyze_frame_stream(shuffled, model);
        CHECK(a.histogram.counts == b.histogram.counts);
    }

    SUBCASE("invalid frames are skipped and reported") {
        auto damaged = frames;
        damaged[3].pixels.resize(10);  // inconsistent with width * height
        damaged[3].pulse_index = 3;
        damaged[17].width = 0;
        damaged[17].pulse_index = 17;
        const auto result = analyze_frame_stream(damaged, model);
        REQUIRE(result.skipped.size() == 2);
        CHECK(result.skipped[0] == 3);
        CHECK(result.skipped[1] == 17);
        CHECK(result.histogram.total_pulses == 22);
    }

    SUBCASE("serial equals parallel") {
#ifdef _OPENMP
        omp_set_num_threads(4);
#endif
        const auto par = analyze_frame_stream(frames, model);
        const auto ser = analyze_frame_stream_serial(frames, model);
        CHECK(par.histogram.counts == ser.histogram.counts);
        CHECK(par.skipped == ser.skipped);
    }

    SUBCASE("empty stream is an error") {
        CHECK_THROWS_AS(analyze_frame_stream({}, model), std::domain_error);
    }
}

TEST_CASE("pgm round trip preserves every pixel") {
    Rng rng(31337);
    Frame f = blank(37, 21);
    for (auto& p : f.pixels) {
        p = static_cast<std::uint16_t>(rng.next() & 0xFFFF);
    }
    const std::string path = temp_path("roundtrip.pgm");
    write_pgm(path, f);
    const Frame g = read_pgm(path);
    CHECK(g.width == f.width);
    CHECK(g.height == f.height);
    CHECK(g.pixels == f.pixels);
    std::remove(path.c_str());
}

TEST_CASE("pgm reader rejects malformed input") {
    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_pgm("/tmp/photostat_no_such_file.pgm"),
                        std::runtime_error);
    }
    SUBCASE("wrong magic") {
        const std::string path = temp_path("bad_magic.pgm");
        std::ofstream(path) << "P2\n4 4\n65535\n";
        CHECK_THROWS_AS(read_pgm(path), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("wrong maxval") {
        const std::string path = temp_path("bad_maxval.pgm");
        std::ofstream(path, std::ios::binary) << "P5\n2 2\n255\nxxxxxxxx";
        CHECK_THROWS_AS(read_pgm(path), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("truncated pixel data") {
        const std::string path = temp_path("short.pgm");
        std::ofstream(path, std::ios::binary) << "P5\n4 4\n65535\nxx";
        CHECK_THROWS_AS(read_pgm(path), std::runtime_error);
        std::remove(path.c_str());
    }
    SUBCASE("comments in the header are fine") {
        Frame f = blank(3, 2);
        f.pixels = {1, 2, 3, 4, 5, 65535};
        const std::string path = temp_path("comment.pgm");
        {
            std::ofstream out(path, std::ios::binary);
            out << "P5\n# a comment line\n3 # trailing\n2\n65535\n";
            for (std::uint16_t p : f.pixels) {
                out.put(static_cast<char>(p >> 8));
                out.put(static_cast<char>(p & 0xFF));
            }
        }
        const Frame g = read_pgm(path);
        CHECK(g.pixels == f.pixels);
        std::remove(path.c_str());
    }
}
