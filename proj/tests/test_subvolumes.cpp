#include <doctest.h>

#include <cmath>
#include <set>

#include "vs360/subvolumes.hpp"

using namespace vs360;

namespace {

constexpr int kW = 480, kH = 240;

SalientRegion region_at_pixel(double px, double py, int frame) {
    SalientRegion r;
    r.frame_index = frame;
    r.centroid_erp_x = px;
    r.centroid_erp_y = py;
    const double lon = ((px + 0.5) / kW) * 2 * kPi - kPi;
    const double lat = kPi / 2 - ((py + 0.5) / kH) * kPi;
    r.centroid_sph = make_spherical(lat, lon);
    r.peak_intensity = 255;
    r.mean_intensity = 200;
    SalientPoint p;
    p.position = r.centroid_sph;
    p.unit = to_unit_vector(p.position);
    p.erp_px = static_cast<int>(px);
    p.erp_py = static_cast<int>(py);
    p.intensity = 255;
    r.points.push_back(p);
    return r;
}

TrackerParams params_for_tests() {
    TrackerParams p;
    p.frame_width = kW;
    p.frame_height = kH;
    p.min_subvolume_len = 1;
    return p;
}

}  // namespace

TEST_CASE("a drifting region stays one sub-volume") {
    std::vector<std::vector<SalientRegion>> frames;
    for (int f = 0; f < 10; ++f)
        frames.push_back({region_at_pixel(20.0 + 10.0 * f, 50.0, f)});
    const auto svs = build_subvolumes(frames, params_for_tests());
    REQUIRE(svs.size() == 1);
    CHECK(svs[0].start_frame == 0);
    CHECK(svs[0].end_frame == 9);
    for (const auto& [frame, entry] : svs[0].track) CHECK(entry.observed);
}

TEST_CASE("two distant simultaneous regions make two sub-volumes") {
    std::vector<std::vector<SalientRegion>> frames;
    for (int f = 0; f < 5; ++f)
        frames.push_back({region_at_pixel(10.0, 50.0, f), region_at_pixel(210.0, 50.0, f)});
    const auto svs = build_subvolumes(frames, params_for_tests());
    REQUIRE(svs.size() == 2);
    CHECK(svs[0].length() == 5);
    CHECK(svs[1].length() == 5);
}

TEST_CASE("matching wraps across the longitude seam") {
    std::vector<std::vector<SalientRegion>> frames;
    frames.push_back({region_at_pixel(kW - 5.0, 50.0, 0)});
    frames.push_back({region_at_pixel(5.0, 50.0, 1)});  // wraparound distance 10 < t3
    const auto svs = build_subvolumes(frames, params_for_tests());
    REQUIRE(svs.size() == 1);
    CHECK(svs[0].length() == 2);
}

TEST_CASE("fill_gaps interpolates short gaps and flags them unobserved") {
    TrackerState state;
    const auto params = params_for_tests();
    for (int f : {0, 1, 2, 5, 6, 7})
        assign_regions(state, f, {region_at_pixel(40.0 + f, 50.0, f)}, params);
    close_all(state);
    REQUIRE(state.closed.size() == 1);

    const auto pieces = fill_gaps(state.closed[0], 100, kW, kH);
    REQUIRE(pieces.size() == 1);
    const auto& sv = pieces[0];
    CHECK(sv.start_frame == 0);
    CHECK(sv.end_frame == 7);
    CHECK(sv.track.size() == 8);
    CHECK_FALSE(sv.track.at(3).observed);
    CHECK_FALSE(sv.track.at(4).observed);
    CHECK(sv.track.at(2).observed);
    CHECK(sv.track.at(5).observed);
    // interpolated centroids sit between the flanking observations
    CHECK(sv.track.at(3).erp_x > sv.track.at(2).erp_x);
    CHECK(sv.track.at(3).erp_x < sv.track.at(5).erp_x);
    CHECK(std::fabs(sv.track.at(3).erp_y - 50.0) < 0.01);
}

TEST_CASE("fill_gaps splits on runs longer than t4") {
    SubVolume sv;
    sv.id = 3;
    for (int f : {0, 1, 2, 3, 4, 200, 201, 202, 203, 204}) {
        TrackEntry e;
        e.erp_x = 50;
        e.erp_y = 50;
        e.sph = make_spherical(0.0, 0.0);
        e.observed = true;
        sv.track.emplace(f, e);
    }
    sv.start_frame = 0;
    sv.end_frame = 204;
    const auto pieces = fill_gaps(sv, 100, kW, kH);
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0].start_frame == 0);
    CHECK(pieces[0].end_frame == 4);
    CHECK(pieces[1].start_frame == 200);
    CHECK(pieces[1].end_frame == 204);
    for (const auto& p : pieces)
        for (const auto& [frame, entry] : p.track) CHECK(entry.observed);
}

TEST_CASE("fully observed sub-volume passes through unchanged") {
    TrackerState state;
    const auto params = params_for_tests();
    for (int f = 0; f < 4; ++f)
        assign_regions(state, f, {region_at_pixel(30.0, 40.0, f)}, params);
    close_all(state);
    const auto pieces = fill_gaps(state.closed[0], 100, kW, kH);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].track.size() == 4);
    CHECK(pieces[0].start_frame == 0);
    CHECK(pieces[0].end_frame == 3);
}

TEST_CASE("two temporally disjoint events at distant longitudes") {
    std::vector<std::vector<SalientRegion>> frames(61);
    for (int f = 0; f <= 20; ++f) frames[f].push_back(region_at_pixel(30.0, 50.0, f));
    for (int f = 40; f <= 60; ++f) frames[f].push_back(region_at_pixel(290.0, 50.0, f));
    const auto svs = build_subvolumes(frames, params_for_tests());
    REQUIRE(svs.size() == 2);
    CHECK(svs[0].start_frame == 0);
    CHECK(svs[0].end_frame == 20);
    CHECK(svs[1].start_frame == 40);
    CHECK(svs[1].end_frame == 60);
    CHECK(svs[0].id == 0);
    CHECK(svs[1].id == 1);
}

TEST_CASE("empty input produces empty output") {
    CHECK(build_subvolumes({}, params_for_tests()).empty());
    CHECK(build_subvolumes(std::vector<std::vector<SalientRegion>>(5), params_for_tests())
              .empty());
}

TEST_CASE("a two-frame dropout is bridged with unobserved entries") {
    std::vector<std::vector<SalientRegion>> frames(10);
    for (int f = 0; f < 10; ++f)
        if (f != 4 && f != 5) frames[f].push_back(region_at_pixel(60.0 + f, 50.0, f));
    const auto svs = build_subvolumes(frames, params_for_tests());
    REQUIRE(svs.size() == 1);
    CHECK(svs[0].length() == 10);
    CHECK_FALSE(svs[0].track.at(4).observed);
    CHECK_FALSE(svs[0].track.at(5).observed);
    int observed = 0;
    for (const auto& [frame, e] : svs[0].track) observed += e.observed ? 1 : 0;
    CHECK(observed == 8);
}

TEST_CASE("conservation: every region lands in exactly one observed entry") {
    std::vector<std::vector<SalientRegion>> frames(30);
    int total_regions = 0;
    for (int f = 0; f < 30; ++f) {
        if (f % 7 == 3) continue;  // dropouts
        frames[f].push_back(region_at_pixel(20.0 + f, 30.0, f));
        ++total_regions;
        if (f >= 10 && f < 25) {
            frames[f].push_back(region_at_pixel(150.0, 70.0, f));
            ++total_regions;
        }
    }
    const auto svs = build_subvolumes(frames, params_for_tests());
    int observed = 0;
    for (const auto& sv : svs) {
        for (const auto& [frame, e] : sv.track) observed += e.observed ? 1 : 0;
        // no unobserved run longer than t4 and contiguous coverage
        for (int f = sv.start_frame; f <= sv.end_frame; ++f) CHECK(sv.track.count(f) == 1);
    }
    CHECK(observed == total_regions);
    // chronological output
    for (std::size_t i = 1; i < svs.size(); ++i)
        CHECK(svs[i].start_frame >= svs[i - 1].start_frame);
}

TEST_CASE("track continuity: consecutive centroids stay within reach") {
    std::vector<std::vector<SalientRegion>> frames(40);
    for (int f = 0; f < 40; ++f)
        if (f % 5 != 4) frames[f].push_back(region_at_pixel(std::fmod(10.0 + 7.0 * f, kW), 50.0, f));
    const auto params = params_for_tests();
    const auto svs = build_subvolumes(frames, params);
    for (const auto& sv : svs)
        for (int f = sv.start_frame; f < sv.end_frame; ++f) {
            const auto& a = sv.track.at(f);
            const auto& b = sv.track.at(f + 1);
            CHECK(erp_pixel_distance(a.erp_x, a.erp_y, b.erp_x, b.erp_y, kW) <=
                  params.t3 + 1e-9);
        }
}

TEST_CASE("out-of-order frames are a state error") {
    TrackerState state;
    const auto params = params_for_tests();
    assign_regions(state, 5, {region_at_pixel(10, 10, 5)}, params);
    CHECK_THROWS_AS(assign_regions(state, 5, {}, params), std::logic_error);
    CHECK_THROWS_AS(assign_regions(state, 4, {}, params), std::logic_error);
}

TEST_CASE("determinism: identical input, identical sub-volumes") {
    std::vector<std::vector<SalientRegion>> frames(20);
    for (int f = 0; f < 20; ++f) {
        frames[f].push_back(region_at_pixel(40.0 + 2 * f, 44.0, f));
        frames[f].push_back(region_at_pixel(60.0 + 2 * f, 48.0, f));  // parallel nearby track
    }
    const auto a = build_subvolumes(frames, params_for_tests());
    const auto b = build_subvolumes(frames, params_for_tests());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].start_frame == b[i].start_frame);
        CHECK(a[i].end_frame == b[i].end_frame);
        REQUIRE(a[i].track.size() == b[i].track.size());
        for (const auto& [frame, e] : a[i].track) {
            CHECK(b[i].track.at(frame).erp_x == e.erp_x);
            CHECK(b[i].track.at(frame).observed == e.observed);
        }
    }
    // the two parallel tracks never merged
    CHECK(a.size() == 2);
}

TEST_CASE("a second region near one sub-volume opens a new one") {
    std::vector<std::vector<SalientRegion>> frames(3);
    frames[0].push_back(region_at_pixel(100.0, 50.0, 0));
    // two close regions next frame: nearest extends, the other starts fresh
    frames[1].push_back(region_at_pixel(102.0, 50.0, 1));
    frames[1].push_back(region_at_pixel(108.0, 50.0, 1));
    frames[2].push_back(region_at_pixel(104.0, 50.0, 2));
    frames[2].push_back(region_at_pixel(110.0, 50.0, 2));
    const auto svs = build_subvolumes(frames, params_for_tests());
    REQUIRE(svs.size() == 2);
    CHECK(svs[0].start_frame == 0);
    CHECK(svs[0].end_frame == 2);
    CHECK(svs[0].track.at(1).erp_x == doctest::Approx(102.0));
    CHECK(svs[1].start_frame == 1);
    CHECK(svs[1].track.at(1).erp_x == doctest::Approx(108.0));
}
