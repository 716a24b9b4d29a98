#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "evsync/density.hpp"
#include "evsync/synthgen.hpp"
#include "helpers.hpp"

using namespace evsync;

namespace {

GeneratorConfig two_cameras(Timestamp offset2, double gain2 = 1.0) {
    GeneratorConfig cfg;
    cfg.offsets_us = {0, offset2};
    cfg.gains = {1.0, gain2};
    return cfg;
}

}  // namespace

TEST_CASE("profiles are deterministic given the seed") {
    for (ProfileKind kind : {ProfileKind::RandomWalk, ProfileKind::Bursts, ProfileKind::Sinusoid}) {
        const auto a = make_profile(1, 30'000'000, 1000, kind);
        const auto b = make_profile(1, 30'000'000, 1000, kind);
        CHECK(a.samples == b.samples);
        const auto c = make_profile(2, 30'000'000, 1000, kind);
        CHECK(a.samples != c.samples);
    }
}

TEST_CASE("sinusoid profiles are rectified to non-negative samples") {
    const auto profile = make_profile(5, 2'000'000, 1000, ProfileKind::Sinusoid);
    double min_sample = 1e18;
    for (double v : profile.samples) min_sample = std::min(min_sample, v);
    CHECK(min_sample >= 0.0);
}

TEST_CASE("random walk profiles keep at least 10% of bins strictly positive") {
    for (std::uint64_t seed : {1ull, 7ull, 99ull, 1234ull}) {
        const auto profile = make_profile(seed, 30'000'000, 1000, ProfileKind::RandomWalk);
        REQUIRE(profile.samples.size() == 30'000);
        std::size_t positive = 0;
        for (double v : profile.samples) {
            CHECK(v >= 0.0);
            if (v > 0.0) ++positive;
        }
        CHECK(positive >= 3'000);
    }
}

TEST_CASE("make_profile rejects bad durations") {
    CHECK_THROWS_AS(make_profile(1, 0, 1000, ProfileKind::Bursts), InvalidDuration);
    CHECK_THROWS_AS(make_profile(1, 1'500, 1000, ProfileKind::Bursts), InvalidDuration);
    CHECK_THROWS_AS(make_profile(1, 30'000'000, 0, ProfileKind::Bursts), InvalidBinWidth);
}

TEST_CASE("generator config validation") {
    GeneratorConfig cfg;
    cfg.offsets_us = {0, 100};
    cfg.gains = {1.0};
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg.gains = {1.0, 0.0};
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg.gains = {1.0, 1.0};
    cfg.contrast_threshold = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
    cfg = two_cameras(0);
    cfg.count_noise = -0.1;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfig);
}

TEST_CASE("streams are deterministic given profile and config") {
    const auto profile = make_profile(42, 3'000'000, 1000, ProfileKind::Bursts);
    const auto a = sample_streams(profile, two_cameras(250'000));
    const auto b = sample_streams(profile, two_cameras(250'000));
    REQUIRE(a.streams.size() == 2);
    CHECK(a.streams[0].events() == b.streams[0].events());
    CHECK(a.streams[1].events() == b.streams[1].events());
    CHECK(a.true_offsets_us == std::vector<Timestamp>{0, 250'000});
    CHECK(a.streams[0].label() == "cam0");
    CHECK(a.streams[1].label() == "cam1");
}

TEST_CASE("per-bin counts follow the floor model exactly at zero noise") {
    const auto profile = make_profile(13, 2'000'000, 1000, ProfileKind::RandomWalk);
    GeneratorConfig cfg = two_cameras(0, 0.7);
    cfg.contrast_threshold = 2.5;
    const auto data = sample_streams(profile, cfg);

    for (std::size_t cam = 0; cam < 2; ++cam) {
        std::map<std::int64_t, std::int64_t> counted;
        for (const Event& e : data.streams[cam].events()) counted[e.t / 1000] += 1;
        for (std::size_t k = 0; k < profile.samples.size(); ++k) {
            const auto expected = static_cast<std::int64_t>(
                std::floor(cfg.gains[cam] * profile.samples[k] / cfg.contrast_threshold));
            const auto it = counted.find(static_cast<std::int64_t>(k));
            const std::int64_t actual = it == counted.end() ? 0 : it->second;
            CHECK(actual == expected);
        }
    }
}

TEST_CASE("zero-noise equal-gain streams have exactly shifted densities") {
    const auto profile = testutil::with_silent_lead(
        make_profile(8, 4'000'000, 1000, ProfileKind::Bursts), 500'000);
    const auto data = sample_streams(profile, two_cameras(137'000));

    const auto& s1 = data.streams[0];
    const auto& s2 = data.streams[1];
    CHECK(s1.size() == s2.size());

    // in-bin placement is per-camera randomness; the bin grid carries the shift
    const Timestamp a1 = s1.first_time() / 1000 * 1000;
    const Timestamp a2 = s2.first_time() / 1000 * 1000;
    CHECK(a1 - a2 == 137'000);
    const auto m1 = density_distribution(s1, a1, 2'000'000, 1000);
    const auto m2 = density_distribution(s2, a2, 2'000'000, 1000);
    CHECK(m1.bins == m2.bins);
    CHECK(m1.total_events == m2.total_events);
}

TEST_CASE("equal starts with heavy noise estimate to within one bin of zero") {
    const auto profile = make_profile(19, 6'000'000, 1000, ProfileKind::Bursts);
    GeneratorConfig cfg = two_cameras(0);
    cfg.count_noise = 0.15;
    cfg.timestamp_jitter_us = 1'000.0;
    const auto data = sample_streams(profile, cfg);

    SyncConfig sync_cfg;
    sync_cfg.window_us = 2'000'000;
    sync_cfg.min_overlap_bins = 500;
    const OffsetEstimate est = estimate_offset(data.streams[0], data.streams[1], sync_cfg);
    CHECK(std::llabs(est.delta_t21_us) <= 1'000);
}

TEST_CASE("unequal gains leave the recovered offset at the truth") {
    const auto profile = testutil::with_silent_lead(
        make_profile(8, 5'000'000, 1000, ProfileKind::Bursts), 500'000);
    GeneratorConfig cfg = two_cameras(137'000, 0.7);
    const auto data = sample_streams(profile, cfg);

    // densities differ pointwise under the gain mismatch
    const Timestamp a1 = data.streams[0].first_time() / 1000 * 1000;
    const Timestamp a2 = data.streams[1].first_time() / 1000 * 1000;
    const auto m1 = density_distribution(data.streams[0], a1, 2'000'000, 1000);
    const auto m2 = density_distribution(data.streams[1], a2, 2'000'000, 1000);
    CHECK(m1.bins != m2.bins);

    SyncConfig sync_cfg;
    sync_cfg.window_us = 2'000'000;
    sync_cfg.min_overlap_bins = 500;
    const OffsetEstimate est =
        estimate_offset(data.streams[0], data.streams[1], sync_cfg);
    CHECK(std::llabs(est.delta_t21_us - 137'000) <= 1'000);
}

TEST_CASE("events before a camera's start are dropped") {
    ActivityProfile profile;
    profile.tau_us = 1000;
    profile.samples.assign(100, 5.0);  // steady activity from world time zero
    profile.duration_us = 100'000;
    profile.seed = 3;

    const auto data = sample_streams(profile, two_cameras(40'000));
    CHECK(data.streams[0].size() == 500);
    CHECK(data.streams[1].size() == 300);  // the first 40 bins precede its start
    CHECK(data.streams[1].first_time() >= 0);
}

TEST_CASE("timestamp jitter keeps streams sorted and non-negative") {
    const auto profile = make_profile(21, 2'000'000, 1000, ProfileKind::Bursts);
    GeneratorConfig cfg = two_cameras(100'000);
    cfg.count_noise = 0.2;
    cfg.timestamp_jitter_us = 2000.0;
    const auto data = sample_streams(profile, cfg);
    for (const auto& stream : data.streams) {
        Timestamp prev = 0;
        for (const Event& e : stream.events()) {
            CHECK(e.t >= prev);
            prev = e.t;
        }
    }
}

TEST_CASE("sample_streams validates the profile invariants") {
    ActivityProfile bad;
    bad.tau_us = 1000;
    bad.samples.assign(100, 0.0);
    bad.samples[0] = 1.0;  // fewer than 10% positive
    bad.duration_us = 100'000;
    CHECK_THROWS_AS(sample_streams(bad, two_cameras(0)), InvalidConfig);

    ActivityProfile negative;
    negative.tau_us = 1000;
    negative.samples.assign(100, 1.0);
    negative.samples[5] = -0.5;
    negative.duration_us = 100'000;
    CHECK_THROWS_AS(sample_streams(negative, two_cameras(0)), InvalidConfig);
}
