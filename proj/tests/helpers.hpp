#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "evsync/density.hpp"
#include "evsync/estimator.hpp"
#include "evsync/synthgen.hpp"
#include "evsync/types.hpp"

namespace testutil {

inline evsync::SensorGeometry davis346() {
    return {346, 260};
}

inline evsync::EventStream stream_from_times(const std::vector<evsync::Timestamp>& times,
                                             evsync::SensorGeometry geometry = davis346(),
                                             std::string label = "test") {
    std::vector<evsync::Event> events;
    events.reserve(times.size());
    for (evsync::Timestamp t : times) {
        events.push_back(evsync::Event{5, 5, t, 1});
    }
    return evsync::build_stream(std::move(events), geometry, std::move(label));
}

/// `count` events spread inside [start_us, start_us + extent_us).
inline void add_cluster(std::vector<evsync::Event>& events, evsync::Timestamp start_us,
                        std::int64_t count, std::int64_t extent_us = 1000) {
    for (std::int64_t i = 0; i < count; ++i) {
        const evsync::Timestamp t = start_us + (i * extent_us) / count;
        events.push_back(evsync::Event{5, 5, t, i % 2 == 0 ? std::int8_t{1} : std::int8_t{-1}});
    }
}

/// Sorted random timestamps in [0, span_us), roughly `count` of them.
inline std::vector<evsync::Timestamp> random_times(std::mt19937_64& rng, std::int64_t span_us,
                                                   std::size_t count) {
    std::uniform_int_distribution<evsync::Timestamp> dist(0, span_us - 1);
    std::vector<evsync::Timestamp> times(count);
    for (auto& t : times) t = dist(rng);
    std::sort(times.begin(), times.end());
    return times;
}

inline evsync::EventStream random_stream(std::mt19937_64& rng, std::int64_t span_us,
                                         std::size_t count, std::string label = "rand") {
    auto geometry = davis346();
    std::uniform_int_distribution<std::int32_t> px(0, geometry.width - 1);
    std::uniform_int_distribution<std::int32_t> py(0, geometry.height - 1);
    std::uniform_int_distribution<int> pol(0, 1);
    std::vector<evsync::Event> events;
    events.reserve(count);
    for (evsync::Timestamp t : random_times(rng, span_us, count)) {
        events.push_back(evsync::Event{px(rng), py(rng), t,
                                       pol(rng) ? std::int8_t{1} : std::int8_t{-1}});
    }
    return evsync::build_stream(std::move(events), geometry, std::move(label));
}

/// Profile with `lead_us` of silence prepended, so that every camera whose
/// start offset is below the lead witnesses the full activity.
inline evsync::ActivityProfile with_silent_lead(evsync::ActivityProfile profile,
                                                std::int64_t lead_us) {
    const std::size_t lead_bins = static_cast<std::size_t>(lead_us / profile.tau_us);
    profile.samples.insert(profile.samples.begin(), lead_bins, 0.0);
    profile.duration_us += static_cast<std::int64_t>(lead_bins) * profile.tau_us;
    return profile;
}

inline evsync::DensityDistribution dist_from_bins(std::vector<double> bins,
                                                  std::int64_t tau = 1000,
                                                  evsync::Timestamp origin = 0,
                                                  std::int64_t total = 100) {
    evsync::DensityDistribution d;
    d.bins = std::move(bins);
    d.tau_us = tau;
    d.origin_us = origin;
    d.total_events = total;
    return d;
}

inline evsync::DensityDistribution dist_from_counts(const std::vector<std::int64_t>& counts,
                                                    std::int64_t tau = 1000,
                                                    evsync::Timestamp origin = 0) {
    std::int64_t total = 0;
    for (auto c : counts) total += c;
    evsync::DensityDistribution d;
    d.tau_us = tau;
    d.origin_us = origin;
    d.total_events = total;
    d.bins.resize(counts.size(), 0.0);
    if (total > 0) {
        for (std::size_t k = 0; k < counts.size(); ++k) {
            d.bins[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
        }
    }
    return d;
}

/// Two hand-built streams whose first analysis window is deliberately
/// uncorrelated (incommensurate spike pairs, min dissimilarity ~1.9e-4) and
/// whose second window is an exact shifted copy (dissimilarity 0). With
/// window_us = 2s the retry loop must reject window 1 at the default epsilon
/// and accept window 2 with delta = -200000us.
struct AdversarialPair {
    evsync::EventStream stream1;
    evsync::EventStream stream2;
    static constexpr evsync::Timestamp expected_delta_us = -200'000;
};

inline AdversarialPair adversarial_pair() {
    using evsync::Timestamp;
    std::vector<evsync::Event> e1, e2;

    // window 1 of stream1: spikes at anchor+0 and anchor+677ms, anchor 100ms
    add_cluster(e1, 100'000, 50);
    add_cluster(e1, 777'000, 50);
    // window 1 of stream2: spikes at anchor+0 and anchor+934ms, anchor 300ms
    add_cluster(e2, 300'000, 40);
    add_cluster(e2, 1'234'000, 40);

    // window 2: identical five-cluster pattern relative to each window start
    const Timestamp pattern[] = {200'000, 300'000, 450'000, 900'000, 1'300'000};
    const std::int64_t counts[] = {30, 60, 90, 45, 75};
    for (int i = 0; i < 5; ++i) {
        add_cluster(e1, 2'100'000 + pattern[i], counts[i]);
        add_cluster(e2, 2'300'000 + pattern[i], counts[i]);
    }

    AdversarialPair pair{
        evsync::build_stream(std::move(e1), davis346(), "adv1"),
        evsync::build_stream(std::move(e2), davis346(), "adv2"),
    };
    return pair;
}

inline evsync::SyncConfig adversarial_config() {
    evsync::SyncConfig cfg;
    cfg.tau_us = 1000;
    cfg.window_us = 2'000'000;
    cfg.max_windows = 3;
    cfg.min_overlap_bins = 500;
    return cfg;
}

}  // namespace testutil
