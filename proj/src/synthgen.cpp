#include "evsync/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace evsync {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 step; stable per-camera sub-seeds from the master seed
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::size_t positive_count(const std::vector<double>& samples) {
    return static_cast<std::size_t>(
        std::count_if(samples.begin(), samples.end(), [](double v) { return v > 0.0; }));
}

std::vector<double> random_walk_samples(std::uint64_t seed, std::size_t n_bins) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> step(0.0, 2.0);
    std::vector<double> samples(n_bins);
    double level = 20.0;
    for (std::size_t k = 0; k < n_bins; ++k) {
        level = std::max(0.0, level + step(rng));
        samples[k] = level;
    }
    return samples;
}

std::vector<double> burst_samples(std::uint64_t seed, std::size_t n_bins) {
    std::mt19937_64 rng(seed);
    std::vector<double> samples(n_bins, 0.0);
    const std::size_t n_bursts = std::max<std::size_t>(3, n_bins / 500);
    std::uniform_int_distribution<std::size_t> center_dist(0, n_bins - 1);
    std::uniform_int_distribution<std::size_t> width_dist(40, 160);
    std::uniform_real_distribution<double> amp_dist(8.0, 60.0);
    for (std::size_t b = 0; b < n_bursts; ++b) {
        const std::size_t center = center_dist(rng);
        const std::size_t half = std::max<std::size_t>(1, width_dist(rng) / 2);
        const double amplitude = amp_dist(rng);
        const std::size_t lo = center > half ? center - half : 0;
        const std::size_t hi = std::min(n_bins, center + half);
        for (std::size_t k = lo; k < hi; ++k) {
            // half-sine bump
            const double u = (static_cast<double>(k - lo) + 0.5) / static_cast<double>(hi - lo);
            samples[k] += amplitude * std::sin(u * std::numbers::pi);
        }
    }
    return samples;
}

std::vector<double> sinusoid_samples(std::uint64_t seed, std::size_t n_bins) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
    const double phase = phase_dist(rng);
    const double period = std::max<double>(8.0, static_cast<double>(n_bins) / 8.0);
    std::vector<double> samples(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) {
        const double v = std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / period + phase);
        samples[k] = 30.0 * std::max(0.0, v);
    }
    return samples;
}

}  // namespace

void validate_profile(const ActivityProfile& profile) {
    if (profile.tau_us <= 0) throw InvalidBinWidth(profile.tau_us);
    if (profile.samples.empty() ||
        profile.duration_us != static_cast<std::int64_t>(profile.samples.size()) * profile.tau_us) {
        throw InvalidDuration(profile.duration_us, profile.tau_us);
    }
    for (double v : profile.samples) {
        if (!(v >= 0.0)) throw InvalidConfig("activity samples must be non-negative");
    }
    if (positive_count(profile.samples) * 10 < profile.samples.size()) {
        throw InvalidConfig("fewer than 10% of activity samples are positive");
    }
}

ActivityProfile make_profile(std::uint64_t seed, std::int64_t duration_us, std::int64_t tau_us,
                             ProfileKind kind) {
    if (tau_us <= 0) throw InvalidBinWidth(tau_us);
    if (duration_us < tau_us || duration_us % tau_us != 0) {
        throw InvalidDuration(duration_us, tau_us);
    }
    const std::size_t n_bins = static_cast<std::size_t>(duration_us / tau_us);

    ActivityProfile profile;
    profile.tau_us = tau_us;
    profile.duration_us = duration_us;
    profile.seed = seed;

    switch (kind) {
        case ProfileKind::RandomWalk: {
            // the walk can die at 0; resample with a derived seed until the
            // positivity invariant holds
            std::uint64_t attempt_seed = seed;
            for (int attempt = 0; attempt < 64; ++attempt) {
                profile.samples = random_walk_samples(attempt_seed, n_bins);
                if (positive_count(profile.samples) * 10 >= n_bins) break;
                attempt_seed = mix_seed(seed, static_cast<std::uint64_t>(attempt) + 17);
            }
            break;
        }
        case ProfileKind::Bursts:
            profile.samples = burst_samples(seed, n_bins);
            break;
        case ProfileKind::Sinusoid:
            profile.samples = sinusoid_samples(seed, n_bins);
            break;
    }
    validate_profile(profile);
    return profile;
}

void GeneratorConfig::validate() const {
    if (contrast_threshold <= 0.0) throw InvalidConfig("contrast threshold C must be positive");
    if (geometry.width < 1 || geometry.height < 1) {
        throw InvalidConfig("sensor geometry must be at least 1x1");
    }
    if (offsets_us.empty()) throw InvalidConfig("at least one camera offset required");
    if (offsets_us.size() != gains.size()) {
        throw InvalidConfig("offsets and gains must list one entry per camera (" +
                            std::to_string(offsets_us.size()) + " vs " +
                            std::to_string(gains.size()) + ")");
    }
    for (double g : gains) {
        if (!(g > 0.0)) throw InvalidConfig("camera gains must be positive");
    }
    if (count_noise < 0.0) throw InvalidConfig("count_noise must be non-negative");
    if (timestamp_jitter_us < 0.0) throw InvalidConfig("timestamp_jitter must be non-negative");
}

SyntheticStreams sample_streams(const ActivityProfile& profile, const GeneratorConfig& cfg) {
    validate_profile(profile);
    cfg.validate();

    const std::int64_t tau = profile.tau_us;
    const std::size_t n_bins = profile.samples.size();

    SyntheticStreams out;
    out.true_offsets_us = cfg.offsets_us;
    out.streams.reserve(cfg.offsets_us.size());

    for (std::size_t cam = 0; cam < cfg.offsets_us.size(); ++cam) {
        std::mt19937_64 rng(mix_seed(profile.seed, cam));
        std::uniform_int_distribution<std::int64_t> in_bin(0, tau - 1);
        std::uniform_int_distribution<std::int32_t> px(0, cfg.geometry.width - 1);
        std::uniform_int_distribution<std::int32_t> py(0, cfg.geometry.height - 1);
        std::uniform_int_distribution<int> pol(0, 1);
        std::normal_distribution<double> gauss(0.0, 1.0);

        const double gain = cfg.gains[cam];
        const Timestamp start = cfg.offsets_us[cam];

        std::vector<Event> events;
        for (std::size_t k = 0; k < n_bins; ++k) {
            const std::int64_t base = static_cast<std::int64_t>(
                std::floor(gain * profile.samples[k] / cfg.contrast_threshold));
            std::int64_t n = base;
            if (cfg.count_noise > 0.0 && base > 0) {
                const double jittered = static_cast<double>(base) +
                                        cfg.count_noise * std::sqrt(static_cast<double>(base)) *
                                            gauss(rng);
                n = std::max<std::int64_t>(0, std::llround(jittered));
            }
            const Timestamp bin_start = static_cast<Timestamp>(k) * tau;
            for (std::int64_t i = 0; i < n; ++i) {
                Timestamp world = bin_start + in_bin(rng);
                if (cfg.timestamp_jitter_us > 0.0) {
                    world += std::llround(cfg.timestamp_jitter_us * gauss(rng));
                }
                const Timestamp t = world - start;
                if (t < 0) continue;  // camera was not recording yet
                events.push_back(Event{px(rng), py(rng), t, pol(rng) ? std::int8_t{1}
                                                                     : std::int8_t{-1}});
            }
        }
        std::stable_sort(events.begin(), events.end(),
                         [](const Event& a, const Event& b) { return a.t < b.t; });
        out.streams.push_back(
            build_stream(std::move(events), cfg.geometry, "cam" + std::to_string(cam)));
    }
    return out;
}

}  // namespace evsync
