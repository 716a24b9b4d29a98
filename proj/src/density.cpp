#include "evsync/density.hpp"

#include <algorithm>

namespace evsync {

DensityDistribution density_distribution(const EventStream& stream, Timestamp window_start,
                                         std::int64_t window_len, std::int64_t tau) {
    if (tau <= 0) throw InvalidBinWidth(tau);
    if (window_len < tau || window_len % tau != 0) throw WindowNotMultipleOfTau(window_len, tau);

    const std::int64_t n_bins = window_len / tau;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n_bins), 0);

    const auto& events = stream.events();
    const Timestamp window_end = window_start + window_len;
    auto first = std::lower_bound(events.begin(), events.end(), window_start,
                                  [](const Event& e, Timestamp t) { return e.t < t; });
    std::int64_t total = 0;
    for (auto it = first; it != events.end() && it->t < window_end; ++it) {
        counts[static_cast<std::size_t>((it->t - window_start) / tau)] += 1;
        total += 1;
    }

    DensityDistribution dist;
    dist.tau_us = tau;
    dist.origin_us = window_start;
    dist.total_events = total;
    dist.bins.resize(static_cast<std::size_t>(n_bins), 0.0);
    if (total > 0) {
        for (std::size_t k = 0; k < counts.size(); ++k) {
            dist.bins[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
        }
    }
    return dist;
}

Timestamp percentile_timestamp(const DensityDistribution& dist, double percent) {
    if (percent <= 0.0 || percent >= 100.0) {
        throw InvalidConfig("percentile must lie in (0,100), got " + std::to_string(percent));
    }
    if (dist.total_events <= 0 || dist.bins.empty()) throw EmptyDistribution{};

    const double target = percent / 100.0;
    double cumulative = 0.0;
    for (std::size_t k = 0; k < dist.bins.size(); ++k) {
        cumulative += dist.bins[k];
        if (cumulative >= target) {
            return dist.origin_us + static_cast<std::int64_t>(k) * dist.tau_us;
        }
    }
    // Rounding can leave the final cumulative a hair under 1; the mass is
    // exhausted, so the answer is the last bin.
    return dist.origin_us + (dist.bin_count() - 1) * dist.tau_us;
}

}  // namespace evsync
