#pragma once

#include <cstdint>
#include <vector>

#include "evsync/types.hpp"

namespace evsync {

/// Normalized event density M(t): per-bin event counts over fixed bins of
/// width tau, divided by the total event count inside the window. Bin k
/// covers the half-open interval [origin + k*tau, origin + (k+1)*tau).
struct DensityDistribution {
    std::vector<double> bins;
    std::int64_t tau_us = 1000;
    Timestamp origin_us = 0;
    std::int64_t total_events = 0;  // normalization count for this window

    bool empty() const { return total_events == 0; }
    std::int64_t bin_count() const { return static_cast<std::int64_t>(bins.size()); }
};

/// Bins the events of [window_start, window_start + window_len) and divides
/// by the in-window count. Events outside the window are ignored; a window
/// with no events yields all-zero bins and total_events = 0.
DensityDistribution density_distribution(const EventStream& stream, Timestamp window_start,
                                         std::int64_t window_len, std::int64_t tau);

/// Left edge of the first bin whose cumulative mass reaches p percent.
/// No interpolation; resolution is one bin. Throws EmptyDistribution.
Timestamp percentile_timestamp(const DensityDistribution& dist, double percent);

}  // namespace evsync
