#pragma once

#include <cstdint>

#include "evsync/density.hpp"
#include "evsync/types.hpp"

namespace evsync {

struct SyncConfig {
    std::int64_t tau_us = 1000;
    std::int64_t window_us = 10'000'000;  // T, length of each analysis window
    double epsilon = 0.0001;              // acceptance threshold on the dissimilarity
    double percentile = 50.0;             // p used for the search bounds
    int max_windows = 6;                  // retry cap for the windowed loop
    std::int64_t min_overlap_bins = 1000;
    std::int64_t bound_fallback_halfwidth_us = 500'000;  // used when Q1 == Q2

    void validate() const;
};

/// Signed search range for the offset, inclusive on both ends.
struct SearchBounds {
    Timestamp a_us = 0;
    Timestamp b_us = 0;
};

/// Mean squared per-bin difference plus its un-averaged sum and the number
/// of overlapping bins it was taken over.
struct DissimilarityDetail {
    double mean = 0.0;
    double sum = 0.0;
    std::int64_t overlap_bins = 0;
};

/// One evaluated offset candidate.
struct OffsetScore {
    Timestamp delta_us = 0;
    double score = 0.0;  // mean squared difference
    double sum_sq = 0.0;
    std::int64_t overlap_bins = 0;
};

/// Recovered start-time difference between two cameras: the amount to add to
/// camera 2's timestamps to land on camera 1's timeline.
struct OffsetEstimate {
    Timestamp delta_t21_us = 0;
    double min_dissimilarity = 0.0;
    double sum_sq_diff = 0.0;        // diagnostic: un-averaged squared-difference sum
    std::int64_t overlap_bins = 0;   // diagnostic: bins behind min_dissimilarity
    SearchBounds bounds;
    int windows_consumed = 0;
    bool accepted = false;
};

/// D(M1, M2 shifted right by delta): mean of squared per-bin differences over
/// the overlapping bin range. delta and the origin difference must keep the
/// two grids aligned to a common tau.
double dissimilarity(const DensityDistribution& m1, const DensityDistribution& m2,
                     Timestamp delta_us);
DissimilarityDetail dissimilarity_detail(const DensityDistribution& m1,
                                         const DensityDistribution& m2, Timestamp delta_us);

/// Percentile-difference search range: with d = Q2 - Q1 and w = 2|Q1 - Q2|,
/// [d - w, d + w], snapped outward to multiples of tau. Degenerate Q1 == Q2
/// falls back to [d - fallback_halfwidth, d + fallback_halfwidth].
SearchBounds search_bounds(const DensityDistribution& m1, const DensityDistribution& m2,
                           double percent, std::int64_t fallback_halfwidth_us);

/// Scans every multiple of tau in [bounds.a, bounds.b], skipping candidates
/// whose overlap is below cfg.min_overlap_bins. Ties break toward the
/// smallest |delta|, then toward the smaller delta.
OffsetScore argmin_offset(const DensityDistribution& m1, const DensityDistribution& m2,
                          const SearchBounds& bounds, const SyncConfig& cfg);

/// Reference scan for argmin_offset: plain linear sweep of every candidate in
/// wide_bounds with identical tie-breaking; no pruning or reordering.
OffsetScore exhaustive_offset(const DensityDistribution& m1, const DensityDistribution& m2,
                              const SearchBounds& wide_bounds, const SyncConfig& cfg);

/// Windowed estimation loop: per-stream windows of length T starting at each
/// stream's first event time (snapped down to tau), advanced by T until the
/// dissimilarity drops below epsilon or max_windows is exhausted. Returns the
/// best estimate found, flagged accepted iff its score beat epsilon.
OffsetEstimate estimate_offset(const EventStream& stream1, const EventStream& stream2,
                               const SyncConfig& cfg);

}  // namespace evsync
