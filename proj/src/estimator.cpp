#include "evsync/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <vector>

namespace evsync {

namespace {

std::int64_t floor_multiple(std::int64_t value, std::int64_t step) {
    std::int64_t q = value / step;
    if (value % step != 0 && value < 0) --q;
    return q * step;
}

std::int64_t ceil_multiple(std::int64_t value, std::int64_t step) {
    std::int64_t q = value / step;
    if (value % step != 0 && value > 0) ++q;
    return q * step;
}

// Overlapping bin range of m1 against m2 shifted right by delta, as indices
// into m1. rel is the index shift: m2 bin k lands at m1 index k + rel.
struct OverlapRange {
    std::int64_t rel = 0;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::int64_t size() const { return hi - lo; }
};

OverlapRange overlap_range(const DensityDistribution& m1, const DensityDistribution& m2,
                           Timestamp delta_us) {
    if (m1.tau_us != m2.tau_us) throw MismatchedTau(m1.tau_us, m2.tau_us);
    const std::int64_t tau = m1.tau_us;
    const std::int64_t diff = m2.origin_us + delta_us - m1.origin_us;
    if (diff % tau != 0) {
        throw MisalignedBins("shift of " + std::to_string(delta_us) +
                             "us does not align bin grids (origin difference " +
                             std::to_string(diff) + "us, tau " + std::to_string(tau) + "us)");
    }
    OverlapRange r;
    r.rel = diff / tau;
    r.lo = std::max<std::int64_t>(0, r.rel);
    r.hi = std::min<std::int64_t>(m1.bin_count(), r.rel + m2.bin_count());
    return r;
}

double squared_diff_sum(const DensityDistribution& m1, const DensityDistribution& m2,
                        const OverlapRange& r) {
    double sum = 0.0;
    const double* a = m1.bins.data() + r.lo;
    const double* b = m2.bins.data() + (r.lo - r.rel);
    const std::int64_t n = r.size();
    for (std::int64_t j = 0; j < n; ++j) {
        const double d = a[j] - b[j];
        sum += d * d;
    }
    return sum;
}

// As above but gives up once the partial sum exceeds limit (which it can only
// do by being strictly worse than the candidate the limit came from).
double squared_diff_sum_capped(const DensityDistribution& m1, const DensityDistribution& m2,
                               const OverlapRange& r, double limit) {
    constexpr std::int64_t kBlock = 256;
    double sum = 0.0;
    const double* a = m1.bins.data() + r.lo;
    const double* b = m2.bins.data() + (r.lo - r.rel);
    const std::int64_t n = r.size();
    std::int64_t j = 0;
    while (j < n) {
        const std::int64_t end = std::min(n, j + kBlock);
        for (; j < end; ++j) {
            const double d = a[j] - b[j];
            sum += d * d;
        }
        if (sum > limit) return std::numeric_limits<double>::infinity();
    }
    return sum;
}

bool beats_tie(Timestamp candidate, Timestamp incumbent) {
    const std::int64_t ca = std::llabs(candidate);
    const std::int64_t ia = std::llabs(incumbent);
    if (ca != ia) return ca < ia;
    return candidate < incumbent;
}

}  // namespace

void SyncConfig::validate() const {
    if (tau_us <= 0) throw InvalidConfig("tau must be positive");
    if (window_us < tau_us || window_us % tau_us != 0) {
        throw InvalidConfig("window length must be a positive multiple of tau");
    }
    if (epsilon < 0.0) throw InvalidConfig("epsilon must be non-negative");
    if (percentile <= 0.0 || percentile >= 100.0) {
        throw InvalidConfig("percentile must lie in (0,100)");
    }
    if (max_windows < 1) throw InvalidConfig("max_windows must be at least 1");
    if (min_overlap_bins < 1) throw InvalidConfig("min_overlap_bins must be at least 1");
    if (bound_fallback_halfwidth_us < tau_us) {
        throw InvalidConfig("bound fallback halfwidth must cover at least one bin");
    }
}

DissimilarityDetail dissimilarity_detail(const DensityDistribution& m1,
                                         const DensityDistribution& m2, Timestamp delta_us) {
    const OverlapRange r = overlap_range(m1, m2, delta_us);
    if (r.size() <= 0) throw NoOverlap{};
    DissimilarityDetail d;
    d.overlap_bins = r.size();
    d.sum = squared_diff_sum(m1, m2, r);
    d.mean = d.sum / static_cast<double>(d.overlap_bins);
    return d;
}

double dissimilarity(const DensityDistribution& m1, const DensityDistribution& m2,
                     Timestamp delta_us) {
    return dissimilarity_detail(m1, m2, delta_us).mean;
}

SearchBounds search_bounds(const DensityDistribution& m1, const DensityDistribution& m2,
                           double percent, std::int64_t fallback_halfwidth_us) {
    if (m1.tau_us != m2.tau_us) throw MismatchedTau(m1.tau_us, m2.tau_us);
    const Timestamp q1 = percentile_timestamp(m1, percent);
    const Timestamp q2 = percentile_timestamp(m2, percent);
    const Timestamp d = q2 - q1;
    const Timestamp w = 2 * std::llabs(q1 - q2);

    Timestamp a, b;
    if (w == 0) {
        a = d - fallback_halfwidth_us;
        b = d + fallback_halfwidth_us;
    } else {
        a = d - w;
        b = d + w;
    }
    SearchBounds bounds;
    bounds.a_us = floor_multiple(a, m1.tau_us);
    bounds.b_us = ceil_multiple(b, m1.tau_us);
    return bounds;
}

OffsetScore argmin_offset(const DensityDistribution& m1, const DensityDistribution& m2,
                          const SearchBounds& bounds, const SyncConfig& cfg) {
    cfg.validate();
    if (bounds.a_us > bounds.b_us) throw InvalidConfig("search bounds must satisfy a <= b");
    if (m1.tau_us != m2.tau_us) throw MismatchedTau(m1.tau_us, m2.tau_us);
    const std::int64_t tau = cfg.tau_us;
    if (m1.tau_us != tau) throw MismatchedTau(m1.tau_us, tau);

    const Timestamp first = ceil_multiple(bounds.a_us, tau);
    const Timestamp last = floor_multiple(bounds.b_us, tau);
    if (first > last) throw NoValidCandidate("no tau-aligned candidate inside bounds");

    // Visit candidates in tie-break order (smallest |delta| first, negative
    // before positive) so a strictly-better test suffices.
    std::vector<Timestamp> candidates;
    candidates.reserve(static_cast<std::size_t>((last - first) / tau) + 1);
    for (Timestamp delta = first; delta <= last; delta += tau) candidates.push_back(delta);
    std::sort(candidates.begin(), candidates.end(), [](Timestamp lhs, Timestamp rhs) {
        const std::int64_t la = std::llabs(lhs), ra = std::llabs(rhs);
        if (la != ra) return la < ra;
        return lhs < rhs;
    });

    std::optional<OffsetScore> best;
    std::size_t skipped = 0;
    for (const Timestamp delta : candidates) {
        const OverlapRange r = overlap_range(m1, m2, delta);
        if (r.size() < std::max<std::int64_t>(1, cfg.min_overlap_bins)) {
            ++skipped;
            continue;
        }
        // The margin keeps the early exit strictly conservative: anything it
        // discards is worse than the incumbent even after division rounding.
        const double limit = best ? best->score * static_cast<double>(r.size()) * (1.0 + 1e-12)
                                  : std::numeric_limits<double>::infinity();
        const double sum = squared_diff_sum_capped(m1, m2, r, limit);
        if (std::isinf(sum)) continue;  // provably worse than the incumbent
        const double mean = sum / static_cast<double>(r.size());
        if (!best || mean < best->score) {
            best = OffsetScore{delta, mean, sum, r.size()};
        }
    }
    if (!best) {
        throw NoValidCandidate("all " + std::to_string(skipped) +
                               " candidates fell below min_overlap_bins=" +
                               std::to_string(cfg.min_overlap_bins));
    }
    return *best;
}

OffsetScore exhaustive_offset(const DensityDistribution& m1, const DensityDistribution& m2,
                              const SearchBounds& wide_bounds, const SyncConfig& cfg) {
    cfg.validate();
    if (wide_bounds.a_us > wide_bounds.b_us) {
        throw InvalidConfig("search bounds must satisfy a <= b");
    }
    if (m1.tau_us != m2.tau_us) throw MismatchedTau(m1.tau_us, m2.tau_us);
    const std::int64_t tau = cfg.tau_us;
    if (m1.tau_us != tau) throw MismatchedTau(m1.tau_us, tau);

    const Timestamp first = ceil_multiple(wide_bounds.a_us, tau);
    const Timestamp last = floor_multiple(wide_bounds.b_us, tau);
    if (first > last) throw NoValidCandidate("no tau-aligned candidate inside bounds");

    std::optional<OffsetScore> best;
    for (Timestamp delta = first; delta <= last; delta += tau) {
        const OverlapRange r = overlap_range(m1, m2, delta);
        if (r.size() < std::max<std::int64_t>(1, cfg.min_overlap_bins)) continue;
        const double sum = squared_diff_sum(m1, m2, r);
        const double mean = sum / static_cast<double>(r.size());
        if (!best || mean < best->score ||
            (mean == best->score && beats_tie(delta, best->delta_us))) {
            best = OffsetScore{delta, mean, sum, r.size()};
        }
    }
    if (!best) throw NoValidCandidate("every candidate fell below min_overlap_bins");
    return *best;
}

OffsetEstimate estimate_offset(const EventStream& stream1, const EventStream& stream2,
                               const SyncConfig& cfg) {
    cfg.validate();
    if (stream1.empty() || stream2.empty()) throw EmptyStream{};

    // Windows track the data: each stream's window w covers
    // [anchor + w*T, anchor + (w+1)*T) in its own running time, with the
    // anchor snapped down to the bin grid.
    const Timestamp anchor1 = floor_multiple(stream1.first_time(), cfg.tau_us);
    const Timestamp anchor2 = floor_multiple(stream2.first_time(), cfg.tau_us);

    std::optional<OffsetEstimate> best;
    bool any_candidate_failed = false;
    int windows = 0;

    for (int w = 0; w < cfg.max_windows; ++w) {
        const Timestamp start1 = anchor1 + static_cast<Timestamp>(w) * cfg.window_us;
        const Timestamp start2 = anchor2 + static_cast<Timestamp>(w) * cfg.window_us;
        if (start1 > stream1.last_time() || start2 > stream2.last_time()) {
            if (best) break;
            throw StreamExhausted(start1 > stream1.last_time() ? stream1.label()
                                                               : stream2.label());
        }
        ++windows;

        const DensityDistribution m1 =
            density_distribution(stream1, start1, cfg.window_us, cfg.tau_us);
        const DensityDistribution m2 =
            density_distribution(stream2, start2, cfg.window_us, cfg.tau_us);
        if (m1.empty() || m2.empty()) continue;  // silent window, try the next one

        const SearchBounds bounds =
            search_bounds(m1, m2, cfg.percentile, cfg.bound_fallback_halfwidth_us);
        OffsetScore result;
        try {
            result = argmin_offset(m1, m2, bounds, cfg);
        } catch (const NoValidCandidate&) {
            any_candidate_failed = true;
            continue;
        }

        if (!best || result.score < best->min_dissimilarity) {
            OffsetEstimate est;
            est.delta_t21_us = result.delta_us;
            est.min_dissimilarity = result.score;
            est.sum_sq_diff = result.sum_sq;
            est.overlap_bins = result.overlap_bins;
            est.bounds = bounds;
            best = est;
        }
        if (result.score < cfg.epsilon) {
            best->accepted = true;
            break;
        }
    }

    if (!best) {
        if (any_candidate_failed) {
            throw NoValidCandidate("no window produced a usable candidate");
        }
        throw NoValidCandidate("every window was empty of events");
    }
    best->windows_consumed = windows;
    return *best;
}

}  // namespace evsync
