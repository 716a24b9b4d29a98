#pragma once

#include <string>
#include <vector>

#include "evsync/estimator.hpp"
#include "evsync/types.hpp"

namespace evsync {

struct SyncEntry {
    std::string label;
    Timestamp delta_vs_reference_us = 0;
    double min_dissimilarity = 0.0;
    bool accepted = false;
    int windows_consumed = 0;
    std::string error;  // non-empty when estimation failed for this stream
};

struct SyncReport {
    std::string reference_label;
    std::vector<SyncEntry> entries;  // one per input stream, in input order
};

struct SyncOutcome {
    std::vector<EventStream> streams;       // adjusted where accepted, otherwise untouched
    SyncReport report;
    std::vector<OffsetEstimate> estimates;  // parallel to report.entries
};

/// Shifts every timestamp by delta. Events whose adjusted timestamp would be
/// negative are dropped; the count is available via dropped_events().
EventStream apply_offset(const EventStream& stream, Timestamp delta_us);

/// Estimates each non-reference stream's offset against the reference and
/// rewrites accepted streams onto the reference timeline. Estimation failures
/// are recorded per stream without aborting the batch.
SyncOutcome synchronize(const std::vector<EventStream>& streams, std::size_t reference_index,
                        const SyncConfig& cfg);

}  // namespace evsync
