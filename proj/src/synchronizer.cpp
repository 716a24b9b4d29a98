#include "evsync/synchronizer.hpp"

#include <limits>
#include <utility>

namespace evsync {

EventStream apply_offset(const EventStream& stream, Timestamp delta_us) {
    std::vector<Event> adjusted;
    adjusted.reserve(stream.size());
    std::int64_t dropped = 0;
    for (const Event& e : stream.events()) {
        const Timestamp t = e.t + delta_us;
        if (t < 0) {
            ++dropped;
            continue;
        }
        adjusted.push_back(Event{e.x, e.y, t, e.p});
    }
    EventStream out = build_stream(std::move(adjusted), stream.geometry(), stream.label());
    out.dropped_ = dropped;
    return out;
}

SyncOutcome synchronize(const std::vector<EventStream>& streams, std::size_t reference_index,
                        const SyncConfig& cfg) {
    if (streams.size() < 2) throw TooFewStreams(streams.size());
    if (reference_index >= streams.size()) {
        throw InvalidConfig("reference index " + std::to_string(reference_index) +
                            " out of range for " + std::to_string(streams.size()) + " streams");
    }
    cfg.validate();

    const EventStream& reference = streams[reference_index];
    SyncOutcome out;
    out.streams = streams;
    out.report.reference_label = reference.label();
    out.report.entries.reserve(streams.size());
    out.estimates.reserve(streams.size());

    for (std::size_t i = 0; i < streams.size(); ++i) {
        SyncEntry entry;
        entry.label = streams[i].label();
        OffsetEstimate estimate;
        if (i == reference_index) {
            entry.accepted = true;
            estimate.accepted = true;
        } else {
            try {
                estimate = estimate_offset(reference, streams[i], cfg);
                entry.delta_vs_reference_us = estimate.delta_t21_us;
                entry.min_dissimilarity = estimate.min_dissimilarity;
                entry.accepted = estimate.accepted;
                entry.windows_consumed = estimate.windows_consumed;
                if (estimate.accepted) {
                    out.streams[i] = apply_offset(streams[i], estimate.delta_t21_us);
                }
            } catch (const Error& e) {
                entry.error = e.what();
                entry.min_dissimilarity = std::numeric_limits<double>::quiet_NaN();
                estimate = OffsetEstimate{};
                estimate.min_dissimilarity = std::numeric_limits<double>::quiet_NaN();
            }
        }
        out.report.entries.push_back(std::move(entry));
        out.estimates.push_back(estimate);
    }
    return out;
}

}  // namespace evsync
