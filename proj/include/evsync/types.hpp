#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evsync/errors.hpp"

namespace evsync {

/// Microseconds. Event timestamps count from the camera's own start;
/// offsets between cameras are signed values on the same scale.
using Timestamp = std::int64_t;

/// One camera event: pixel coordinates, timestamp, polarity (+1/-1).
struct Event {
    std::int32_t x = 0;
    std::int32_t y = 0;
    Timestamp t = 0;
    std::int8_t p = 1;

    friend bool operator==(const Event&, const Event&) = default;
};

struct SensorGeometry {
    std::int32_t width = 0;
    std::int32_t height = 0;

    std::int64_t pixel_count() const {
        return static_cast<std::int64_t>(width) * height;
    }
    bool contains(std::int32_t x, std::int32_t y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }

    friend bool operator==(const SensorGeometry&, const SensorGeometry&) = default;
};

/// Time-ordered events from one camera. Immutable after construction;
/// build via build_stream(), which rejects unsorted or out-of-bounds input.
class EventStream {
public:
    EventStream() = default;

    const std::vector<Event>& events() const { return events_; }
    const SensorGeometry& geometry() const { return geometry_; }
    const std::string& label() const { return label_; }

    bool empty() const { return events_.empty(); }
    std::size_t size() const { return events_.size(); }

    Timestamp first_time() const {
        if (events_.empty()) throw EmptyStream{};
        return events_.front().t;
    }
    Timestamp last_time() const {
        if (events_.empty()) throw EmptyStream{};
        return events_.back().t;
    }

    /// Events removed by the last timestamp adjustment (see apply_offset).
    std::int64_t dropped_events() const { return dropped_; }

private:
    EventStream(std::vector<Event> events, SensorGeometry geometry, std::string label)
        : events_(std::move(events)), geometry_(geometry), label_(std::move(label)) {}

    friend EventStream build_stream(std::vector<Event> events, SensorGeometry geometry,
                                    std::string label);
    friend EventStream apply_offset(const EventStream& stream, Timestamp delta_us);

    std::vector<Event> events_;
    SensorGeometry geometry_;
    std::string label_;
    std::int64_t dropped_ = 0;
};

/// Validates ordering, bounds, timestamps and polarities; never reorders.
/// Empty input yields a valid empty stream.
EventStream build_stream(std::vector<Event> events, SensorGeometry geometry, std::string label);

/// t_last - t_first. Throws EmptyStream.
Timestamp duration(const EventStream& stream);

}  // namespace evsync
