#include "evsync/types.hpp"

namespace evsync {

EventStream build_stream(std::vector<Event> events, SensorGeometry geometry, std::string label) {
    if (geometry.width < 1 || geometry.height < 1) {
        throw InvalidConfig("sensor geometry must be at least 1x1, got " +
                            std::to_string(geometry.width) + "x" + std::to_string(geometry.height));
    }
    for (std::size_t i = 0; i < events.size(); ++i) {
        const Event& e = events[i];
        if (e.t < 0) throw InvalidEvent(i, "negative timestamp " + std::to_string(e.t));
        if (e.p != 1 && e.p != -1) {
            throw InvalidEvent(i, "polarity must be +1 or -1, got " + std::to_string(int{e.p}));
        }
        if (!geometry.contains(e.x, e.y)) {
            throw OutOfBoundsPixel(i, e.x, e.y, geometry.width, geometry.height);
        }
        if (i > 0 && e.t < events[i - 1].t) {
            throw OutOfOrderTimestamps(i, events[i - 1].t, e.t);
        }
    }
    return EventStream(std::move(events), geometry, std::move(label));
}

Timestamp duration(const EventStream& stream) {
    if (stream.empty()) throw EmptyStream{};
    return stream.last_time() - stream.first_time();
}

}  // namespace evsync
