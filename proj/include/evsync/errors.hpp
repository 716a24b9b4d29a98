#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace evsync {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyStream : Error {
    EmptyStream() : Error("stream contains no events") {}
};

struct OutOfOrderTimestamps : Error {
    std::size_t index;
    OutOfOrderTimestamps(std::size_t idx, std::int64_t t_prev, std::int64_t t_curr)
        : Error("timestamps out of order at event index " + std::to_string(idx) +
                " (t=" + std::to_string(t_curr) + " after t=" + std::to_string(t_prev) + ")"),
          index(idx) {}
};

struct OutOfBoundsPixel : Error {
    std::size_t index;
    std::int32_t x;
    std::int32_t y;
    OutOfBoundsPixel(std::size_t idx, std::int32_t px, std::int32_t py,
                     std::int32_t width, std::int32_t height)
        : Error("pixel (" + std::to_string(px) + "," + std::to_string(py) +
                ") at event index " + std::to_string(idx) + " outside " +
                std::to_string(width) + "x" + std::to_string(height) + " sensor"),
          index(idx), x(px), y(py) {}
};

struct InvalidEvent : Error {
    std::size_t index;
    InvalidEvent(std::size_t idx, const std::string& why)
        : Error("invalid event at index " + std::to_string(idx) + ": " + why), index(idx) {}
};

struct InvalidBinWidth : Error {
    explicit InvalidBinWidth(std::int64_t tau)
        : Error("bin width must be positive, got " + std::to_string(tau) + "us") {}
};

struct WindowNotMultipleOfTau : Error {
    WindowNotMultipleOfTau(std::int64_t window, std::int64_t tau)
        : Error("window length " + std::to_string(window) +
                "us is not a positive multiple of tau=" + std::to_string(tau) + "us") {}
};

struct EmptyDistribution : Error {
    EmptyDistribution() : Error("density distribution holds no events") {}
};

struct MismatchedTau : Error {
    MismatchedTau(std::int64_t a, std::int64_t b)
        : Error("distributions use different bin widths (" + std::to_string(a) +
                "us vs " + std::to_string(b) + "us)") {}
};

struct MisalignedBins : Error {
    explicit MisalignedBins(const std::string& msg) : Error(msg) {}
};

struct NoOverlap : Error {
    NoOverlap() : Error("shifted distributions have no overlapping bins") {}
};

struct NoValidCandidate : Error {
    explicit NoValidCandidate(const std::string& why)
        : Error("no valid offset candidate: " + why) {}
};

struct StreamExhausted : Error {
    explicit StreamExhausted(const std::string& label)
        : Error("stream '" + label + "' has no events left for the next window") {}
};

struct TooFewStreams : Error {
    explicit TooFewStreams(std::size_t n)
        : Error("synchronization needs at least 2 streams, got " + std::to_string(n)) {}
};

struct InvalidConfig : Error {
    explicit InvalidConfig(const std::string& why) : Error("invalid config: " + why) {}
};

struct InvalidDuration : Error {
    InvalidDuration(std::int64_t duration, std::int64_t tau)
        : Error("duration " + std::to_string(duration) +
                "us is not a positive multiple of tau=" + std::to_string(tau) + "us") {}
};

struct MalformedHeader : Error {
    explicit MalformedHeader(const std::string& why) : Error("malformed header: " + why) {}
};

struct MalformedRow : Error {
    std::size_t line;
    MalformedRow(std::size_t line_no, const std::string& why)
        : Error("malformed row at line " + std::to_string(line_no) + ": " + why), line(line_no) {}
};

struct IoFailure : Error {
    explicit IoFailure(const std::string& why) : Error("i/o failure: " + why) {}
};

}  // namespace evsync
