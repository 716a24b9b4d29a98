#pragma once

#include <cstdint>
#include <vector>

#include "evsync/types.hpp"

namespace evsync {

enum class ProfileKind { RandomWalk, Bursts, Sinusoid };

/// Scalar scene-activity per bin: the lumped driver of event production
/// shared by every camera. No per-pixel field is simulated; the estimator
/// only ever sees temporal densities.
struct ActivityProfile {
    std::vector<double> samples;
    std::int64_t tau_us = 1000;
    std::int64_t duration_us = 0;
    std::uint64_t seed = 0;
};

struct GeneratorConfig {
    double contrast_threshold = 1.0;  // C, log-intensity change per event
    SensorGeometry geometry{346, 260};
    std::vector<Timestamp> offsets_us;  // per-camera start time in world time
    double count_noise = 0.0;           // relative Poisson-style count jitter
    double timestamp_jitter_us = 0.0;   // gaussian per-event timestamp jitter
    std::vector<double> gains;          // per-camera sensitivity multiplier

    void validate() const;
};

struct SyntheticStreams {
    std::vector<EventStream> streams;       // one per camera, each in its own running time
    std::vector<Timestamp> true_offsets_us; // injected ground truth, per camera
};

/// Deterministic profile of the requested kind. Samples are non-negative and
/// at least 10% of them are strictly positive.
ActivityProfile make_profile(std::uint64_t seed, std::int64_t duration_us, std::int64_t tau_us,
                             ProfileKind kind);

/// Throws InvalidConfig when the profile violates its invariants.
void validate_profile(const ActivityProfile& profile);

/// Samples one stream per camera from the shared profile. Per bin, camera j
/// produces floor(gain_j * activity / C) events (perturbed by count_noise),
/// timestamped uniformly within the bin plus jitter, then re-expressed in the
/// camera's running time t = world - offsets[j]; events before the camera's
/// start are dropped.
SyntheticStreams sample_streams(const ActivityProfile& profile, const GeneratorConfig& cfg);

}  // namespace evsync
