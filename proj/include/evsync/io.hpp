#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "evsync/density.hpp"
#include "evsync/synchronizer.hpp"
#include "evsync/synthgen.hpp"
#include "evsync/types.hpp"

namespace evsync {

/// Decoded form of the event CSV header line
/// `# evsync v<version> width=<w> height=<h> label=<s>`. Only version 1 is
/// readable or writable.
struct EventFileHeader {
    int format_version = 1;
    std::int32_t width = 0;
    std::int32_t height = 0;
    std::string label;
};

EventFileHeader parse_event_header(const std::string& line);
std::string format_event_header(const EventFileHeader& header);

/// Event CSV: the header line above followed by rows `t_us,x,y,p` with p in
/// {1,-1}. read(write(s)) == s.
EventStream read_events_csv(const std::filesystem::path& path);
void write_events_csv(const EventStream& stream, const std::filesystem::path& path);

/// Report JSON with a stable key order:
/// {reference, entries:[{label, delta_us, min_dissimilarity, accepted,
/// windows_consumed, bounds:{a_us,b_us}}]}. estimates must parallel
/// report.entries (the reference carries an identity estimate).
std::string report_to_json(const SyncReport& report, const std::vector<OffsetEstimate>& estimates);
void write_report_json(const SyncReport& report, const std::vector<OffsetEstimate>& estimates,
                       const std::filesystem::path& path);

/// Plot-data export: header `t_ms,mass`, one row per bin.
void export_density_table(const DensityDistribution& dist, const std::filesystem::path& path);

/// Activity profile file: a header line
/// `# evsync-profile v1 tau_us=<t> duration_us=<d> seed=<s>` followed by one
/// activity sample per line. read(write(p)) == p.
ActivityProfile read_profile_csv(const std::filesystem::path& path);
void write_profile_csv(const ActivityProfile& profile, const std::filesystem::path& path);

}  // namespace evsync
