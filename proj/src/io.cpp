#include "evsync/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <string_view>
#include <system_error>

#include <json.hpp>

namespace evsync {

namespace {

// Consumes an integer at the front of `view`, advancing it past the digits.
template <typename Int>
bool take_int(std::string_view& view, Int& out) {
    const auto* begin = view.data();
    const auto* end = view.data() + view.size();
    const auto result = std::from_chars(begin, end, out);
    if (result.ec != std::errc{}) return false;
    view.remove_prefix(static_cast<std::size_t>(result.ptr - begin));
    return true;
}

bool take_literal(std::string_view& view, std::string_view literal) {
    if (!view.starts_with(literal)) return false;
    view.remove_prefix(literal.size());
    return true;
}

std::string format_double(double value) {
    std::array<char, 32> buf;
    const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), result.ptr);
}

}  // namespace

EventFileHeader parse_event_header(const std::string& line) {
    std::string_view view(line);
    if (!take_literal(view, "# evsync v")) {
        throw MalformedHeader("expected '# evsync v1 ...', got '" + line + "'");
    }
    EventFileHeader header;
    if (!take_int(view, header.format_version)) throw MalformedHeader("missing format version");
    if (header.format_version != 1) {
        throw MalformedHeader("unsupported format version " +
                              std::to_string(header.format_version));
    }
    if (!take_literal(view, " width=") || !take_int(view, header.width)) {
        throw MalformedHeader("missing width");
    }
    if (!take_literal(view, " height=") || !take_int(view, header.height)) {
        throw MalformedHeader("missing height");
    }
    if (!take_literal(view, " label=")) throw MalformedHeader("missing label");
    header.label = std::string(view);  // label runs to end of line, may be empty
    return header;
}

std::string format_event_header(const EventFileHeader& header) {
    return "# evsync v" + std::to_string(header.format_version) +
           " width=" + std::to_string(header.width) +
           " height=" + std::to_string(header.height) + " label=" + header.label;
}

EventStream read_events_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open '" + path.string() + "' for reading");

    std::string line;
    if (!std::getline(in, line)) throw MalformedHeader("file is empty");
    const EventFileHeader header = parse_event_header(line);
    const SensorGeometry geometry{header.width, header.height};
    std::string label = header.label;

    std::vector<Event> events;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view row(line);
        Event e;
        int polarity = 0;
        const bool ok = take_int(row, e.t) && take_literal(row, ",") && take_int(row, e.x) &&
                        take_literal(row, ",") && take_int(row, e.y) && take_literal(row, ",") &&
                        take_int(row, polarity) && row.empty();
        if (!ok) throw MalformedRow(line_no, "expected 't_us,x,y,p', got '" + line + "'");
        if (polarity != 1 && polarity != -1) {
            throw MalformedRow(line_no, "polarity must be 1 or -1, got " + std::to_string(polarity));
        }
        e.p = static_cast<std::int8_t>(polarity);
        events.push_back(e);
    }
    return build_stream(std::move(events), geometry, std::move(label));
}

void write_events_csv(const EventStream& stream, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open '" + path.string() + "' for writing");

    out << format_event_header(EventFileHeader{1, stream.geometry().width,
                                               stream.geometry().height, stream.label()})
        << '\n';

    std::array<char, 64> buf;
    for (const Event& e : stream.events()) {
        char* p = buf.data();
        p = std::to_chars(p, buf.data() + buf.size(), e.t).ptr;
        *p++ = ',';
        p = std::to_chars(p, buf.data() + buf.size(), e.x).ptr;
        *p++ = ',';
        p = std::to_chars(p, buf.data() + buf.size(), e.y).ptr;
        *p++ = ',';
        p = std::to_chars(p, buf.data() + buf.size(), int{e.p}).ptr;
        *p++ = '\n';
        out.write(buf.data(), p - buf.data());
    }
    if (!out) throw IoFailure("write to '" + path.string() + "' failed");
}

std::string report_to_json(const SyncReport& report,
                           const std::vector<OffsetEstimate>& estimates) {
    if (estimates.size() != report.entries.size()) {
        throw InvalidConfig("report has " + std::to_string(report.entries.size()) +
                            " entries but " + std::to_string(estimates.size()) + " estimates");
    }
    nlohmann::ordered_json doc;
    doc["reference"] = report.reference_label;
    doc["entries"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
        const SyncEntry& entry = report.entries[i];
        nlohmann::ordered_json j;
        j["label"] = entry.label;
        j["delta_us"] = entry.delta_vs_reference_us;
        j["min_dissimilarity"] = entry.min_dissimilarity;
        j["accepted"] = entry.accepted;
        j["windows_consumed"] = entry.windows_consumed;
        j["bounds"] = {{"a_us", estimates[i].bounds.a_us}, {"b_us", estimates[i].bounds.b_us}};
        if (!entry.error.empty()) j["error"] = entry.error;
        doc["entries"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

void write_report_json(const SyncReport& report, const std::vector<OffsetEstimate>& estimates,
                       const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open '" + path.string() + "' for writing");
    out << report_to_json(report, estimates);
    if (!out) throw IoFailure("write to '" + path.string() + "' failed");
}

ActivityProfile read_profile_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open '" + path.string() + "' for reading");

    std::string line;
    if (!std::getline(in, line)) throw MalformedHeader("file is empty");
    std::string_view header(line);
    if (!take_literal(header, "# evsync-profile v")) {
        throw MalformedHeader("expected '# evsync-profile v1 ...', got '" + line + "'");
    }
    int version = 0;
    if (!take_int(header, version) || version != 1) {
        throw MalformedHeader("unsupported profile version");
    }
    ActivityProfile profile;
    if (!take_literal(header, " tau_us=") || !take_int(header, profile.tau_us)) {
        throw MalformedHeader("missing tau_us");
    }
    if (!take_literal(header, " duration_us=") || !take_int(header, profile.duration_us)) {
        throw MalformedHeader("missing duration_us");
    }
    if (!take_literal(header, " seed=") || !take_int(header, profile.seed)) {
        throw MalformedHeader("missing seed");
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        double value = 0.0;
        const auto result = std::from_chars(line.data(), line.data() + line.size(), value);
        if (result.ec != std::errc{} || result.ptr != line.data() + line.size()) {
            throw MalformedRow(line_no, "expected one activity value, got '" + line + "'");
        }
        profile.samples.push_back(value);
    }
    validate_profile(profile);
    return profile;
}

void write_profile_csv(const ActivityProfile& profile, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open '" + path.string() + "' for writing");
    out << "# evsync-profile v1 tau_us=" << profile.tau_us << " duration_us="
        << profile.duration_us << " seed=" << profile.seed << '\n';
    for (double v : profile.samples) out << format_double(v) << '\n';
    if (!out) throw IoFailure("write to '" + path.string() + "' failed");
}

void export_density_table(const DensityDistribution& dist, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open '" + path.string() + "' for writing");
    out << "t_ms,mass\n";
    for (std::size_t k = 0; k < dist.bins.size(); ++k) {
        const double t_ms =
            static_cast<double>(dist.origin_us + static_cast<std::int64_t>(k) * dist.tau_us) /
            1000.0;
        out << format_double(t_ms) << ',' << format_double(dist.bins[k]) << '\n';
    }
    if (!out) throw IoFailure("write to '" + path.string() + "' failed");
}

}  // namespace evsync
