#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evsync/density.hpp"
#include "evsync/estimator.hpp"
#include "evsync/io.hpp"
#include "evsync/synchronizer.hpp"
#include "evsync/synthgen.hpp"
#include "evsync/types.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRejected = 2;
constexpr int kExitUsage = 64;

std::int64_t seconds_to_us(double seconds) {
    return std::llround(seconds * 1e6);
}

std::int64_t floor_to_tau(std::int64_t t, std::int64_t tau) {
    std::int64_t q = t / tau;
    if (t % tau != 0 && t < 0) --q;
    return q * tau;
}

std::int64_t ceil_to_tau(std::int64_t t, std::int64_t tau) {
    std::int64_t q = t / tau;
    if (t % tau != 0 && t > 0) ++q;
    return q * tau;
}

std::string safe_filename(std::string label) {
    for (char& c : label) {
        if (c == '/' || c == '\\') c = '_';
    }
    return label.empty() ? std::string("stream") : label;
}

// First analysis window of a stream, anchored at its first event.
evsync::DensityDistribution first_window_density(const evsync::EventStream& stream,
                                                 const evsync::SyncConfig& cfg) {
    const std::int64_t anchor = floor_to_tau(stream.first_time(), cfg.tau_us);
    return evsync::density_distribution(stream, anchor, cfg.window_us, cfg.tau_us);
}

struct SyncArgs {
    std::vector<std::string> files;
    std::int64_t tau_us = 1000;
    double window_s = 10.0;
    double epsilon = 0.0001;
    double percentile = 50.0;
    int max_windows = 6;
    std::string out_dir = ".";
    std::string report_path;
};

int run_sync(const SyncArgs& args) {
    evsync::SyncConfig cfg;
    cfg.tau_us = args.tau_us;
    cfg.window_us = seconds_to_us(args.window_s);
    cfg.epsilon = args.epsilon;
    cfg.percentile = args.percentile;
    cfg.max_windows = args.max_windows;

    std::vector<evsync::EventStream> streams;
    streams.reserve(args.files.size());
    for (const std::string& file : args.files) {
        streams.push_back(evsync::read_events_csv(file));
    }

    const evsync::SyncOutcome outcome = evsync::synchronize(streams, 0, cfg);

    std::filesystem::create_directories(args.out_dir);
    for (const evsync::EventStream& stream : outcome.streams) {
        const auto path =
            std::filesystem::path(args.out_dir) / (safe_filename(stream.label()) + ".synced.csv");
        evsync::write_events_csv(stream, path);
    }
    if (!args.report_path.empty()) {
        evsync::write_report_json(outcome.report, outcome.estimates, args.report_path);
    }

    bool all_accepted = true;
    for (const evsync::SyncEntry& entry : outcome.report.entries) {
        std::cout << entry.label << ": delta_us=" << entry.delta_vs_reference_us
                  << " min_dissimilarity=" << entry.min_dissimilarity
                  << " windows=" << entry.windows_consumed
                  << (entry.accepted ? " accepted" : " REJECTED");
        if (!entry.error.empty()) std::cout << " (" << entry.error << ")";
        std::cout << '\n';
        all_accepted = all_accepted && entry.accepted;
    }
    return all_accepted ? kExitOk : kExitRejected;
}

struct DensityArgs {
    std::string file;
    std::int64_t tau_us = 1000;
    double window_s = 0.0;  // 0 means "cover the whole stream"
    std::string out_path;
};

int run_density(const DensityArgs& args) {
    const evsync::EventStream stream = evsync::read_events_csv(args.file);
    std::int64_t anchor = 0;
    std::int64_t window_len = args.tau_us;
    if (!stream.empty()) {
        anchor = floor_to_tau(stream.first_time(), args.tau_us);
        if (args.window_s > 0.0) {
            window_len = seconds_to_us(args.window_s);
        } else {
            window_len = std::max(args.tau_us,
                                  ceil_to_tau(stream.last_time() - anchor + 1, args.tau_us));
        }
    } else if (args.window_s > 0.0) {
        window_len = seconds_to_us(args.window_s);
    }
    const evsync::DensityDistribution dist =
        evsync::density_distribution(stream, anchor, window_len, args.tau_us);
    evsync::export_density_table(dist, args.out_path);
    std::cout << "wrote " << dist.bins.size() << " bins (" << dist.total_events << " events) to "
              << args.out_path << '\n';
    return kExitOk;
}

struct GenArgs {
    int cameras = 0;
    std::vector<std::int64_t> offsets_us;
    double duration_s = 30.0;
    std::uint64_t seed = 0;
    double noise = 0.0;
    double jitter_us = 0.0;
    std::vector<double> gains;
    std::string out_dir;
};

int run_gen(const GenArgs& args) {
    constexpr std::int64_t tau = 1000;
    const std::int64_t duration_us = seconds_to_us(args.duration_s);

    evsync::ActivityProfile profile =
        evsync::make_profile(args.seed, duration_us, tau, evsync::ProfileKind::Bursts);

    // Delay the scene until every camera is recording so each stream sees the
    // full activity; recovery from the generated data is then well-posed.
    const std::int64_t max_offset =
        *std::max_element(args.offsets_us.begin(), args.offsets_us.end());
    const std::int64_t lead_us = ceil_to_tau(std::max<std::int64_t>(0, max_offset), tau) + tau;
    profile.samples.insert(profile.samples.begin(), static_cast<std::size_t>(lead_us / tau), 0.0);
    profile.duration_us += lead_us;

    evsync::GeneratorConfig cfg;
    cfg.offsets_us = args.offsets_us;
    cfg.count_noise = args.noise;
    cfg.timestamp_jitter_us = args.jitter_us;
    cfg.gains = args.gains.empty() ? std::vector<double>(args.offsets_us.size(), 1.0) : args.gains;

    const evsync::SyntheticStreams generated = evsync::sample_streams(profile, cfg);

    std::filesystem::create_directories(args.out_dir);
    nlohmann::ordered_json truth;
    truth["seed"] = args.seed;
    truth["tau_us"] = tau;
    truth["duration_us"] = profile.duration_us;
    truth["lead_us"] = lead_us;
    truth["count_noise"] = cfg.count_noise;
    truth["timestamp_jitter_us"] = cfg.timestamp_jitter_us;
    truth["offsets_us"] = generated.true_offsets_us;
    truth["gains"] = cfg.gains;
    truth["labels"] = nlohmann::ordered_json::array();
    for (const evsync::EventStream& stream : generated.streams) {
        const auto path = std::filesystem::path(args.out_dir) / (stream.label() + ".csv");
        evsync::write_events_csv(stream, path);
        truth["labels"].push_back(stream.label());
        std::cout << "wrote " << stream.size() << " events to " << path.string() << '\n';
    }
    std::ofstream truth_out(std::filesystem::path(args.out_dir) / "ground_truth.json");
    truth_out << truth.dump(2) << '\n';
    if (!truth_out) {
        std::cerr << "error: failed to write ground_truth.json\n";
        return kExitError;
    }
    return kExitOk;
}

int run_bounds(const std::string& file_a, const std::string& file_b) {
    const evsync::SyncConfig cfg;  // defaults: tau 1ms, T 10s, p 50
    const evsync::EventStream a = evsync::read_events_csv(file_a);
    const evsync::EventStream b = evsync::read_events_csv(file_b);
    const evsync::DensityDistribution m1 = first_window_density(a, cfg);
    const evsync::DensityDistribution m2 = first_window_density(b, cfg);
    const evsync::Timestamp q1 = evsync::percentile_timestamp(m1, cfg.percentile);
    const evsync::Timestamp q2 = evsync::percentile_timestamp(m2, cfg.percentile);
    const evsync::SearchBounds bounds =
        evsync::search_bounds(m1, m2, cfg.percentile, cfg.bound_fallback_halfwidth_us);
    std::cout << "Q1_us=" << q1 << " Q2_us=" << q2 << " a_us=" << bounds.a_us
              << " b_us=" << bounds.b_us << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal synchronization of event-camera streams by event-density alignment"};
    app.require_subcommand(1);

    SyncArgs sync_args;
    CLI::App* sync = app.add_subcommand("sync", "Synchronize streams against the first file");
    sync->add_option("files", sync_args.files, "reference.csv then one or more other.csv")
        ->required()
        ->expected(2, -1);
    sync->add_option("--tau-us", sync_args.tau_us, "bin width in microseconds");
    sync->add_option("--window-s", sync_args.window_s, "analysis window length in seconds");
    sync->add_option("--epsilon", sync_args.epsilon, "acceptance threshold");
    sync->add_option("--percentile", sync_args.percentile, "percentile for search bounds");
    sync->add_option("--max-windows", sync_args.max_windows, "retry cap");
    sync->add_option("--out-dir", sync_args.out_dir, "output directory");
    sync->add_option("--report", sync_args.report_path, "write a JSON report here");

    DensityArgs density_args;
    CLI::App* density = app.add_subcommand("density", "Export a density table for plotting");
    density->add_option("file", density_args.file, "input events CSV")->required();
    density->add_option("--tau-us", density_args.tau_us, "bin width in microseconds");
    density->add_option("--window-s", density_args.window_s,
                        "window length in seconds (default: whole stream)");
    density->add_option("-o,--output", density_args.out_path, "output table path")->required();

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate synthetic streams with known offsets");
    gen->add_option("--cameras", gen_args.cameras, "number of cameras")->required();
    gen->add_option("--offsets-us", gen_args.offsets_us, "per-camera start offsets, comma separated")
        ->required()
        ->delimiter(',');
    gen->add_option("--duration-s", gen_args.duration_s, "scene duration in seconds");
    gen->add_option("--seed", gen_args.seed, "generator seed")->required();
    gen->add_option("--noise", gen_args.noise, "relative count noise");
    gen->add_option("--jitter-us", gen_args.jitter_us, "timestamp jitter stddev");
    gen->add_option("--gains", gen_args.gains, "per-camera gains, comma separated")->delimiter(',');
    gen->add_option("--out-dir", gen_args.out_dir, "output directory")->required();

    std::vector<std::string> bounds_files;
    CLI::App* bounds = app.add_subcommand("bounds", "Print percentile search bounds (diagnostic)");
    bounds->add_option("files", bounds_files, "two event CSV files")->required()->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (sync->parsed()) return run_sync(sync_args);
        if (density->parsed()) return run_density(density_args);
        if (gen->parsed()) {
            if (gen_args.cameras < 1 ||
                gen_args.offsets_us.size() != static_cast<std::size_t>(gen_args.cameras)) {
                std::cerr << "error: --offsets-us must list exactly --cameras values\n";
                return kExitUsage;
            }
            if (!gen_args.gains.empty() &&
                gen_args.gains.size() != static_cast<std::size_t>(gen_args.cameras)) {
                std::cerr << "error: --gains must list exactly --cameras values\n";
                return kExitUsage;
            }
            return run_gen(gen_args);
        }
        if (bounds->parsed()) return run_bounds(bounds_files[0], bounds_files[1]);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitUsage;
}
