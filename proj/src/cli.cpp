#include "sedscore/cli.hpp"

#include "sedscore/errors.hpp"
#include "sedscore/metrics.hpp"
#include "sedscore/report.hpp"
#include "sedscore/svg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <vector>

namespace sedscore {

namespace {

namespace fs = std::filesystem;

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    return out;
}

void flush_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
    for (const std::string& w : warnings) err << "warning: " << w << '\n';
}

struct LoadedPair {
    Corpus refs;
    Corpus dets;
};

LoadedPair load_pair(const RunConfig& cfg, std::ostream& err) {
    const char delim = cfg.csv ? kCsvDelimiter : kTabDelimiter;
    const std::vector<FileMeta> files = load_durations(cfg.durations_path, delim);
    std::vector<std::string> warnings;
    Corpus refs = Corpus::build(load_event_table(cfg.refs_path, delim), files, ClipPolicy::Clip,
                                &warnings);
    Corpus dets = Corpus::build(load_event_table(cfg.dets_path, delim), files, ClipPolicy::Clip,
                                &warnings);
    flush_warnings(warnings, err);
    return {std::move(refs), std::move(dets)};
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const char delim = cfg.csv ? kCsvDelimiter : kTabDelimiter;
    auto [refs, dets] = load_pair(cfg, err);

    std::vector<ClassCounts> counts;
    std::string description;
    if (cfg.criterion == "collar" || cfg.criterion == "collar-onset") {
        CollarConfig collar = cfg.collar;
        collar.require_offset = cfg.criterion == "collar";
        collar.validate();
        counts = collar_counts(refs, dets, collar);
        description = cfg.criterion == "collar"
                          ? "collar (onset " + format_time(collar.onset_collar) +
                                " s, offset max(" + format_time(collar.offset_collar_floor) +
                                " s, " + format_time(collar.offset_collar_ratio) + " * dur))"
                          : "collar-onset (onset " + format_time(collar.onset_collar) + " s)";
    } else if (cfg.criterion == "segment") {
        cfg.segment.validate();
        counts = segment_counts(refs, dets, cfg.segment);
        description = "segment (" + format_time(cfg.segment.segment_size) + " s)";
    } else if (cfg.criterion == "intersection") {
        cfg.intersection.validate();
        counts = to_class_counts(intersection_counts(refs, dets, cfg.intersection));
        description = "intersection (dtc " + format_time(cfg.intersection.rho_dtc) + ", gtc " +
                      format_time(cfg.intersection.rho_gtc) + ", cttc " +
                      format_time(cfg.intersection.rho_cttc) + ")";
    } else {
        throw EvalError("unknown criterion '" + cfg.criterion + "'");
    }

    const MacroScore score = macro_score(counts);
    out << "criterion: " << description << '\n';
    write_score_table(score, out);
    if (!cfg.scores_out.empty()) {
        auto f = open_output(cfg.scores_out);
        write_score_tsv(score, f, delim);
    }
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const char delim = cfg.csv ? kCsvDelimiter : kTabDelimiter;
    auto [refs, dets] = load_pair(cfg, err);

    const CompareMatrix m =
        compare_criteria(refs, dets, cfg.collar, cfg.segment, cfg.intersection);
    write_compare_table(m, out);
    if (!cfg.matrix_out.empty()) {
        auto f = open_output(cfg.matrix_out);
        write_compare_tsv(m, f, delim);
    }
    if (!cfg.svg_out.empty()) {
        auto f = open_output(cfg.svg_out);
        f << svg_bar_chart(m.columns, m.macro_f1, "Macro F1 by criterion");
    }
    return kExitOk;
}

int cmd_psds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const char delim = cfg.csv ? kCsvDelimiter : kTabDelimiter;
    cfg.psds.validate();
    const std::vector<FileMeta> files = load_durations(cfg.durations_path, delim);
    std::vector<std::string> warnings;
    const Corpus refs = Corpus::build(load_event_table(cfg.refs_path, delim), files,
                                      ClipPolicy::Clip, &warnings);
    const OperatingPointSet ops =
        load_operating_points(cfg.ops_dir, files, delim, ClipPolicy::Clip, &warnings);
    flush_warnings(warnings, err);

    std::vector<std::pair<std::string, IntersectionCounts>> op_counts;
    op_counts.reserve(ops.points.size());
    for (const auto& [op_id, dets] : ops.points) {
        op_counts.emplace_back(op_id, intersection_counts(refs, dets, cfg.psds.intersection));
    }
    const PsdRoc roc = psds_from_counts(op_counts, refs, cfg.psds);

    out << "operating points: " << ops.points.size() << '\n';
    out << "scored classes: " << roc.classes.size() << '\n';
    out << "dtc: " << format_time(cfg.psds.intersection.rho_dtc) << '\n';
    out << "gtc: " << format_time(cfg.psds.intersection.rho_gtc) << '\n';
    out << "cttc: " << format_time(cfg.psds.intersection.rho_cttc) << '\n';
    out << "alpha_ct: " << format_time(cfg.psds.alpha_ct) << '\n';
    out << "alpha_st: " << format_time(cfg.psds.alpha_st) << '\n';
    out << "e_max: " << format_time(cfg.psds.e_max) << '\n';
    out << "PSDS " << fixed6(roc.psds) << '\n';

    if (!cfg.roc_out.empty()) {
        auto f = open_output(cfg.roc_out);
        write_roc_tsv(roc, f, delim);
    }
    if (!cfg.svg_out.empty()) {
        auto f = open_output(cfg.svg_out);
        f << svg_psd_roc(roc, "PSD-ROC");
    }
    return kExitOk;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const char delim = cfg.csv ? kCsvDelimiter : kTabDelimiter;
    const std::string ext = cfg.csv ? ".csv" : ".tsv";

    std::vector<ClassProfile> profiles;
    if (!cfg.profile_file.empty()) {
        profiles = load_profiles(cfg.profile_file, delim);
    } else if (cfg.profile == "desed-like") {
        profiles = desed_like_profiles();
    } else {
        throw EvalError("unknown profile '" + cfg.profile + "' (built-in: desed-like)");
    }

    std::vector<std::string> warnings;
    const Corpus refs =
        generate_reference(profiles, cfg.n_files, cfg.file_duration, cfg.seed, &warnings);
    flush_warnings(warnings, err);

    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw ParseError("cannot create directory '" + cfg.out_dir + "': " + ec.message());

    const fs::path dir(cfg.out_dir);
    const fs::path refs_path = dir / ("refs" + ext);
    const fs::path durations_path = dir / ("durations" + ext);
    {
        auto f = open_output(refs_path.string());
        write_event_table(refs, f, delim);
    }
    {
        std::vector<FileMeta> files;
        for (const auto& [id, meta] : refs.files()) files.push_back(meta);
        auto f = open_output(durations_path.string());
        write_durations(files, f, delim);
    }
    out << "wrote " << refs_path.string() << " (" << refs.event_count() << " events)\n";
    out << "wrote " << durations_path.string() << " (" << refs.files().size() << " files)\n";

    if (cfg.write_dets) {
        const Corpus dets = degrade(refs, cfg.degrade_params);
        const fs::path dets_path = dir / ("dets" + ext);
        auto f = open_output(dets_path.string());
        write_event_table(dets, f, delim);
        out << "wrote " << dets_path.string() << " (" << dets.event_count() << " events)\n";
    }

    if (cfg.n_ops > 0) {
        const OperatingPointSet set =
            make_operating_points(refs, cfg.degrade_params, cfg.n_ops, cfg.sweep);
        const fs::path ops_dir = dir / "ops";
        fs::create_directories(ops_dir, ec);
        if (ec) {
            throw ParseError("cannot create directory '" + ops_dir.string() +
                             "': " + ec.message());
        }
        for (const auto& [op_id, dets] : set.points) {
            auto f = open_output((ops_dir / (op_id + ext)).string());
            write_event_table(dets, f, delim);
        }
        out << "wrote " << set.points.size() << " operating points under " << ops_dir.string()
            << '\n';
    }
    return kExitOk;
}

} // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == "evaluate") return cmd_evaluate(cfg, out, err);
        if (cfg.command == "compare") return cmd_compare(cfg, out, err);
        if (cfg.command == "psds") return cmd_psds(cfg, out, err);
        if (cfg.command == "synth") return cmd_synth(cfg, out, err);
        err << "error: unknown command '" << cfg.command << "'\n";
        return kExitParseError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitParseError;
    } catch (const EvalError& e) {
        err << "error: " << e.what() << '\n';
        return kExitEvalError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitEvalError;
    }
}

namespace {

void add_collar_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--onset-collar", cfg.collar.onset_collar,
                    "Onset tolerance in seconds (default 0.2)");
    cmd->add_option("--offset-collar-floor", cfg.collar.offset_collar_floor,
                    "Minimum offset tolerance in seconds (default 0.2)");
    cmd->add_option("--offset-collar-ratio", cfg.collar.offset_collar_ratio,
                    "Offset tolerance as a fraction of the reference duration (default 0.2)");
}

void add_intersection_options(CLI::App* cmd, IntersectionConfig& icfg) {
    cmd->add_option("--dtc", icfg.rho_dtc, "Detection tolerance ratio (default 0.5)");
    cmd->add_option("--gtc", icfg.rho_gtc, "Ground truth tolerance ratio (default 0.5)");
    cmd->add_option("--cttc", icfg.rho_cttc, "Cross-trigger tolerance ratio (default 0.3)");
}

void add_pair_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--refs", cfg.refs_path, "Reference event table")->required();
    cmd->add_option("--dets", cfg.dets_path, "Detection event table")->required();
    cmd->add_option("--durations", cfg.durations_path, "Per-file duration table")->required();
    cmd->add_flag("--csv", cfg.csv, "Read and write comma-separated tables");
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polyphonic sound event detection scoring"};
    app.require_subcommand(1);

    RunConfig cfg;

    CLI::App* ev = app.add_subcommand("evaluate", "Score detections under one criterion");
    add_pair_options(ev, cfg);
    ev->add_option("--criterion", cfg.criterion,
                   "collar | collar-onset | segment | intersection (default intersection)")
        ->check(CLI::IsMember({"collar", "collar-onset", "segment", "intersection"}));
    add_collar_options(ev, cfg);
    ev->add_option("--segment-size", cfg.segment.segment_size,
                   "Segment length in seconds (default 1.0)");
    add_intersection_options(ev, cfg.intersection);
    ev->add_option("--out", cfg.scores_out, "Write machine-readable scores to this path");

    CLI::App* cmp = app.add_subcommand("compare", "Score under all eight criteria");
    add_pair_options(cmp, cfg);
    add_collar_options(cmp, cfg);
    cmp->add_option("--segment-size", cfg.segment.segment_size,
                    "Segment length in seconds (default 1.0)");
    cmp->add_option("--cttc", cfg.intersection.rho_cttc,
                    "Cross-trigger tolerance ratio for the IB runs (default 0.3)");
    cmp->add_option("--matrix", cfg.matrix_out, "Write the class-by-criterion matrix here");
    cmp->add_option("--svg", cfg.svg_out, "Write a macro-F1 bar chart here");

    CLI::App* ps = app.add_subcommand("psds", "Integrate a PSD-ROC over operating points");
    ps->add_option("--refs", cfg.refs_path, "Reference event table")->required();
    ps->add_option("--durations", cfg.durations_path, "Per-file duration table")->required();
    ps->add_option("--ops", cfg.ops_dir, "Directory of per-operating-point event tables")
        ->required();
    ps->add_flag("--csv", cfg.csv, "Read and write comma-separated tables");
    add_intersection_options(ps, cfg.psds.intersection);
    ps->add_option("--alpha-ct", cfg.psds.alpha_ct, "Cross-trigger weight (default 0)");
    ps->add_option("--alpha-st", cfg.psds.alpha_st, "Instability weight (default 0)");
    ps->add_option("--e-max", cfg.psds.e_max, "FP-rate axis bound per hour (default 100)");
    ps->add_option("--roc", cfg.roc_out, "Write ROC breakpoints to this path");
    ps->add_option("--svg", cfg.svg_out, "Write a PSD-ROC plot to this path");

    CLI::App* sy = app.add_subcommand("synth", "Generate a synthetic corpus");
    sy->add_option("--out", cfg.out_dir, "Output directory")->required();
    sy->add_option("--profile", cfg.profile, "Built-in profile name (default desed-like)");
    sy->add_option("--profile-file", cfg.profile_file, "Class profile table overriding --profile");
    sy->add_option("--seed", cfg.seed, "Generator seed (default 0)");
    sy->add_option("--files", cfg.n_files, "Number of files (default 10)");
    sy->add_option("--file-duration", cfg.file_duration, "File length in seconds (default 60)");
    sy->add_flag("--csv", cfg.csv, "Write comma-separated tables");
    sy->add_flag("--dets", cfg.write_dets, "Also write one degraded detection table");
    sy->add_option("--ops", cfg.n_ops, "Write this many operating points along the sweep");
    sy->add_option("--onset-jitter-abs", cfg.degrade_params.onset_jitter_abs,
                   "Onset jitter stddev in seconds");
    sy->add_option("--onset-jitter-rel", cfg.degrade_params.onset_jitter_rel,
                   "Onset jitter stddev as a fraction of the duration");
    sy->add_option("--split-prob", cfg.degrade_params.split_prob, "Split probability");
    sy->add_option("--gap-size", cfg.degrade_params.gap_size,
                   "Gap between split halves in seconds (default 0.2)");
    sy->add_option("--merge-prob", cfg.degrade_params.merge_prob, "Merge probability");
    sy->add_option("--delete-prob", cfg.degrade_params.delete_prob, "Deletion probability");
    sy->add_option("--insert-rate", cfg.degrade_params.insert_rate,
                   "Spurious events per hour");
    sy->add_option("--duration-scale", cfg.degrade_params.duration_scale,
                   "Duration scale factor (default 1)");
    sy->add_option("--delete-from", cfg.sweep.delete_from,
                   "Sweep start deletion probability (default 0.9)");
    sy->add_option("--delete-to", cfg.sweep.delete_to,
                   "Sweep end deletion probability (default 0)");
    sy->add_option("--insert-from", cfg.sweep.insert_from,
                   "Sweep start insertion rate per hour (default 0)");
    sy->add_option("--insert-to", cfg.sweep.insert_to,
                   "Sweep end insertion rate per hour (default 50)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            return app.exit(e, out, err);
        }
        err << "error: " << e.what() << '\n';
        return kExitParseError;
    }

    for (CLI::App* sub : {ev, cmp, ps, sy}) {
        if (sub->parsed()) cfg.command = sub->get_name();
    }
    // synth seeds the degrade pipeline from the corpus seed
    cfg.degrade_params.seed = derive_seed(cfg.seed, 0x646567ull);
    return run_command(cfg, out, err);
}

} // namespace sedscore
