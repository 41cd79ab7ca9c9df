#include "sedscore/synth.hpp"

#include "sedscore/errors.hpp"
#include "sedscore/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace sedscore {

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + uniform() * (hi - lo);
}

double Rng::normal(double mean, double stddev) {
    // Box-Muller; the first uniform is shifted into (0, 1]
    constexpr double two_pi = 6.283185307179586;
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    return mean + stddev * z;
}

std::int64_t Rng::poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    // Knuth multiplication method; means here stay small
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= uniform();
    } while (p > limit);
    return k - 1;
}

std::size_t Rng::index(std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

void ClassProfile::validate() const {
    if (class_label.empty()) throw EvalError("profile with empty class label");
    if (!(mean_dur > 0.0)) throw EvalError("profile mean duration must be positive: " + class_label);
    if (std_dur < 0.0) throw EvalError("profile duration stddev must be >= 0: " + class_label);
    if (events_per_file < 0.0) throw EvalError("profile events per file must be >= 0: " + class_label);
}

std::vector<ClassProfile> desed_like_profiles() {
    // mean/std/median duration statistics of a household soundscape
    // corpus; events-per-file rates are toolkit defaults
    return {
        {"Dishes", 0.6, 0.7, 0.33, 2.5},
        {"Dog", 0.7, 3.3, 0.39, 2.0},
        {"Cat", 1.1, 1.0, 0.74, 1.5},
        {"Speech", 1.4, 2.2, 1.04, 3.0},
        {"Alarm_bell_ringing", 2.4, 2.9, 0.83, 1.5},
        {"Electric_shaver_toothbrush", 5.4, 2.1, 5.76, 0.8},
        {"Blender", 5.6, 2.9, 5.96, 0.8},
        {"Running_water", 6.4, 1.1, 7.85, 1.0},
        {"Frying", 8.7, 3.6, 10.00, 0.7},
        {"Vacuum_cleaner", 8.3, 0.6, 9.96, 0.7},
    };
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !s.empty();
}

} // namespace

std::vector<ClassProfile> parse_profiles(std::istream& in, char delimiter) {
    std::vector<ClassProfile> profiles;
    std::string line;
    std::size_t line_no = 0;
    bool first_row = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        while (true) {
            std::size_t pos = line.find(delimiter, start);
            if (pos == std::string::npos) {
                f.push_back(trim(line.substr(start)));
                break;
            }
            f.push_back(trim(line.substr(start, pos - start)));
            start = pos + 1;
        }
        if (f.size() != 5) {
            throw ParseError("profile line " + std::to_string(line_no) +
                             ": expected 5 columns (class, mean, std, median, events_per_file)");
        }
        ClassProfile p;
        p.class_label = f[0];
        const bool ok = parse_number(f[1], p.mean_dur) && parse_number(f[2], p.std_dur) &&
                        parse_number(f[3], p.median_dur) && parse_number(f[4], p.events_per_file);
        if (!ok) {
            if (first_row) {
                first_row = false;
                continue;
            }
            throw ParseError("profile line " + std::to_string(line_no) + ": non-numeric field");
        }
        first_row = false;
        try {
            p.validate();
        } catch (const EvalError& e) {
            throw ParseError("profile line " + std::to_string(line_no) + ": " + e.what());
        }
        profiles.push_back(std::move(p));
    }
    if (profiles.empty()) throw ParseError("profile table is empty");
    return profiles;
}

std::vector<ClassProfile> load_profiles(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open profile table '" + path + "'");
    try {
        return parse_profiles(in, delimiter);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_profiles(const std::vector<ClassProfile>& profiles, std::ostream& out,
                    char delimiter) {
    for (const ClassProfile& p : profiles) {
        out << p.class_label << delimiter << format_time(p.mean_dur) << delimiter
            << format_time(p.std_dur) << delimiter << format_time(p.median_dur) << delimiter
            << format_time(p.events_per_file) << '\n';
    }
}

namespace {

constexpr double kMinEventDuration = 0.05;
constexpr int kDurationResampleBound = 20;

std::string synth_file_id(std::size_t index) {
    std::ostringstream id;
    id << "synth_";
    std::string num = std::to_string(index);
    for (std::size_t i = num.size(); i < 4; ++i) id << '0';
    id << num << ".wav";
    return id.str();
}

} // namespace

Corpus generate_reference(const std::vector<ClassProfile>& profiles,
                          std::size_t n_files, double file_duration,
                          std::uint64_t seed,
                          std::vector<std::string>* warnings) {
    if (profiles.empty()) throw EvalError("no class profiles given");
    for (const ClassProfile& p : profiles) p.validate();
    if (n_files == 0) throw EvalError("n_files must be >= 1");
    if (!(file_duration > 0.0)) throw EvalError("file duration must be positive");

    std::vector<Event> events;
    std::vector<FileMeta> files;
    files.reserve(n_files);
    for (std::size_t i = 0; i < n_files; ++i) {
        const std::string file_id = synth_file_id(i);
        files.push_back({file_id, file_duration});
        Rng rng(derive_seed(seed, i));
        for (const ClassProfile& p : profiles) {
            const std::int64_t count = rng.poisson(p.events_per_file);
            for (std::int64_t k = 0; k < count; ++k) {
                double dur = std::max(kMinEventDuration, rng.normal(p.mean_dur, p.std_dur));
                int tries = 0;
                while (dur > file_duration && tries < kDurationResampleBound) {
                    dur = std::max(kMinEventDuration, rng.normal(p.mean_dur, p.std_dur));
                    ++tries;
                }
                if (dur > file_duration) {
                    if (warnings) {
                        warnings->push_back("skipped " + p.class_label + " event in " + file_id +
                                            ": sampled duration exceeds file duration");
                    }
                    continue;
                }
                const double onset = rng.uniform(0.0, file_duration - dur);
                const double offset = std::min(onset + dur, file_duration);
                events.push_back({file_id, p.class_label, onset, offset});
            }
        }
    }
    return Corpus::build(events, files, ClipPolicy::Strict, nullptr);
}

void DegradeParams::validate() const {
    auto prob = [](double p, const char* name) {
        if (p < 0.0 || p > 1.0) throw EvalError(std::string(name) + " must be in [0, 1]");
    };
    prob(split_prob, "split_prob");
    prob(merge_prob, "merge_prob");
    prob(delete_prob, "delete_prob");
    if (onset_jitter_abs < 0.0) throw EvalError("onset_jitter_abs must be >= 0");
    if (onset_jitter_rel < 0.0) throw EvalError("onset_jitter_rel must be >= 0");
    if (gap_size < 0.0) throw EvalError("gap_size must be >= 0");
    if (insert_rate < 0.0) throw EvalError("insert_rate must be >= 0");
    if (!(duration_scale > 0.0)) throw EvalError("duration_scale must be positive");
}

namespace {

// One reference event after jitter/split/scale, with its deletion mark.
// The mark is compared against delete_prob at evaluation time so a
// family of operating points can share one set of draws.
struct ShapedEvent {
    double delete_mark{0.0};
    std::vector<Event> parts;
};

struct FileShape {
    std::map<std::string, std::vector<ShapedEvent>> by_class;
    std::vector<std::pair<double, Event>> inserts; // thinning mark, event
};

// Consumes draws in a fixed order: per class, per event (delete mark,
// jitter, split), then the insert candidates at rate insert_lambda.
FileShape shape_file(Rng& rng, const Corpus& refs, const std::string& file_id,
                     const FileMeta& meta, const DegradeParams& params,
                     const std::vector<std::string>& insert_classes,
                     double insert_lambda) {
    FileShape shape;
    for (const auto& [cls, ref_events] : refs.events_of(file_id)) {
        std::vector<ShapedEvent>& shaped = shape.by_class[cls];
        for (const Event& e : ref_events) {
            ShapedEvent s;
            s.delete_mark = rng.uniform();

            double onset = e.onset;
            const double sigma = params.onset_jitter_abs + params.onset_jitter_rel * e.duration();
            if (sigma > 0.0) {
                const double delta = rng.normal(0.0, sigma);
                const double max_onset = e.offset - std::min(kMinEventDuration, e.duration());
                onset = std::clamp(onset + delta, 0.0, max_onset);
            }

            std::vector<Event> parts;
            bool split = false;
            if (params.split_prob > 0.0) split = rng.uniform() < params.split_prob;
            if (split) {
                const double len = e.offset - onset;
                const double x = onset + len / 3.0 + rng.uniform() * len / 3.0;
                parts.push_back({file_id, cls, onset, x});
                if (e.offset - (x + params.gap_size) > 1e-12) {
                    parts.push_back({file_id, cls, x + params.gap_size, e.offset});
                }
            } else {
                parts.push_back({file_id, cls, onset, e.offset});
            }

            for (Event& part : parts) {
                if (params.duration_scale != 1.0) {
                    part.offset = part.onset + (part.offset - part.onset) * params.duration_scale;
                }
                part.offset = std::min(part.offset, meta.duration);
                if (part.offset - part.onset > 1e-12) {
                    s.parts.push_back(part);
                }
            }
            shaped.push_back(std::move(s));
        }
    }

    if (insert_lambda > 0.0 && !insert_classes.empty()) {
        const std::int64_t n = rng.poisson(insert_lambda * meta.duration / 3600.0);
        for (std::int64_t k = 0; k < n; ++k) {
            const double mark = rng.uniform();
            const std::string& cls = insert_classes[rng.index(insert_classes.size())];
            double dur = rng.uniform(0.3, 3.0);
            dur = std::min(dur, meta.duration);
            const double onset = rng.uniform(0.0, meta.duration - dur);
            shape.inserts.emplace_back(mark,
                                       Event{file_id, cls, onset,
                                             std::min(onset + dur, meta.duration)});
        }
    }
    return shape;
}

void merge_pass(std::vector<Event>& parts, double merge_prob, Rng& rng) {
    if (parts.size() < 2 || merge_prob <= 0.0) return;
    std::sort(parts.begin(), parts.end(), [](const Event& a, const Event& b) {
        if (a.onset != b.onset) return a.onset < b.onset;
        return a.offset < b.offset;
    });
    std::vector<Event> merged;
    merged.push_back(parts.front());
    for (std::size_t j = 1; j < parts.size(); ++j) {
        if (rng.uniform() < merge_prob) {
            merged.back().offset = std::max(merged.back().offset, parts[j].offset);
        } else {
            merged.push_back(parts[j]);
        }
    }
    parts = std::move(merged);
}

// Materializes one operating point from shared shapes: keep shaped
// events whose mark clears delete_prob, merge, then keep insert
// candidates under the thinning threshold.
std::vector<Event> materialize(const std::vector<std::pair<std::string, FileShape>>& shapes,
                               const DegradeParams& params, double delete_prob,
                               double insert_keep_fraction, std::uint64_t merge_seed) {
    std::vector<Event> out;
    std::size_t file_index = 0;
    for (const auto& [file_id, shape] : shapes) {
        Rng merge_rng(derive_seed(merge_seed, file_index++));
        for (const auto& [cls, shaped] : shape.by_class) {
            std::vector<Event> parts;
            for (const ShapedEvent& s : shaped) {
                if (s.delete_mark < delete_prob) continue;
                parts.insert(parts.end(), s.parts.begin(), s.parts.end());
            }
            merge_pass(parts, params.merge_prob, merge_rng);
            out.insert(out.end(), parts.begin(), parts.end());
        }
        for (const auto& [mark, event] : shape.inserts) {
            if (mark < insert_keep_fraction) out.push_back(event);
        }
    }
    return out;
}

std::vector<std::pair<std::string, FileShape>> shape_corpus(const Corpus& refs,
                                                            const DegradeParams& params,
                                                            double insert_lambda) {
    std::vector<std::string> insert_classes(refs.class_set().begin(), refs.class_set().end());
    std::vector<std::pair<std::string, FileShape>> shapes;
    std::size_t file_index = 0;
    for (const auto& [file_id, meta] : refs.files()) {
        Rng rng(derive_seed(params.seed, file_index++));
        shapes.emplace_back(file_id,
                            shape_file(rng, refs, file_id, meta, params, insert_classes,
                                       insert_lambda));
    }
    return shapes;
}

std::vector<FileMeta> file_metas(const Corpus& c) {
    std::vector<FileMeta> out;
    out.reserve(c.files().size());
    for (const auto& [file_id, meta] : c.files()) out.push_back(meta);
    return out;
}

} // namespace

Corpus degrade(const Corpus& refs, const DegradeParams& params) {
    params.validate();
    const auto shapes = shape_corpus(refs, params, params.insert_rate);
    std::vector<Event> events = materialize(shapes, params, params.delete_prob, 1.0,
                                            derive_seed(params.seed, 0x6d65726765ull));
    return Corpus::build(events, file_metas(refs), ClipPolicy::Strict, nullptr);
}

OperatingPointSet make_operating_points(const Corpus& refs, const DegradeParams& base,
                                        std::size_t n_ops, const SweepAxis& axis) {
    base.validate();
    if (n_ops < 2) throw EvalError("n_ops must be >= 2");
    for (double p : {axis.delete_from, axis.delete_to}) {
        if (p < 0.0 || p > 1.0) throw EvalError("sweep delete probabilities must be in [0, 1]");
    }
    if (axis.insert_from < 0.0 || axis.insert_to < 0.0) {
        throw EvalError("sweep insert rates must be >= 0");
    }

    const double insert_max = std::max(axis.insert_from, axis.insert_to);
    const auto shapes = shape_corpus(refs, base, insert_max);
    const std::vector<FileMeta> files = file_metas(refs);

    std::size_t width = std::to_string(n_ops - 1).size();
    width = std::max<std::size_t>(width, 2);

    OperatingPointSet set;
    for (std::size_t i = 0; i < n_ops; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n_ops - 1);
        const double delete_prob = axis.delete_from + t * (axis.delete_to - axis.delete_from);
        const double insert_rate = axis.insert_from + t * (axis.insert_to - axis.insert_from);
        const double keep_fraction = insert_max > 0.0 ? insert_rate / insert_max : 0.0;

        std::vector<Event> events =
            materialize(shapes, base, delete_prob, keep_fraction,
                        derive_seed(base.seed, 0x6d65726765ull + 1 + i));

        std::string num = std::to_string(i);
        std::string op_id = "op_";
        for (std::size_t j = num.size(); j < width; ++j) op_id += '0';
        op_id += num;
        set.points.emplace_back(std::move(op_id),
                                Corpus::build(events, files, ClipPolicy::Strict, nullptr));
    }
    return set;
}

} // namespace sedscore
