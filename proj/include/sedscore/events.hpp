#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace sedscore {

// One labeled time interval inside a named audio file. Times are seconds.
// Invariants: 0 <= onset < offset.
struct Event {
    std::string file_id;
    std::string class_label;
    double onset{0.0};
    double offset{0.0};

    double duration() const { return offset - onset; }

    bool operator==(const Event&) const = default;
};

// Per-file metadata. duration > 0.
struct FileMeta {
    std::string file_id;
    double duration{0.0};

    bool operator==(const FileMeta&) const = default;
};

// Overlap length of two intervals, 0 for disjoint ones. Symmetric.
double intersection_duration(const Event& a, const Event& b);
double intersection_duration(double a_on, double a_off, double b_on, double b_off);

// Sum of overlaps of `target` with each event in `others`. Overlapping
// `others` each contribute in full; no de-overlapping happens, so the
// total may exceed the target duration.
double total_intersection(const Event& target, const std::vector<Event>& others);

enum class ClipPolicy {
    Clip,   // events overhanging the file end are clipped, with a warning
    Strict, // any event overhanging the file end is an error
};

// Immutable event collection keyed by file, with per-file durations.
// Events are stored sorted by (onset, offset, class) per file and class,
// so identical inputs in any order produce identical corpora.
class Corpus {
public:
    Corpus() = default;

    // Validates events against the metadata: unknown file ids and events
    // entirely outside [0, duration] are errors; events overhanging the
    // file end are clipped (policy Clip) or rejected (policy Strict).
    // Clipping appends a note to `warnings` when it is non-null.
    static Corpus build(const std::vector<Event>& events,
                        const std::vector<FileMeta>& files,
                        ClipPolicy policy = ClipPolicy::Clip,
                        std::vector<std::string>* warnings = nullptr);

    const std::map<std::string, FileMeta>& files() const { return files_; }
    const std::set<std::string>& class_set() const { return class_set_; }
    double total_duration() const { return total_duration_; }

    // Events of one file grouped by class; empty map for unknown files.
    const std::map<std::string, std::vector<Event>>& events_of(const std::string& file_id) const;
    // Events of one file and class; empty for absent combinations.
    const std::vector<Event>& events_of(const std::string& file_id,
                                        const std::string& class_label) const;

    // All events, sorted by (file_id, onset, offset, class).
    std::vector<Event> all_events() const;

    std::size_t event_count() const;
    std::size_t class_event_count(const std::string& class_label) const;
    // Summed duration of all events of one class (reference presence time).
    double class_event_duration(const std::string& class_label) const;

    // Same metadata, every onset/offset/duration multiplied by s. Used by
    // time-scale studies; s must be > 0.
    Corpus scaled(double s) const;

private:
    std::map<std::string, FileMeta> files_;
    std::map<std::string, std::map<std::string, std::vector<Event>>> by_file_;
    std::set<std::string> class_set_;
    double total_duration_{0.0};
};

// Throws EvalError unless 0 <= onset < offset.
void validate_event(const Event& e);

} // namespace sedscore
