#include "sedscore/events.hpp"

#include "sedscore/errors.hpp"

#include <algorithm>
#include <sstream>

namespace sedscore {

double intersection_duration(double a_on, double a_off, double b_on, double b_off) {
    const double lo = std::max(a_on, b_on);
    const double hi = std::min(a_off, b_off);
    return hi > lo ? hi - lo : 0.0;
}

double intersection_duration(const Event& a, const Event& b) {
    return intersection_duration(a.onset, a.offset, b.onset, b.offset);
}

double total_intersection(const Event& target, const std::vector<Event>& others) {
    double sum = 0.0;
    for (const Event& e : others) {
        sum += intersection_duration(target, e);
    }
    return sum;
}

void validate_event(const Event& e) {
    if (e.onset < 0.0) {
        throw EvalError("event onset is negative: " + e.file_id + " " + e.class_label);
    }
    if (!(e.offset > e.onset)) {
        throw EvalError("event offset not after onset: " + e.file_id + " " + e.class_label);
    }
}

namespace {

bool event_time_order(const Event& a, const Event& b) {
    if (a.onset != b.onset) return a.onset < b.onset;
    if (a.offset != b.offset) return a.offset < b.offset;
    return a.class_label < b.class_label;
}

} // namespace

Corpus Corpus::build(const std::vector<Event>& events,
                     const std::vector<FileMeta>& files,
                     ClipPolicy policy,
                     std::vector<std::string>* warnings) {
    Corpus c;
    for (const FileMeta& f : files) {
        if (!(f.duration > 0.0)) {
            throw EvalError("non-positive duration for file '" + f.file_id + "'");
        }
        if (!c.files_.emplace(f.file_id, f).second) {
            throw EvalError("duplicate file metadata for '" + f.file_id + "'");
        }
        c.total_duration_ += f.duration;
    }
    if (c.files_.empty()) {
        throw EvalError("corpus has no file metadata");
    }

    for (const Event& e : events) {
        validate_event(e);
        auto it = c.files_.find(e.file_id);
        if (it == c.files_.end()) {
            throw EvalError("event references unknown file '" + e.file_id + "'");
        }
        const double dur = it->second.duration;
        Event stored = e;
        if (e.onset >= dur) {
            std::ostringstream msg;
            msg << "event entirely outside file bounds: '" << e.file_id << "' "
                << e.class_label << " [" << e.onset << ", " << e.offset
                << ") with duration " << dur;
            throw EvalError(msg.str());
        }
        if (e.offset > dur) {
            if (policy == ClipPolicy::Strict) {
                std::ostringstream msg;
                msg << "event extends past file end: '" << e.file_id << "' "
                    << e.class_label << " offset " << e.offset << " > duration " << dur;
                throw EvalError(msg.str());
            }
            stored.offset = dur;
            if (warnings) {
                std::ostringstream msg;
                msg << "clipped event in '" << e.file_id << "' (" << e.class_label
                    << "): offset " << e.offset << " -> " << dur;
                warnings->push_back(msg.str());
            }
        }
        c.by_file_[stored.file_id][stored.class_label].push_back(stored);
        c.class_set_.insert(stored.class_label);
    }

    for (auto& [file_id, by_class] : c.by_file_) {
        for (auto& [cls, evs] : by_class) {
            std::sort(evs.begin(), evs.end(), event_time_order);
        }
    }
    return c;
}

const std::map<std::string, std::vector<Event>>& Corpus::events_of(const std::string& file_id) const {
    static const std::map<std::string, std::vector<Event>> empty;
    auto it = by_file_.find(file_id);
    return it == by_file_.end() ? empty : it->second;
}

const std::vector<Event>& Corpus::events_of(const std::string& file_id,
                                            const std::string& class_label) const {
    static const std::vector<Event> empty;
    auto it = by_file_.find(file_id);
    if (it == by_file_.end()) return empty;
    auto jt = it->second.find(class_label);
    return jt == it->second.end() ? empty : jt->second;
}

std::vector<Event> Corpus::all_events() const {
    std::vector<Event> out;
    for (const auto& [file_id, by_class] : by_file_) {
        for (const auto& [cls, evs] : by_class) {
            out.insert(out.end(), evs.begin(), evs.end());
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Event& a, const Event& b) {
        if (a.file_id != b.file_id) return a.file_id < b.file_id;
        return event_time_order(a, b);
    });
    return out;
}

std::size_t Corpus::event_count() const {
    std::size_t n = 0;
    for (const auto& [file_id, by_class] : by_file_) {
        for (const auto& [cls, evs] : by_class) {
            n += evs.size();
        }
    }
    return n;
}

std::size_t Corpus::class_event_count(const std::string& class_label) const {
    std::size_t n = 0;
    for (const auto& [file_id, by_class] : by_file_) {
        auto it = by_class.find(class_label);
        if (it != by_class.end()) n += it->second.size();
    }
    return n;
}

double Corpus::class_event_duration(const std::string& class_label) const {
    double sum = 0.0;
    for (const auto& [file_id, by_class] : by_file_) {
        auto it = by_class.find(class_label);
        if (it == by_class.end()) continue;
        for (const Event& e : it->second) {
            sum += e.duration();
        }
    }
    return sum;
}

Corpus Corpus::scaled(double s) const {
    if (!(s > 0.0)) {
        throw EvalError("scale factor must be positive");
    }
    std::vector<FileMeta> files;
    files.reserve(files_.size());
    for (const auto& [file_id, meta] : files_) {
        files.push_back({file_id, meta.duration * s});
    }
    std::vector<Event> events = all_events();
    for (Event& e : events) {
        e.onset *= s;
        e.offset *= s;
    }
    return build(events, files, ClipPolicy::Strict, nullptr);
}

} // namespace sedscore
