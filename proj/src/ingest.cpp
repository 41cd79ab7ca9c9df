#include "sedscore/ingest.hpp"

#include "sedscore/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace sedscore {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_row(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delimiter, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    for (std::string& f : fields) f = trim(f);
    return fields;
}

// Locale-independent decimal parse; the whole field must be consumed.
bool parse_number(const std::string& s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !s.empty();
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    std::ostringstream msg;
    msg << "line " << line_no << ": " << what;
    throw ParseError(msg.str());
}

} // namespace

std::string format_time(double value) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::vector<Event> parse_event_table(std::istream& in, char delimiter) {
    std::vector<Event> events;
    std::string line;
    std::size_t line_no = 0;
    bool first_row = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> f = split_row(line, delimiter);
        if (f.size() != 4) {
            fail(line_no, "expected 4 columns (filename, onset, offset, event_label), got " +
                              std::to_string(f.size()));
        }
        double onset = 0.0;
        double offset = 0.0;
        const bool onset_ok = parse_number(f[1], onset);
        if (first_row && !onset_ok) {
            // header row
            first_row = false;
            continue;
        }
        first_row = false;
        if (!onset_ok) fail(line_no, "non-numeric onset '" + f[1] + "'");
        if (!parse_number(f[2], offset)) fail(line_no, "non-numeric offset '" + f[2] + "'");
        if (onset < 0.0) fail(line_no, "negative onset");
        if (!(offset > onset)) fail(line_no, "offset before onset");
        if (f[0].empty()) fail(line_no, "empty filename");
        if (f[3].empty()) fail(line_no, "empty event label");
        events.push_back({f[0], f[3], onset, offset});
    }
    return events;
}

std::vector<FileMeta> parse_durations(std::istream& in, char delimiter) {
    std::vector<FileMeta> files;
    std::set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    bool first_row = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> f = split_row(line, delimiter);
        if (f.size() != 2) {
            fail(line_no, "expected 2 columns (filename, duration), got " +
                              std::to_string(f.size()));
        }
        double duration = 0.0;
        const bool ok = parse_number(f[1], duration);
        if (first_row && !ok) {
            first_row = false;
            continue;
        }
        first_row = false;
        if (!ok) fail(line_no, "non-numeric duration '" + f[1] + "'");
        if (!(duration > 0.0)) fail(line_no, "non-positive duration");
        if (f[0].empty()) fail(line_no, "empty filename");
        if (!seen.insert(f[0]).second) fail(line_no, "duplicate filename '" + f[0] + "'");
        files.push_back({f[0], duration});
    }
    return files;
}

std::vector<Event> load_event_table(const std::filesystem::path& path, char delimiter) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open event table '" + path.string() + "'");
    try {
        return parse_event_table(in, delimiter);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::vector<FileMeta> load_durations(const std::filesystem::path& path, char delimiter) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open duration table '" + path.string() + "'");
    try {
        return parse_durations(in, delimiter);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

OperatingPointSet load_operating_points(const std::filesystem::path& dir,
                                        const std::vector<FileMeta>& files,
                                        char delimiter,
                                        ClipPolicy policy,
                                        std::vector<std::string>* warnings) {
    if (!std::filesystem::is_directory(dir)) {
        throw ParseError("operating-point directory '" + dir.string() + "' does not exist");
    }
    const std::string ext = delimiter == kCsvDelimiter ? ".csv" : ".tsv";
    std::vector<std::filesystem::path> tables;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ext) {
            tables.push_back(entry.path());
        }
    }
    if (tables.empty()) {
        throw ParseError("operating-point directory '" + dir.string() +
                         "' contains no " + ext + " tables");
    }
    std::sort(tables.begin(), tables.end(),
              [](const auto& a, const auto& b) { return a.stem() < b.stem(); });

    OperatingPointSet set;
    for (const auto& path : tables) {
        std::vector<Event> events = load_event_table(path, delimiter);
        try {
            set.points.emplace_back(path.stem().string(),
                                    Corpus::build(events, files, policy, warnings));
        } catch (const EvalError& e) {
            throw ParseError(path.string() + ": " + e.what());
        }
    }
    return set;
}

void write_event_table(const std::vector<Event>& events, std::ostream& out, char delimiter) {
    for (const Event& e : events) {
        out << e.file_id << delimiter << format_time(e.onset) << delimiter
            << format_time(e.offset) << delimiter << e.class_label << '\n';
    }
}

void write_event_table(const Corpus& corpus, std::ostream& out, char delimiter) {
    write_event_table(corpus.all_events(), out, delimiter);
}

void write_durations(const std::vector<FileMeta>& files, std::ostream& out, char delimiter) {
    for (const FileMeta& f : files) {
        out << f.file_id << delimiter << format_time(f.duration) << '\n';
    }
}

} // namespace sedscore
