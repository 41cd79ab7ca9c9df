#pragma once

#include "sedscore/events.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sedscore {

// Annotation tables follow the common SED exchange convention:
//   filename<TAB>onset<TAB>offset<TAB>event_label
// with an optional single header row and LF or CRLF line endings.
// Duration tables carry filename<TAB>duration. A comma delimiter is
// accepted as a variant of the same layout.

constexpr char kTabDelimiter = '\t';
constexpr char kCsvDelimiter = ',';

// Parses rows into events. The header row is detected by a non-numeric
// onset field in the first row. Throws ParseError with the 1-based line
// number on malformed rows, onset < 0, or offset <= onset.
std::vector<Event> parse_event_table(std::istream& in, char delimiter = kTabDelimiter);

// Parses rows into per-file durations. Duplicate filenames and
// non-positive durations are errors.
std::vector<FileMeta> parse_durations(std::istream& in, char delimiter = kTabDelimiter);

std::vector<Event> load_event_table(const std::filesystem::path& path,
                                    char delimiter = kTabDelimiter);
std::vector<FileMeta> load_durations(const std::filesystem::path& path,
                                     char delimiter = kTabDelimiter);

// One pre-thresholded detection set per operating point, keyed by op id.
struct OperatingPointSet {
    std::vector<std::pair<std::string, Corpus>> points; // sorted by op id
};

// Reads every event table in `dir` (one per operating point, op id =
// file stem), validates each against `files`, and returns the points
// sorted by op id. An empty directory is an error; a failing table is
// reported with its path.
OperatingPointSet load_operating_points(const std::filesystem::path& dir,
                                        const std::vector<FileMeta>& files,
                                        char delimiter = kTabDelimiter,
                                        ClipPolicy policy = ClipPolicy::Clip,
                                        std::vector<std::string>* warnings = nullptr);

// Serialization, inverse of the parsers up to row order. Times are
// written in shortest round-trip form so re-parsing reproduces the
// exact same values.
void write_event_table(const std::vector<Event>& events, std::ostream& out,
                       char delimiter = kTabDelimiter);
void write_event_table(const Corpus& corpus, std::ostream& out,
                       char delimiter = kTabDelimiter);
void write_durations(const std::vector<FileMeta>& files, std::ostream& out,
                     char delimiter = kTabDelimiter);

// Shortest decimal form that parses back to the exact same double.
std::string format_time(double value);

} // namespace sedscore
