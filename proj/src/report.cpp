#include "sedscore/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>

namespace sedscore {

namespace {

std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void pad_to(std::string& s, std::size_t width) {
    while (s.size() < width) s.push_back(' ');
}

std::string right_align(const std::string& s, std::size_t width) {
    if (s.size() >= width) return s;
    return std::string(width - s.size(), ' ') + s;
}

} // namespace

CompareMatrix compare_criteria(const Corpus& refs, const Corpus& dets,
                               const CollarConfig& collar_cfg,
                               const SegmentConfig& segment_cfg,
                               const IntersectionConfig& intersection_cfg) {
    collar_cfg.validate();
    segment_cfg.validate();
    intersection_cfg.validate();

    CompareMatrix m;
    m.columns = {"SB", "IB-0.1", "IB-0.3", "IB-0.5", "IB-0.7", "IB-0.9", "CB", "CB-O"};
    m.classes.assign(refs.class_set().begin(), refs.class_set().end());

    std::vector<MacroScore> runs;
    runs.push_back(macro_score(segment_counts(refs, dets, segment_cfg)));
    for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        IntersectionConfig cfg = intersection_cfg;
        cfg.rho_dtc = rho;
        cfg.rho_gtc = rho;
        runs.push_back(macro_score(to_class_counts(intersection_counts(refs, dets, cfg))));
    }
    runs.push_back(macro_score(collar_counts(refs, dets, collar_cfg)));
    CollarConfig onset_only = collar_cfg;
    onset_only.require_offset = false;
    runs.push_back(macro_score(collar_counts(refs, dets, onset_only)));

    m.f1.assign(m.classes.size(), std::vector<double>(m.columns.size(), 0.0));
    for (std::size_t col = 0; col < runs.size(); ++col) {
        std::map<std::string, double> by_class;
        for (const ClassScore& s : runs[col].per_class) by_class[s.class_label] = s.f1;
        for (std::size_t row = 0; row < m.classes.size(); ++row) {
            auto it = by_class.find(m.classes[row]);
            m.f1[row][col] = it == by_class.end() ? 0.0 : it->second;
        }
        m.macro_f1.push_back(runs[col].macro_f1);
    }
    return m;
}

void write_score_table(const MacroScore& score, std::ostream& out) {
    std::size_t label_width = 5;
    for (const ClassScore& s : score.per_class) {
        label_width = std::max(label_width, s.class_label.size());
    }
    for (const ClassScore& s : score.detection_only) {
        label_width = std::max(label_width, s.class_label.size());
    }
    label_width += 2;

    std::string header = "class";
    pad_to(header, label_width);
    header += right_align("tp", 8) + right_align("fp", 8) + right_align("fn", 8) +
              right_align("n_ref", 8) + right_align("prec", 8) + right_align("recall", 8) +
              right_align("f1", 8);
    out << header << '\n';

    auto row = [&](const ClassScore& s) {
        std::string line = s.class_label;
        pad_to(line, label_width);
        line += right_align(std::to_string(s.counts.tp), 8);
        line += right_align(std::to_string(s.counts.fp), 8);
        line += right_align(std::to_string(s.counts.fn), 8);
        line += right_align(std::to_string(s.counts.n_ref), 8);
        line += right_align(fixed3(s.precision), 8);
        line += right_align(fixed3(s.recall), 8);
        line += right_align(fixed3(s.f1), 8);
        if (s.degenerate) line += "  (no events)";
        out << line << '\n';
    };
    for (const ClassScore& s : score.per_class) row(s);
    for (const ClassScore& s : score.detection_only) row(s);

    out << "macro F1 " << fixed6(score.macro_f1) << '\n';
    out << "micro F1 " << fixed6(score.micro_f1) << '\n';
}

void write_score_tsv(const MacroScore& score, std::ostream& out, char delimiter) {
    out << "class" << delimiter << "tp" << delimiter << "fp" << delimiter << "fn" << delimiter
        << "tn" << delimiter << "n_ref" << delimiter << "precision" << delimiter << "recall"
        << delimiter << "f1" << '\n';
    auto row = [&](const ClassScore& s) {
        out << s.class_label << delimiter << s.counts.tp << delimiter << s.counts.fp << delimiter
            << s.counts.fn << delimiter << s.counts.tn << delimiter << s.counts.n_ref << delimiter
            << format_time(s.precision) << delimiter << format_time(s.recall) << delimiter
            << format_time(s.f1) << '\n';
    };
    for (const ClassScore& s : score.per_class) row(s);
    for (const ClassScore& s : score.detection_only) row(s);
    out << "# macro_f1" << delimiter << format_time(score.macro_f1) << '\n';
    out << "# macro_precision" << delimiter << format_time(score.macro_precision) << '\n';
    out << "# macro_recall" << delimiter << format_time(score.macro_recall) << '\n';
    out << "# micro_f1" << delimiter << format_time(score.micro_f1) << '\n';
}

void write_compare_table(const CompareMatrix& m, std::ostream& out) {
    std::size_t label_width = 8;
    for (const std::string& c : m.classes) label_width = std::max(label_width, c.size());
    label_width += 2;

    std::string header = "class";
    pad_to(header, label_width);
    for (const std::string& col : m.columns) header += right_align(col, 8);
    out << header << '\n';

    for (std::size_t row = 0; row < m.classes.size(); ++row) {
        std::string line = m.classes[row];
        pad_to(line, label_width);
        for (double v : m.f1[row]) line += right_align(fixed3(v), 8);
        out << line << '\n';
    }
    std::string line = "macro F1";
    pad_to(line, label_width);
    for (double v : m.macro_f1) line += right_align(fixed3(v), 8);
    out << line << '\n';
}

void write_compare_tsv(const CompareMatrix& m, std::ostream& out, char delimiter) {
    out << "class";
    for (const std::string& col : m.columns) out << delimiter << col;
    out << '\n';
    for (std::size_t row = 0; row < m.classes.size(); ++row) {
        out << m.classes[row];
        for (double v : m.f1[row]) out << delimiter << format_time(v);
        out << '\n';
    }
    out << "# macro_f1";
    for (double v : m.macro_f1) out << delimiter << format_time(v);
    out << '\n';
}

void write_roc_tsv(const PsdRoc& roc, std::ostream& out, char delimiter) {
    out << "efpr" << delimiter << "etpr";
    for (const std::string& cls : roc.classes) out << delimiter << cls;
    out << '\n';
    for (const RocRow& row : roc_table(roc)) {
        out << format_time(row.e) << delimiter << format_time(row.etpr);
        for (double v : row.class_tpr) out << delimiter << format_time(v);
        out << '\n';
    }
}

} // namespace sedscore
