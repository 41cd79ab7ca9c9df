#include "sedscore/svg.hpp"

#include "sedscore/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace sedscore {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 616.0;
constexpr double kTop = 48.0;
constexpr double kBottom = 344.0;

const char* kPalette[] = {
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

void open_svg(std::ostringstream& o, const std::string& title) {
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    o << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    o << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">"
      << escape(title) << "</text>\n";
}

void y_axis_unit(std::ostringstream& o, const char* label) {
    for (int i = 0; i <= 5; ++i) {
        const double v = i / 5.0;
        const double y = kBottom - v * (kBottom - kTop);
        o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kRight)
          << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
        o << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(v)
          << "</text>\n";
    }
    o << "<text x=\"16\" y=\"" << num((kTop + kBottom) / 2)
      << "\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
      << num((kTop + kBottom) / 2) << ")\" text-anchor=\"middle\">" << label << "</text>\n";
}

} // namespace

std::string svg_bar_chart(const std::vector<std::string>& labels,
                          const std::vector<double>& values,
                          const std::string& title) {
    if (labels.size() != values.size()) throw EvalError("bar chart labels/values mismatch");
    std::ostringstream o;
    open_svg(o, title);
    y_axis_unit(o, "macro F1");

    const std::size_t n = labels.size();
    if (n > 0) {
        const double span = (kRight - kLeft) / static_cast<double>(n);
        const double bar_w = span * 0.62;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = std::clamp(values[i], 0.0, 1.0);
            const double x = kLeft + span * (static_cast<double>(i) + 0.5);
            const double h = v * (kBottom - kTop);
            o << "<rect x=\"" << num(x - bar_w / 2) << "\" y=\"" << num(kBottom - h)
              << "\" width=\"" << num(bar_w) << "\" height=\"" << num(h) << "\" fill=\""
              << kPalette[i % kPaletteSize] << "\"/>\n";
            char val[32];
            std::snprintf(val, sizeof(val), "%.3f", values[i]);
            o << "<text x=\"" << num(x) << "\" y=\"" << num(kBottom - h - 6)
              << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << val
              << "</text>\n";
            o << "<text x=\"" << num(x) << "\" y=\"" << num(kBottom + 18)
              << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
              << escape(labels[i]) << "</text>\n";
        }
    }
    o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(kRight)
      << "\" y2=\"" << num(kBottom) << "\" stroke=\"black\"/>\n";
    o << "</svg>\n";
    return o.str();
}

namespace {

std::string step_path(const std::vector<double>& grid, const std::vector<double>& values,
                      double e_max) {
    // Piecewise-constant: values[i] holds on [grid[i], grid[i+1]).
    auto x_of = [&](double e) { return kLeft + (e / e_max) * (kRight - kLeft); };
    auto y_of = [&](double v) { return kBottom - v * (kBottom - kTop); };
    std::ostringstream p;
    p << "M" << num(x_of(grid[0])) << ' ' << num(y_of(values[0]));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        p << " H" << num(x_of(grid[i]));
        if (values[i] != values[i - 1]) p << " V" << num(y_of(values[i]));
    }
    if (grid.back() < e_max) p << " H" << num(x_of(e_max));
    return p.str();
}

} // namespace

std::string svg_psd_roc(const PsdRoc& roc, const std::string& title) {
    std::ostringstream o;
    open_svg(o, title);
    y_axis_unit(o, "TPR");

    for (int i = 0; i <= 5; ++i) {
        const double e = roc.e_max * i / 5.0;
        const double x = kLeft + (e / roc.e_max) * (kRight - kLeft);
        o << "<text x=\"" << num(x) << "\" y=\"" << num(kBottom + 16)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(e)
          << "</text>\n";
    }
    o << "<text x=\"" << num((kLeft + kRight) / 2) << "\" y=\"" << num(kBottom + 34)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
         "effective FP rate (per hour)</text>\n";

    std::size_t color = 0;
    double legend_y = kTop + 8;
    for (const std::string& cls : roc.classes) {
        const auto& tpr = roc.class_tpr.at(cls);
        const char* stroke = kPalette[color % kPaletteSize];
        o << "<path d=\"" << step_path(roc.grid, tpr, roc.e_max) << "\" fill=\"none\" stroke=\""
          << stroke << "\" stroke-width=\"1\" opacity=\"0.7\"/>\n";
        o << "<text x=\"" << num(kRight - 150) << "\" y=\"" << num(legend_y)
          << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"" << stroke << "\">"
          << escape(cls) << "</text>\n";
        legend_y += 12;
        ++color;
    }
    o << "<path d=\"" << step_path(roc.grid, roc.etpr, roc.e_max)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2.5\"/>\n";
    o << "<text x=\"" << num(kRight - 150) << "\" y=\"" << num(legend_y)
      << "\" font-family=\"sans-serif\" font-size=\"10\" font-weight=\"bold\">effective TPR"
         "</text>\n";

    o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(kRight)
      << "\" y2=\"" << num(kBottom) << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
      << "\" y2=\"" << num(kBottom) << "\" stroke=\"black\"/>\n";
    o << "</svg>\n";
    return o.str();
}

} // namespace sedscore
