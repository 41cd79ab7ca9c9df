#pragma once

#include "sedscore/psds.hpp"
#include "sedscore/report.hpp"

#include <string>

namespace sedscore {

// Self-contained SVG documents; no external assets or scripts. Plots
// are a convenience view of the TSV data, not the contract.

// One bar per value. Values are expected in [0, 1].
std::string svg_bar_chart(const std::vector<std::string>& labels,
                          const std::vector<double>& values,
                          const std::string& title);

// Step curves of every class TPR plus the bold effective-TPR curve.
std::string svg_psd_roc(const PsdRoc& roc, const std::string& title);

} // namespace sedscore
