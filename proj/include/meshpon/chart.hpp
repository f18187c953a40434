// Static SVG renderings of latency summary tables.
#pragma once

#include "meshpon/metrics.hpp"

#include <string>
#include <vector>

namespace meshpon {

// Grouped bars: mean and max application latency per load, per class.
std::string render_latency_bars(const std::vector<SummaryRow>& rows);

// Lines: mean application latency versus load, one series per slot duration
// and class.
std::string render_load_lines(const std::vector<SummaryRow>& rows);

}  // namespace meshpon
