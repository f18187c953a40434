// Summary-table parsing and baseline-vs-candidate latency deltas.
#pragma once

#include "meshpon/metrics.hpp"

#include <string>
#include <vector>

namespace meshpon {

// Inverse of summary_csv_line; throws ConfigError on a malformed table.
std::vector<SummaryRow> parse_summary_csv(const std::string& text);

struct DeltaRow {
    double load = 0.0;
    std::int64_t slot_us = 0;
    TrafficClass cls = TrafficClass::Urllc;
    MetricPoint point = MetricPoint::RuDu;
    double baseline_mean_us = 0.0;
    double candidate_mean_us = 0.0;
    double delta_us = 0.0;      // candidate - baseline
};

// Per (slot, load, class, point) mean deltas, seeds averaged with equal
// weight. Throws GridMismatch unless both tables cover the same load grid.
std::vector<DeltaRow> compare_summaries(const std::vector<SummaryRow>& baseline,
                                        const std::vector<SummaryRow>& candidate);

std::string delta_csv(const std::vector<DeltaRow>& rows);
std::string delta_table(const std::vector<DeltaRow>& rows);

}  // namespace meshpon
