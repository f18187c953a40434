// Latency collection and summary statistics for completed packets.
#pragma once

#include "meshpon/packet.hpp"
#include "meshpon/time.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace meshpon {

enum class MetricPoint { RuDu, App };

std::string to_string(MetricPoint p);

struct LatencySummary {
    std::int64_t count = 0;
    double mean_us = 0.0;
    double p50_us = 0.0;
    double p95_us = 0.0;
    double p99_us = 0.0;
    double max_us = 0.0;
};

// Accumulates per-class latency samples at two measurement points. Packets
// created inside the warmup window are discarded at record time so the
// steady-state statistics never see the cold-start transient.
class MetricsCollector {
public:
    explicit MetricsCollector(SimTime warmup_end) : m_warmup_end(warmup_end) {}

    // Requires t_at_du and t_at_app to be set; throws IncompletePacket otherwise.
    void record(const AppPacket& pkt);

    LatencySummary summarize(TrafficClass cls, MetricPoint point) const;

    std::int64_t recorded_count() const { return m_recorded; }
    std::int64_t discarded_count() const { return m_discarded; }

private:
    SimTime m_warmup_end;
    std::int64_t m_recorded = 0;
    std::int64_t m_discarded = 0;
    std::map<std::pair<TrafficClass, MetricPoint>, std::vector<tick_t>> m_samples;
};

struct SummaryRow {
    double load = 0.0;
    std::int64_t slot_us = 0;
    TrafficClass cls = TrafficClass::Urllc;
    MetricPoint point = MetricPoint::RuDu;
    LatencySummary stats;
    std::uint64_t seed = 0;
};

std::string summary_csv_header();
std::string summary_csv_line(const SummaryRow& row);

}  // namespace meshpon
