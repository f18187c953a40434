// Latency collection and summary statistics for completed packets.
#include "meshpon/metrics.hpp"

#include "meshpon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace meshpon {

std::string to_string(MetricPoint p) {
    return p == MetricPoint::RuDu ? "ru_du" : "app";
}

void MetricsCollector::record(const AppPacket& pkt) {
    if (!pkt.t_at_du.has_value() || !pkt.t_at_app.has_value()) {
        throw IncompletePacket("packet " + std::to_string(pkt.id) +
                               " recorded before reaching both measurement points");
    }
    if (pkt.t_created < m_warmup_end) {
        ++m_discarded;
        return;
    }
    m_samples[{pkt.cls, MetricPoint::RuDu}].push_back((*pkt.t_at_du - pkt.t_created).ps);
    m_samples[{pkt.cls, MetricPoint::App}].push_back((*pkt.t_at_app - pkt.t_created).ps);
    ++m_recorded;
}

namespace {

// Nearest-rank quantile: smallest sample with at least q of the mass below
// or equal to it.
tick_t nearest_rank(const std::vector<tick_t>& sorted, double q) {
    auto n = static_cast<double>(sorted.size());
    auto idx = static_cast<std::size_t>(std::ceil(q * n)) - 1;
    if (idx >= sorted.size()) idx = sorted.size() - 1;
    return sorted[idx];
}

double to_us(tick_t ps) { return static_cast<double>(ps) / static_cast<double>(TICKS_PER_US); }

}  // namespace

LatencySummary MetricsCollector::summarize(TrafficClass cls, MetricPoint point) const {
    auto it = m_samples.find({cls, point});
    if (it == m_samples.end() || it->second.empty()) {
        throw EmptyWindow("no samples for " + std::string(to_string(cls)) + "/" +
                          to_string(point));
    }
    std::vector<tick_t> sorted = it->second;
    std::sort(sorted.begin(), sorted.end());

    LatencySummary s;
    s.count = static_cast<std::int64_t>(sorted.size());
    long double total = 0.0L;
    for (tick_t v : sorted) total += static_cast<long double>(v);
    s.mean_us = static_cast<double>(total / static_cast<long double>(sorted.size())) /
                static_cast<double>(TICKS_PER_US);
    s.p50_us = to_us(nearest_rank(sorted, 0.50));
    s.p95_us = to_us(nearest_rank(sorted, 0.95));
    s.p99_us = to_us(nearest_rank(sorted, 0.99));
    s.max_us = to_us(sorted.back());
    return s;
}

std::string summary_csv_header() {
    return "load,slot_us,class,point,count,mean_us,p50_us,p95_us,p99_us,max_us,seed";
}

std::string summary_csv_line(const SummaryRow& row) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%.6g,%lld,%s,%s,%lld,%lld,%lld,%lld,%lld,%lld,%llu",
                  row.load, static_cast<long long>(row.slot_us), to_string(row.cls),
                  to_string(row.point).c_str(), static_cast<long long>(row.stats.count),
                  static_cast<long long>(std::llround(row.stats.mean_us)),
                  static_cast<long long>(std::llround(row.stats.p50_us)),
                  static_cast<long long>(std::llround(row.stats.p95_us)),
                  static_cast<long long>(std::llround(row.stats.p99_us)),
                  static_cast<long long>(std::llround(row.stats.max_us)),
                  static_cast<unsigned long long>(row.seed));
    return buf;
}

}  // namespace meshpon
