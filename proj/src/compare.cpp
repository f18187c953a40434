// CSV round-trip and delta computation between two summary tables.
#include "meshpon/compare.hpp"

#include "meshpon/errors.hpp"

#include <cstdio>
#include <tuple>
#include <map>
#include <set>
#include <sstream>

namespace meshpon {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

TrafficClass parse_class_field(const std::string& s) {
    if (s == "urllc") return TrafficClass::Urllc;
    if (s == "normal") return TrafficClass::Normal;
    throw ConfigError("unknown traffic class in summary: " + s);
}

MetricPoint parse_point_field(const std::string& s) {
    if (s == "ru_du") return MetricPoint::RuDu;
    if (s == "app") return MetricPoint::App;
    throw ConfigError("unknown measurement point in summary: " + s);
}

int class_rank(TrafficClass c) { return c == TrafficClass::Urllc ? 0 : 1; }
int point_rank(MetricPoint p) { return p == MetricPoint::RuDu ? 0 : 1; }

using Key = std::tuple<std::int64_t, double, int, int>;

// Equal-weight average of per-seed means for each (slot, load, class, point).
std::map<Key, double> pooled_means(const std::vector<SummaryRow>& rows) {
    struct Pool {
        double sum = 0.0;
        int n = 0;
    };
    std::map<Key, Pool> acc;
    for (const SummaryRow& r : rows) {
        Pool& p = acc[{r.slot_us, r.load, class_rank(r.cls), point_rank(r.point)}];
        p.sum += r.stats.mean_us;
        ++p.n;
    }
    std::map<Key, double> out;
    for (const auto& [k, p] : acc) out[k] = p.sum / p.n;
    return out;
}

}  // namespace

std::vector<SummaryRow> parse_summary_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty summary table");
    if (line != summary_csv_header()) throw ConfigError("unexpected summary header: " + line);

    std::vector<SummaryRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f = split_fields(line);
        if (f.size() != 11) throw ConfigError("bad summary row: " + line);
        try {
            SummaryRow r;
            r.load = std::stod(f[0]);
            r.slot_us = std::stoll(f[1]);
            r.cls = parse_class_field(f[2]);
            r.point = parse_point_field(f[3]);
            r.stats.count = std::stoll(f[4]);
            r.stats.mean_us = std::stod(f[5]);
            r.stats.p50_us = std::stod(f[6]);
            r.stats.p95_us = std::stod(f[7]);
            r.stats.p99_us = std::stod(f[8]);
            r.stats.max_us = std::stod(f[9]);
            r.seed = static_cast<std::uint64_t>(std::stoull(f[10]));
            rows.push_back(r);
        } catch (const std::logic_error&) {
            throw ConfigError("bad summary row: " + line);
        }
    }
    return rows;
}

std::vector<DeltaRow> compare_summaries(const std::vector<SummaryRow>& baseline,
                                        const std::vector<SummaryRow>& candidate) {
    std::set<double> base_loads, cand_loads;
    for (const SummaryRow& r : baseline) base_loads.insert(r.load);
    for (const SummaryRow& r : candidate) cand_loads.insert(r.load);
    if (base_loads != cand_loads) {
        throw GridMismatch("summaries cover different load grids");
    }

    auto base = pooled_means(baseline);
    auto cand = pooled_means(candidate);
    std::vector<DeltaRow> out;
    for (const auto& [k, base_mean] : base) {
        auto it = cand.find(k);
        if (it == cand.end()) continue;
        DeltaRow r;
        r.slot_us = std::get<0>(k);
        r.load = std::get<1>(k);
        r.cls = std::get<2>(k) == 0 ? TrafficClass::Urllc : TrafficClass::Normal;
        r.point = std::get<3>(k) == 0 ? MetricPoint::RuDu : MetricPoint::App;
        r.baseline_mean_us = base_mean;
        r.candidate_mean_us = it->second;
        r.delta_us = r.candidate_mean_us - r.baseline_mean_us;
        out.push_back(r);
    }
    return out;
}

std::string delta_csv(const std::vector<DeltaRow>& rows) {
    std::string out = "load,slot_us,class,point,baseline_mean_us,candidate_mean_us,delta_us\n";
    char buf[192];
    for (const DeltaRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.6g,%lld,%s,%s,%.6g,%.6g,%.6g\n", r.load,
                      static_cast<long long>(r.slot_us), to_string(r.cls),
                      to_string(r.point).c_str(), r.baseline_mean_us, r.candidate_mean_us,
                      r.delta_us);
        out += buf;
    }
    return out;
}

std::string delta_table(const std::vector<DeltaRow>& rows) {
    std::string out = "  load  slot_us  class   point  baseline_us  candidate_us     delta_us\n";
    char buf[192];
    for (const DeltaRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%6.2f  %7lld  %-6s  %-5s  %11.1f  %12.1f  %+11.1f\n",
                      r.load, static_cast<long long>(r.slot_us), to_string(r.cls),
                      to_string(r.point).c_str(), r.baseline_mean_us, r.candidate_mean_us,
                      r.delta_us);
        out += buf;
    }
    return out;
}

}  // namespace meshpon
