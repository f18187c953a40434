// SVG emission: grouped latency bars and load-sweep lines.
#include "meshpon/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <vector>

namespace meshpon {

namespace {

constexpr double W = 760.0, H = 440.0;
constexpr double ML = 74.0, MR = 20.0, MT = 34.0, MB = 58.0;

std::string fmt(const char* pattern, double a) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), pattern, a);
    return buf;
}

// Smallest 1/2/5 decade multiple at or above v; axis tops land on round numbers.
double nice_ceiling(double v) {
    if (v <= 0.0) return 1.0;
    double mag = std::pow(10.0, std::floor(std::log10(v)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (v <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

std::string svg_open() {
    return fmt("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" ", W) +
           fmt("height=\"%.0f\" font-family=\"sans-serif\" font-size=\"12\">\n", H) +
           "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

double y_px(double v, double ymax) { return H - MB - (v / ymax) * (H - MT - MB); }

// Horizontal gridlines plus millisecond tick labels on the left edge.
std::string y_axis(double ymax, const std::string& title) {
    std::string out;
    for (int i = 0; i <= 5; ++i) {
        double v = ymax * i / 5.0;
        double y = y_px(v, ymax);
        out += fmt("<line x1=\"%.1f\" ", ML) + fmt("y1=\"%.1f\" ", y) +
               fmt("x2=\"%.1f\" ", W - MR) + fmt("y2=\"%.1f\" ", y) +
               "stroke=\"#dddddd\"/>\n";
        out += fmt("<text x=\"%.1f\" ", ML - 8.0) + fmt("y=\"%.1f\" ", y + 4.0) +
               "text-anchor=\"end\">" + fmt("%g", v / 1000.0) + "</text>\n";
    }
    out += fmt("<text x=\"%.1f\" ", 16.0) + fmt("y=\"%.1f\" ", (MT + H - MB) / 2.0) +
           "text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           fmt("%.1f", (MT + H - MB) / 2.0) + ")\">" + title + "</text>\n";
    return out;
}

std::string legend_entry(double x, double y, const std::string& color, const std::string& label) {
    return fmt("<rect x=\"%.1f\" ", x) + fmt("y=\"%.1f\" ", y - 10.0) +
           "width=\"12\" height=\"12\" fill=\"" + color + "\"/>\n" +
           fmt("<text x=\"%.1f\" ", x + 17.0) + fmt("y=\"%.1f\">", y) + label + "</text>\n";
}

struct Agg {
    double mean_sum = 0.0;
    int n = 0;
    double max_us = 0.0;
};

}  // namespace

std::string render_latency_bars(const std::vector<SummaryRow>& rows) {
    std::map<std::pair<double, int>, Agg> agg;   // (load, class rank) -> pooled stats
    std::set<double> loads;
    for (const SummaryRow& r : rows) {
        if (r.point != MetricPoint::App) continue;
        loads.insert(r.load);
        Agg& a = agg[{r.load, r.cls == TrafficClass::Urllc ? 0 : 1}];
        a.mean_sum += r.stats.mean_us;
        ++a.n;
        a.max_us = std::max(a.max_us, r.stats.max_us);
    }

    double peak = 0.0;
    for (const auto& [k, a] : agg) peak = std::max(peak, a.max_us);
    double ymax = nice_ceiling(peak);

    const char* colors[4] = {"#c0392b", "#f0b27a", "#2471a3", "#a9cce3"};
    const char* labels[4] = {"urllc mean", "urllc max", "normal mean", "normal max"};

    std::string svg = svg_open();
    svg += y_axis(ymax, "application latency (ms)");
    for (int i = 0; i < 4; ++i) {
        svg += legend_entry(ML + 10.0 + 130.0 * i, MT - 12.0, colors[i], labels[i]);
    }

    double span = W - ML - MR;
    double group_w = span / std::max<std::size_t>(loads.size(), 1);
    double bar_w = group_w / 5.5;
    int gi = 0;
    for (double load : loads) {
        double gx = ML + gi * group_w + group_w / 2.0;
        for (int c = 0; c < 2; ++c) {
            auto it = agg.find({load, c});
            if (it == agg.end()) continue;
            double vals[2] = {it->second.mean_sum / it->second.n, it->second.max_us};
            for (int v = 0; v < 2; ++v) {
                double x = gx + (2 * c + v - 2) * bar_w;
                double y = y_px(vals[v], ymax);
                svg += fmt("<rect x=\"%.1f\" ", x) + fmt("y=\"%.1f\" ", y) +
                       fmt("width=\"%.1f\" ", bar_w - 2.0) +
                       fmt("height=\"%.1f\" ", H - MB - y) + "fill=\"" +
                       colors[2 * c + v] + "\"/>\n";
            }
        }
        svg += fmt("<text x=\"%.1f\" ", gx) + fmt("y=\"%.1f\" ", H - MB + 18.0) +
               "text-anchor=\"middle\">" + fmt("%g%%", load * 100.0) + "</text>\n";
        ++gi;
    }
    svg += fmt("<text x=\"%.1f\" ", ML + span / 2.0) + fmt("y=\"%.1f\" ", H - 14.0) +
           "text-anchor=\"middle\">offered load</text>\n";
    svg += "</svg>\n";
    return svg;
}

std::string render_load_lines(const std::vector<SummaryRow>& rows) {
    // Series keyed by (slot_us, class rank); points are seed-pooled means.
    std::map<std::pair<std::int64_t, int>, std::map<double, Agg>> series;
    for (const SummaryRow& r : rows) {
        if (r.point != MetricPoint::App) continue;
        Agg& a = series[{r.slot_us, r.cls == TrafficClass::Urllc ? 0 : 1}][r.load];
        a.mean_sum += r.stats.mean_us;
        ++a.n;
    }

    double peak = 0.0;
    for (const auto& [k, pts] : series) {
        for (const auto& [load, a] : pts) peak = std::max(peak, a.mean_sum / a.n);
    }
    double ymax = nice_ceiling(peak);

    const char* palette[6] = {"#c0392b", "#2471a3", "#27ae60", "#8e44ad", "#d68910", "#17a589"};

    std::string svg = svg_open();
    svg += y_axis(ymax, "mean application latency (ms)");

    double span = W - ML - MR;
    auto x_px = [&](double load) { return ML + load * span; };
    for (int i = 1; i <= 5; ++i) {
        double load = i * 0.2;
        svg += fmt("<text x=\"%.1f\" ", x_px(load)) + fmt("y=\"%.1f\" ", H - MB + 18.0) +
               "text-anchor=\"middle\">" + fmt("%g%%", load * 100.0) + "</text>\n";
    }

    int si = 0;
    for (const auto& [key, pts] : series) {
        const char* color = palette[si % 6];
        std::string poly;
        for (const auto& [load, a] : pts) {
            poly += fmt("%.1f", x_px(load)) + "," + fmt("%.1f ", y_px(a.mean_sum / a.n, ymax));
            svg += fmt("<circle cx=\"%.1f\" ", x_px(load)) +
                   fmt("cy=\"%.1f\" ", y_px(a.mean_sum / a.n, ymax)) + "r=\"3\" fill=\"" +
                   color + "\"/>\n";
        }
        svg += "<polyline points=\"" + poly + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        std::string label =
            std::to_string(key.first) + " us " + (key.second == 0 ? "urllc" : "normal");
        svg += legend_entry(ML + 10.0 + 150.0 * si, MT - 12.0, color, label);
        ++si;
    }
    svg += fmt("<text x=\"%.1f\" ", ML + span / 2.0) + fmt("y=\"%.1f\" ", H - 14.0) +
           "text-anchor=\"middle\">offered load</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace meshpon
