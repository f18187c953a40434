#include "meshpon/traffic.hpp"

#include <algorithm>
#include <cmath>

namespace meshpon {

std::int64_t SizeDist::draw(RngStream& rng) const {
    if (kind == Kind::Fixed) return fixed_bytes;
    double s = rng.exp_draw(1.0 / mean_bytes);
    std::int64_t b = static_cast<std::int64_t>(std::llround(s));
    return std::clamp(b, min_bytes, max_bytes);
}

double SizeDist::mean_standalone_fronthaul(const RadioConfig& cfg) const {
    double per_prb = static_cast<double>(fronthaul_bytes(1, cfg.symbols_per_slot, cfg) -
                                         cfg.header_bytes);
    if (kind == Kind::Fixed) {
        return prbs_needed(fixed_bytes, cfg) * per_prb + cfg.header_bytes;
    }
    // Clamped exponential over the PRB grid. The CDF of the clamped size is
    // 0 below min, 1-exp(-x/mean) on [min, max), 1 at max; the clamp's atoms
    // fall out of the right-continuous differences automatically.
    std::int64_t grid = user_bytes_per_prb(cfg);
    auto cdf = [&](double x) {
        if (x < static_cast<double>(min_bytes)) return 0.0;
        if (x >= static_cast<double>(max_bytes)) return 1.0;
        return 1.0 - std::exp(-x / mean_bytes);
    };
    int k_max = prbs_needed(max_bytes, cfg);
    double expected_prbs = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        double p = cdf(static_cast<double>(k) * grid) - cdf(static_cast<double>(k - 1) * grid);
        expected_prbs += k * p;
    }
    return expected_prbs * per_prb + cfg.header_bytes;
}

RuRates calibrate_rates(double load, const RadioConfig& cfg, double us_rate_bps,
                        int n_rus, const TrafficShape& shape) {
    if (!(load > 0.0) || !(load < 1.0)) {
        throw InvalidLoad("load must lie strictly between 0 and 1");
    }
    if (n_rus < 1) throw InvalidLoad("need at least one RU");

    double target_bps = load * us_rate_bps;
    double urllc_bps = shape.urllc_load_fraction * target_bps;
    double normal_bps = target_bps - urllc_bps;

    RuRates r;
    double f_u = shape.urllc_size.mean_standalone_fronthaul(cfg);
    double f_n = shape.normal_size.mean_standalone_fronthaul(cfg);
    if (urllc_bps > 0) r.urllc_pps = urllc_bps / (8.0 * f_u * n_rus);
    if (normal_bps > 0) r.normal_pps = normal_bps / (8.0 * f_n * n_rus);
    return r;
}

TrafficSource::TrafficSource(std::string ru_id, TrafficClass cls, double pps,
                             SizeDist dist, std::uint64_t run_seed)
    : m_ru(std::move(ru_id)),
      m_cls(cls),
      m_pps(pps),
      m_dist(dist),
      m_arrivals(run_seed, m_ru + "." + to_string(cls) + ".arrival"),
      m_sizes(run_seed, m_ru + "." + to_string(cls) + ".size") {}

SimTime TrafficSource::next_arrival() {
    double dt = m_arrivals.exp_draw(m_pps);
    // Sub-picosecond draws quantize to zero; keep per-source creation times
    // strictly increasing on the integer clock.
    tick_t gap = std::max<tick_t>(1, std::llround(dt * static_cast<double>(TICKS_PER_SEC)));
    m_t += SimTime(gap);
    return m_t;
}

std::int64_t TrafficSource::draw_size() { return m_dist.draw(m_sizes); }

} // namespace meshpon
