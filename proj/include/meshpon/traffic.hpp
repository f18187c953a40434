// Traffic sources and the mapping from the load axis to per-RU arrival
// rates. Load is defined against standalone fronthaul volume: each packet
// counted as its own PRB footprint plus one burst header, so the knob keeps
// its meaning across DBA policies.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meshpon/packet.hpp"
#include "meshpon/radio.hpp"
#include "meshpon/rng.hpp"

namespace meshpon {

struct SizeDist {
    enum class Kind { Fixed, ExpClamped };
    Kind kind = Kind::Fixed;
    std::int64_t fixed_bytes = 128;
    double mean_bytes = 6000.0;        // ExpClamped only
    std::int64_t min_bytes = 64;
    std::int64_t max_bytes = 30000;

    std::int64_t draw(RngStream& rng) const;

    // Expected standalone fronthaul volume of one packet:
    // prbs_needed(size) x per-PRB IQ volume + header. Exact for Fixed,
    // closed-form over the PRB grid for ExpClamped.
    double mean_standalone_fronthaul(const RadioConfig& cfg) const;
};

struct TrafficShape {
    double urllc_load_fraction = 0.10;   // share of offered load that is URLLC
    SizeDist urllc_size;                 // default: fixed 128 B
    SizeDist normal_size;                // default: exponential mean 6 kB, clamped
};

inline TrafficShape default_shape() {
    TrafficShape s;
    s.urllc_size.kind = SizeDist::Kind::Fixed;
    s.urllc_size.fixed_bytes = 128;
    s.normal_size.kind = SizeDist::Kind::ExpClamped;
    s.normal_size.mean_bytes = 6000.0;
    s.normal_size.min_bytes = 64;
    s.normal_size.max_bytes = 30000;
    return s;
}

struct RuRates {
    double urllc_pps = 0.0;      // packets per second per RU
    double normal_pps = 0.0;
};

// Per-RU Poisson rates such that the aggregate standalone fronthaul bit-rate
// over n_rus equals load x us_rate_bps, split by urllc_load_fraction.
RuRates calibrate_rates(double load, const RadioConfig& cfg, double us_rate_bps,
                        int n_rus, const TrafficShape& shape);

// One Poisson arrival process for one (RU, class).
class TrafficSource {
public:
    TrafficSource(std::string ru_id, TrafficClass cls, double pps, SizeDist dist,
                  std::uint64_t run_seed);

    // Next arrival strictly after the current one; first call starts from 0.
    SimTime next_arrival();
    std::int64_t draw_size();

    const std::string& ru() const { return m_ru; }
    TrafficClass cls() const { return m_cls; }
    double rate() const { return m_pps; }

private:
    std::string m_ru;
    TrafficClass m_cls;
    double m_pps;
    SizeDist m_dist;
    RngStream m_arrivals;
    RngStream m_sizes;
    SimTime m_t = SimTime::zero();
};

} // namespace meshpon
