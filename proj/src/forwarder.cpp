// Downlink hop between the edge OLT and the far application host.
#include "meshpon/forwarder.hpp"

#include "meshpon/errors.hpp"

namespace meshpon {

DownlinkForwarder::DownlinkForwarder(double ds_rate_bps, SimTime frame_period, SimTime phase,
                                     std::int64_t overhead_bytes, SimTime prop_delay)
    : m_ds_rate_bps(ds_rate_bps),
      m_frame_period(frame_period),
      m_phase(phase),
      m_overhead_bytes(overhead_bytes),
      m_prop_delay(prop_delay),
      m_busy_until(SimTime::zero()) {
    if (ds_rate_bps <= 0.0) throw InvalidRate("downstream rate must be positive");
    if (frame_period <= SimTime::zero()) throw ConfigError("frame period must be positive");
}

ForwardResult DownlinkForwarder::forward(SimTime ready, std::int64_t payload_bytes) {
    SimTime departure = next_boundary(ready, m_frame_period, m_phase);
    if (m_busy_until > departure) departure = m_busy_until;
    SimTime wire = serialize_time(payload_bytes + m_overhead_bytes, m_ds_rate_bps);
    m_busy_until = departure + wire;
    return {departure, m_busy_until + m_prop_delay};
}

}  // namespace meshpon
