// Downlink hop between the edge OLT and the far application host.
#pragma once

#include "meshpon/pon_mac.hpp"
#include "meshpon/time.hpp"

#include <cstdint>

namespace meshpon {

struct ForwardResult {
    SimTime departure;     // when the burst leaves on the downstream wavelength
    SimTime t_at_app;      // departure + serialization + propagation
};

// Single-wavelength downstream port. Bursts depart on the framing grid
// (next boundary at or after the ready instant) unless the port is still
// draining an earlier burst, in which case they follow it immediately.
// Callers must present bursts in non-decreasing ready order.
class DownlinkForwarder {
public:
    DownlinkForwarder(double ds_rate_bps, SimTime frame_period, SimTime phase,
                      std::int64_t overhead_bytes, SimTime prop_delay);

    ForwardResult forward(SimTime ready, std::int64_t payload_bytes);

    SimTime busy_until() const { return m_busy_until; }

private:
    double m_ds_rate_bps;
    SimTime m_frame_period;
    SimTime m_phase;
    std::int64_t m_overhead_bytes;
    SimTime m_prop_delay;
    SimTime m_busy_until;
};

}  // namespace meshpon
