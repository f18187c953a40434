// Application packet and traffic class, shared by the radio, MAC and
// forwarder layers.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "meshpon/time.hpp"

namespace meshpon {

enum class TrafficClass { Urllc, Normal };

inline const char* to_string(TrafficClass c) {
    return c == TrafficClass::Urllc ? "urllc" : "normal";
}

// One application-level datagram. Later timestamps are filled as the packet
// moves through the pipeline; they must be non-decreasing in stage order.
struct AppPacket {
    std::uint64_t id = 0;
    std::uint32_t ue_id = 0;
    std::string ru_id;
    TrafficClass cls = TrafficClass::Normal;
    std::int64_t size_bytes = 0;
    int prbs = 0;                      // radio allocation footprint, set at admission

    SimTime t_created;
    std::optional<SimTime> t_radio_tx_start;
    std::optional<SimTime> t_at_onu;
    std::optional<SimTime> t_at_du;
    std::optional<SimTime> t_at_app;
};

} // namespace meshpon
