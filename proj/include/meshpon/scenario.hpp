// Scenario files: JSON descriptions of topology, numerology, traffic shape,
// and the sweep plan.
#pragma once

#include "meshpon/pon_mac.hpp"
#include "meshpon/radio.hpp"
#include "meshpon/topology.hpp"
#include "meshpon/traffic.hpp"

#include <string>
#include <vector>

namespace meshpon {

// Scripted arrival used by deterministic timeline checks instead of the
// Poisson generators.
struct ManualPacket {
    std::string ru;
    TrafficClass cls = TrafficClass::Urllc;
    std::int64_t bytes = 0;
    SimTime at;
};

struct SweepPlan {
    std::vector<double> loads{0.25, 0.5, 0.75, 0.9, 0.95};
    int seeds = 3;
};

struct Scenario {
    std::string name = "scenario";
    SimTime duration = SimTime::sec(10.0);
    double warmup_fraction = 0.05;
    RadioConfig radio;
    TrafficShape shape;
    Topology topology;
    MacParams mac_base;      // guard, overhead, poll; rate and frame come per slice
    SweepPlan sweep;
    std::vector<ManualPacket> manual_packets;

    SimTime warmup_end() const {
        return SimTime(static_cast<tick_t>(static_cast<double>(duration.ps) * warmup_fraction));
    }

    MacParams mac_for(const VponSlice& slice) const {
        MacParams p = mac_base;
        p.us_rate_bps = slice.us_rate_bps;
        p.frame_period = slice.frame_period;
        return p;
    }
};

// Both throw ConfigError on malformed input or unknown enum spellings.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

// Human-readable invariant violations; empty means the scenario is runnable.
std::vector<std::string> validate_scenario(const Scenario& sc);

// Rescales the slot grid keeping per-symbol timing, so the symbol count
// shrinks proportionally with the slot. Throws ConfigError when the scaled
// count is not a whole positive number.
void apply_slot_override(Scenario& sc, SimTime new_slot);

}  // namespace meshpon
