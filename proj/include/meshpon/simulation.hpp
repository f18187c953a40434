// Orchestration: wires traffic, radio admission, per-slice DBA, and the
// tier-2 downlink hop into one deterministic event-driven run.
#pragma once

#include "meshpon/metrics.hpp"
#include "meshpon/scenario.hpp"
#include "meshpon/topology.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace meshpon {

struct RunConfig {
    double load = 0.5;
    std::uint64_t seed = 1;
    std::optional<DbaPolicy> dba_override;    // applies to every slice
    bool use_estimator = false;               // size standing grants from an EWMA
    bool trace = false;                       // keep per-packet timelines
};

// Full per-packet timeline, recorded when tracing is on.
struct PacketTrace {
    std::uint64_t id = 0;
    std::string ru;
    TrafficClass cls = TrafficClass::Urllc;
    std::int64_t bytes = 0;
    SimTime created;
    SimTime tx_start;       // over-the-air slot boundary
    SimTime at_onu;         // fronthaul burst available at the ONU
    SimTime grant_start;    // upstream grant that finished the burst
    SimTime depart;         // last byte on the upstream wavelength
    SimTime at_du;          // burst at the OLT/DU
    SimTime ready;          // out of the DU/CU pipeline
    SimTime app;            // delivered to the application host
    std::optional<SimTime> dl_depart;   // tier-2 downlink departure, if any
};

struct RunResult {
    double load = 0.0;
    std::uint64_t seed = 0;
    std::int64_t slot_us = 0;
    std::int64_t created = 0;
    std::int64_t delivered = 0;
    std::int64_t capacity_exceeded_frames = 0;
    std::int64_t spilled_requests = 0;
    SimTime max_covered_urllc_sojourn;
    SimTime max_downlink_wait;      // alignment + queueing at the tier-2 egress
    bool audit_clean = false;
    std::vector<std::string> audit_notes;
    MetricsCollector metrics{SimTime::zero()};
    std::vector<PacketTrace> traces;
};

// Runs one scenario at one (load, seed) point. Identical inputs produce
// bit-identical results. Throws ConfigError when the scenario is invalid.
RunResult run_simulation(const Scenario& sc, const RunConfig& rc);

}  // namespace meshpon
