// The three upstream DBA policies. All of them funnel into the shared frame
// packer; they differ only in which grant requests they are allowed to
// derive: status reports (sr), CTI predictions (codba), and semi-static CGS
// advertisements on top (codba_cgs).
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "meshpon/pon_mac.hpp"
#include "meshpon/topology.hpp"

namespace meshpon {

// DU/CU prediction of one upstream burst: how many fronthaul bytes will
// show up at which ONU, and when.
struct CtiReport {
    std::string onu_id;
    tick_t slot_index = 0;
    std::int64_t expected_bytes = 0;
    SimTime expected_arrival;
};

// Semi-static description of an ONU's CGS share: a full-size burst every
// slot, phase-locked to the slot arrivals.
struct CgsAdvertisement {
    std::string onu_id;
    std::int64_t bytes_per_slot = 0;
    SimTime period;
    SimTime phase;      // ONU-arrival instant of slot 0's burst
};

// Occupancy reports visible to the OLT at this pass, keyed by ONU.
using OccupancyReports = std::map<std::string, std::int64_t>;

struct DbaContext {
    MacParams params;
    tick_t frame_index = 0;
    SimTime frame_start;
    SimTime min_start;                  // previous frame's last grant end + guard
    std::vector<std::string> onus;      // slice members, canonical order
    std::vector<GrantRequest> carry;    // spill from the previous frame
};

struct DbaResult {
    GrantMap map;
    std::vector<GrantRequest> spill;
};

// Baseline: grants sized to reported occupancy, proportionally scaled when
// the frame cannot carry the total demand; silent ONUs get polling grants.
DbaResult sr_dba(const OccupancyReports& reports, const DbaContext& ctx);

// Cooperative: one grant per CTI report, placed at expected arrival plus
// guard. Reported (uncovered) occupancy still rides the sr path underneath,
// so traffic the DU cannot predict is not starved.
DbaResult co_dba(const std::vector<CtiReport>& cti, const OccupancyReports& reports,
                 const DbaContext& ctx);

// CGS-aware cooperative: standing full-size grants at every advertised slot
// arrival, CTI and report grants packed around them.
DbaResult enhanced_co_dba(const std::vector<CtiReport>& cti,
                          const std::vector<CgsAdvertisement>& ads,
                          const OccupancyReports& reports, const DbaContext& ctx);

} // namespace meshpon
