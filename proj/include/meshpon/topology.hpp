// ODN topology and vPON slicing. The span graph is a tree; mesh behavior
// comes from reflective splitter paths, so the optical route between two
// endpoints is simply the unique tree path between them.
#pragma once

#include <string>
#include <vector>

#include "meshpon/errors.hpp"
#include "meshpon/packet.hpp"
#include "meshpon/time.hpp"

namespace meshpon {

enum class NodeKind { CoOlt, MecOlt, RuOnu, Splitter };

enum class DbaPolicy { Sr, CoDba, CoDbaCgs };

struct OdnNode {
    std::string id;
    NodeKind kind = NodeKind::RuOnu;
};

struct FiberSpan {
    std::string a;
    std::string b;
    double length_km = 0.0;
};

// One wavelength channel with one OLT and a member set. A member may itself
// be an OLT node registered as a pseudo-ONU (the tier-2 receiver).
struct VponSlice {
    std::string id;
    int wavelength = 0;
    std::string olt;
    std::vector<std::string> members;
    double us_rate_bps = 10e9;
    double ds_rate_bps = 10e9;
    SimTime frame_period = SimTime::us(125);
    DbaPolicy dba = DbaPolicy::CoDbaCgs;
    SimTime dl_phase = SimTime::zero();
    // Which application class this slice's fronthaul carries.
    TrafficClass traffic_class = TrafficClass::Urllc;
};

struct Topology {
    std::vector<OdnNode> nodes;
    std::vector<FiberSpan> spans;
    std::vector<VponSlice> slices;
    double prop_us_per_km = 5.0;

    // Unique tree path length between two nodes, in km. Throws Unreachable
    // when the span graph does not connect them.
    double path_km(const std::string& a, const std::string& b) const;

    SimTime path_delay(const std::string& a, const std::string& b) const;

    // Same, restricted to slice endpoints: both nodes must be the slice's
    // OLT or one of its members.
    SimTime path_delay_in_slice(const std::string& a, const std::string& b,
                                const VponSlice& slice) const;

    // Canonical "min|max" keys of every span on some olt->member path of the
    // slice. Used for wavelength conflict detection.
    std::vector<std::string> spans_used(const VponSlice& slice) const;

    const OdnNode* find_node(const std::string& id) const;
    const VponSlice* find_slice(const std::string& id) const;
};

// Returns human-readable invariant violations; empty means valid.
std::vector<std::string> validate_topology(const Topology& topo);

} // namespace meshpon
