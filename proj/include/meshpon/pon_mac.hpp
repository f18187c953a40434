// PON MAC primitives: burst serialization arithmetic, upstream grants, the
// per-frame grant packer and the ONU-side transmission queue.
#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "meshpon/errors.hpp"
#include "meshpon/packet.hpp"
#include "meshpon/time.hpp"

namespace meshpon {

// Shared per-slice MAC parameters.
struct MacParams {
    double us_rate_bps = 10e9;
    SimTime frame_period = SimTime::us(125);
    SimTime guard_time = SimTime::us(1);
    std::int64_t burst_overhead_bytes = 50;
    std::int64_t poll_bytes = 50;
};

// Wire time of `bytes` at `rate_bps`, rounded up to whole picoseconds.
// Integral rates (every practical line rate) are computed exactly.
SimTime serialize_time(std::int64_t bytes, double rate_bps);

// Payload capacity of a grant after the burst overhead, never negative.
std::int64_t usable_bytes(SimTime duration, double rate_bps, std::int64_t overhead_bytes);

// Why a grant exists; also its packing priority (standing CGS grants are
// immovable, polls fill what is left).
enum class GrantKind { Standing = 0, Cti = 1, Residual = 2, Poll = 3 };

struct Grant {
    std::string onu_id;
    SimTime start;
    SimTime duration;
    tick_t frame_index = 0;
    GrantKind kind = GrantKind::Residual;
    std::int64_t bytes = 0;      // payload the grant was sized for
};

struct GrantMap {
    tick_t frame_index = 0;
    std::vector<Grant> grants;        // sorted by start
    bool capacity_exceeded = false;
};

struct GrantRequest {
    GrantKind kind = GrantKind::Residual;
    std::string onu_id;
    SimTime desired_start;
    std::int64_t bytes = 0;
};

struct PackResult {
    GrantMap map;
    std::vector<GrantRequest> spilled;     // did not fit; retry next frame
};

// First-fit packing of one upstream frame. Requests are honored in kind
// order (standing, CTI, residual, poll), within a kind by (desired, onu);
// each lands at the earliest free instant >= its desired start with
// guard_time separation, ending no later than the frame end. Anything that
// cannot fit is spilled and flags the frame.
PackResult pack_frame(tick_t frame_index, SimTime frame_start, SimTime min_start,
                      const MacParams& params, std::vector<GrantRequest> requests);

// One queued upstream burst at an ONU.
struct QueueItem {
    std::uint64_t item_id = 0;
    TrafficClass cls = TrafficClass::Normal;
    std::int64_t total_bytes = 0;
    std::int64_t remaining_bytes = 0;
    SimTime enqueue_time;
    bool cti_covered = false;     // a grant is already on its way for this burst
    bool sr_requested = false;    // counted in an occupancy report
    std::uint64_t burst_ref = 0;
};

// ONU upstream queue: URLLC strictly before NORMAL, FIFO within a class.
class OnuQueue {
public:
    explicit OnuQueue(std::string onu_id) : m_onu(std::move(onu_id)) {}

    void enqueue(QueueItem item);

    // Occupancy visible to a status report taken at `cutoff`: uncovered,
    // not-yet-reported items enqueued at or before that instant. Marks them
    // reported.
    std::int64_t report_and_mark(SimTime cutoff);

    struct Completion {
        std::uint64_t item_id;
        std::uint64_t burst_ref;
        TrafficClass cls;
        std::int64_t bytes;
        SimTime finish;        // last byte on the wire
    };

    // Serves a grant. Items drain in service order; a partially sent item
    // stays at its queue head and continues in a later grant. Completions
    // carry the exact wire-finish instant of each fully drained item.
    std::vector<Completion> transmit(const Grant& g, const MacParams& params);

    // Post-grant hygiene: drops report marks from leftovers so they are
    // re-reported, and uncovers items whose promised grant evidently came
    // and went (undersized standing grant, or a missed CTI prediction).
    void after_grant(const Grant& g);

    std::int64_t occupancy_bytes() const { return m_occupancy; }
    bool empty() const { return m_urllc.empty() && m_normal.empty(); }
    const std::string& onu() const { return m_onu; }

    std::int64_t total_enqueued() const { return m_enqueued; }
    std::int64_t total_transmitted() const { return m_transmitted; }

    // Longest covered-URLLC sojourn seen so far (enqueue to wire finish).
    SimTime max_covered_urllc_sojourn() const { return m_max_covered_sojourn; }

private:
    std::string m_onu;
    std::deque<QueueItem> m_urllc;
    std::deque<QueueItem> m_normal;
    std::int64_t m_occupancy = 0;
    std::int64_t m_enqueued = 0;
    std::int64_t m_transmitted = 0;
    SimTime m_max_covered_sojourn = SimTime::zero();
};

} // namespace meshpon
