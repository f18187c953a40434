#include "meshpon/dba.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace meshpon {

namespace {

// Requests already queued (carry) or derived count as activity; only truly
// silent ONUs get a polling grant.
void add_polls(std::vector<GrantRequest>& requests, const DbaContext& ctx) {
    std::set<std::string> active;
    for (const auto& r : requests) active.insert(r.onu_id);
    for (const auto& onu : ctx.onus) {
        if (active.count(onu)) continue;
        GrantRequest poll;
        poll.kind = GrantKind::Poll;
        poll.onu_id = onu;
        poll.desired_start = ctx.frame_start;
        poll.bytes = ctx.params.poll_bytes;
        requests.push_back(poll);
    }
}

std::vector<GrantRequest> residual_requests(const OccupancyReports& reports,
                                            const DbaContext& ctx) {
    // Backlog already promised by a carried (spilled) data grant must not be
    // requested twice, or congested frames breed duplicate grants.
    std::map<std::string, std::int64_t> promised;
    for (const auto& c : ctx.carry) {
        if (c.kind == GrantKind::Cti || c.kind == GrantKind::Residual)
            promised[c.onu_id] += c.bytes;
    }
    std::vector<GrantRequest> out;
    for (const auto& [onu, bytes] : reports) {
        std::int64_t owed = bytes;
        auto it = promised.find(onu);
        if (it != promised.end()) owed -= it->second;
        if (owed <= 0) continue;
        GrantRequest r;
        r.kind = GrantKind::Residual;
        r.onu_id = onu;
        r.desired_start = ctx.frame_start;
        r.bytes = owed;
        out.push_back(r);
    }
    return out;
}

// Proportional scaling of residual demand so that the frame can carry it.
// Every grant costs its serialization plus one guard; the payload share is
// what gets scaled.
void scale_to_capacity(std::vector<GrantRequest>& residual, const DbaContext& ctx) {
    SimTime available = ctx.frame_start + ctx.params.frame_period -
                        std::max(ctx.frame_start, ctx.min_start);
    tick_t fixed_ps = 0;
    std::int64_t payload = 0;
    for (const auto& r : residual) {
        fixed_ps += serialize_time(ctx.params.burst_overhead_bytes, ctx.params.us_rate_bps).ps +
                    ctx.params.guard_time.ps;
        payload += r.bytes;
    }
    if (payload == 0) return;
    tick_t payload_budget = available.ps - fixed_ps;
    tick_t payload_needed = serialize_time(payload, ctx.params.us_rate_bps).ps;
    if (payload_needed <= payload_budget) return;
    if (payload_budget < 0) payload_budget = 0;
    double factor = static_cast<double>(payload_budget) / static_cast<double>(payload_needed);
    for (auto& r : residual) {
        r.bytes = static_cast<std::int64_t>(static_cast<double>(r.bytes) * factor);
    }
}

DbaResult run(std::vector<GrantRequest> requests, const DbaContext& ctx) {
    for (const auto& c : ctx.carry) {
        GrantRequest r = c;
        r.desired_start = ctx.frame_start;     // spill restarts at the frame head
        requests.push_back(r);
    }
    add_polls(requests, ctx);
    PackResult packed = pack_frame(ctx.frame_index, ctx.frame_start, ctx.min_start,
                                   ctx.params, std::move(requests));
    // Polls are re-derived for still-silent ONUs every frame; a spilled poll
    // is dropped rather than carried, and only data spill marks congestion.
    std::erase_if(packed.spilled,
                  [](const GrantRequest& r) { return r.kind == GrantKind::Poll; });
    packed.map.capacity_exceeded = !packed.spilled.empty();
    return DbaResult{std::move(packed.map), std::move(packed.spilled)};
}

} // namespace

DbaResult sr_dba(const OccupancyReports& reports, const DbaContext& ctx) {
    std::vector<GrantRequest> requests = residual_requests(reports, ctx);
    scale_to_capacity(requests, ctx);
    return run(std::move(requests), ctx);
}

DbaResult co_dba(const std::vector<CtiReport>& cti, const OccupancyReports& reports,
                 const DbaContext& ctx) {
    std::vector<GrantRequest> requests;
    for (const auto& rep : cti) {
        GrantRequest r;
        r.kind = GrantKind::Cti;
        r.onu_id = rep.onu_id;
        r.desired_start = rep.expected_arrival + ctx.params.guard_time;
        r.bytes = rep.expected_bytes;
        requests.push_back(r);
    }
    auto residual = residual_requests(reports, ctx);
    requests.insert(requests.end(), residual.begin(), residual.end());
    return run(std::move(requests), ctx);
}

DbaResult enhanced_co_dba(const std::vector<CtiReport>& cti,
                          const std::vector<CgsAdvertisement>& ads,
                          const OccupancyReports& reports, const DbaContext& ctx) {
    std::vector<GrantRequest> requests;
    SimTime frame_end = ctx.frame_start + ctx.params.frame_period;
    for (const auto& ad : ads) {
        // Slot arrivals landing inside this frame: phase + k*period.
        tick_t k = (ctx.frame_start - ad.phase).ps >= 0
                       ? grid_index(ctx.frame_start, ad.period, ad.phase)
                       : 0;
        for (;; ++k) {
            SimTime arrival = ad.phase + SimTime(k * ad.period.ps);
            if (arrival < ctx.frame_start) continue;
            if (arrival >= frame_end) break;
            GrantRequest r;
            r.kind = GrantKind::Standing;
            r.onu_id = ad.onu_id;
            r.desired_start = arrival;
            r.bytes = ad.bytes_per_slot;
            requests.push_back(r);
        }
    }
    for (const auto& rep : cti) {
        GrantRequest r;
        r.kind = GrantKind::Cti;
        r.onu_id = rep.onu_id;
        r.desired_start = rep.expected_arrival + ctx.params.guard_time;
        r.bytes = rep.expected_bytes;
        requests.push_back(r);
    }
    auto residual = residual_requests(reports, ctx);
    requests.insert(requests.end(), residual.begin(), residual.end());
    return run(std::move(requests), ctx);
}

} // namespace meshpon
