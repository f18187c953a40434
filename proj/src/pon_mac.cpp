#include "meshpon/pon_mac.hpp"

#include <algorithm>
#include <cmath>

namespace meshpon {

SimTime serialize_time(std::int64_t bytes, double rate_bps) {
    if (!(rate_bps > 0.0)) throw InvalidRate("serialization needs a positive rate");
    if (bytes <= 0) return SimTime::zero();
    double rounded = std::nearbyint(rate_bps);
    if (rounded == rate_bps && rounded < 9.0e18) {
        // Exact path: ceil(bytes * 8 * 1e12 / rate) without losing precision
        // to the double mantissa.
        __int128 numer = static_cast<__int128>(bytes) * 8 * TICKS_PER_SEC;
        __int128 rate = static_cast<__int128>(rounded);
        return SimTime(static_cast<tick_t>((numer + rate - 1) / rate));
    }
    return SimTime(static_cast<tick_t>(std::ceil(
        static_cast<double>(bytes) * 8.0 * static_cast<double>(TICKS_PER_SEC) / rate_bps)));
}

std::int64_t usable_bytes(SimTime duration, double rate_bps, std::int64_t overhead_bytes) {
    if (!(rate_bps > 0.0)) throw InvalidRate("usable_bytes needs a positive rate");
    if (duration <= SimTime::zero()) return 0;
    __int128 bits = static_cast<__int128>(duration.ps) *
                    static_cast<__int128>(std::nearbyint(rate_bps));
    std::int64_t bytes = static_cast<std::int64_t>(bits / (8 * static_cast<__int128>(TICKS_PER_SEC)));
    return std::max<std::int64_t>(0, bytes - overhead_bytes);
}

PackResult pack_frame(tick_t frame_index, SimTime frame_start, SimTime min_start,
                      const MacParams& params, std::vector<GrantRequest> requests) {
    std::stable_sort(requests.begin(), requests.end(),
                     [](const GrantRequest& a, const GrantRequest& b) {
                         if (a.kind != b.kind) return a.kind < b.kind;
                         if (a.desired_start != b.desired_start) return a.desired_start < b.desired_start;
                         return a.onu_id < b.onu_id;
                     });

    SimTime frame_end = frame_start + params.frame_period;
    SimTime floor = std::max(frame_start, min_start);

    PackResult out;
    out.map.frame_index = frame_index;

    // Placed intervals, kept sorted by start.
    std::vector<std::pair<SimTime, SimTime>> placed;

    for (const auto& req : requests) {
        SimTime dur = serialize_time(req.bytes + params.burst_overhead_bytes, params.us_rate_bps);
        SimTime candidate = std::max(req.desired_start, floor);
        bool fits = false;
        for (const auto& [s, e] : placed) {
            if (candidate + dur + params.guard_time <= s) break;      // fits before this one
            candidate = std::max(candidate, e + params.guard_time);
        }
        if (candidate + dur <= frame_end) fits = true;

        if (!fits) {
            out.map.capacity_exceeded = true;
            out.spilled.push_back(req);
            continue;
        }

        Grant g;
        g.onu_id = req.onu_id;
        g.start = candidate;
        g.duration = dur;
        g.frame_index = frame_index;
        g.kind = req.kind;
        g.bytes = req.bytes;
        auto pos = std::upper_bound(placed.begin(), placed.end(),
                                    std::make_pair(candidate, candidate + dur));
        placed.insert(pos, {candidate, candidate + dur});
        out.map.grants.push_back(g);
    }

    std::sort(out.map.grants.begin(), out.map.grants.end(),
              [](const Grant& a, const Grant& b) { return a.start < b.start; });
    return out;
}

void OnuQueue::enqueue(QueueItem item) {
    item.remaining_bytes = item.total_bytes;
    m_occupancy += item.total_bytes;
    m_enqueued += item.total_bytes;
    (item.cls == TrafficClass::Urllc ? m_urllc : m_normal).push_back(std::move(item));
}

std::int64_t OnuQueue::report_and_mark(SimTime cutoff) {
    std::int64_t bytes = 0;
    auto scan = [&](std::deque<QueueItem>& q) {
        for (auto& it : q) {
            if (it.cti_covered || it.sr_requested) continue;
            if (it.enqueue_time > cutoff) continue;
            bytes += it.remaining_bytes;
            it.sr_requested = true;
        }
    };
    scan(m_urllc);
    scan(m_normal);
    return bytes;
}

std::vector<OnuQueue::Completion> OnuQueue::transmit(const Grant& g, const MacParams& params) {
    std::vector<Completion> done;
    std::int64_t budget = usable_bytes(g.duration, params.us_rate_bps, params.burst_overhead_bytes);
    std::int64_t sent = 0;

    auto serve = [&](std::deque<QueueItem>& q) {
        while (!q.empty() && sent < budget) {
            QueueItem& head = q.front();
            std::int64_t take = std::min(head.remaining_bytes, budget - sent);
            sent += take;
            head.remaining_bytes -= take;
            m_occupancy -= take;
            m_transmitted += take;
            if (head.remaining_bytes > 0) break;       // grant exhausted mid-item
            Completion c;
            c.item_id = head.item_id;
            c.burst_ref = head.burst_ref;
            c.cls = head.cls;
            c.bytes = head.total_bytes;
            c.finish = g.start +
                       serialize_time(params.burst_overhead_bytes + sent, params.us_rate_bps);
            if (head.cls == TrafficClass::Urllc && head.cti_covered) {
                SimTime sojourn = c.finish - head.enqueue_time;
                if (sojourn > m_max_covered_sojourn) m_max_covered_sojourn = sojourn;
            }
            done.push_back(c);
            q.pop_front();
        }
    };
    serve(m_urllc);
    serve(m_normal);
    return done;
}

void OnuQueue::after_grant(const Grant& g) {
    auto scrub = [&](std::deque<QueueItem>& q) {
        for (auto& it : q) {
            it.sr_requested = false;
            if (!it.cti_covered) continue;
            // A leftover covered URLLC item after its standing grant means the
            // grant was undersized; a covered NORMAL item older than any
            // executed grant means its predicted grant was missed. Either way
            // the status-report path takes over.
            if (it.cls == TrafficClass::Urllc && g.kind == GrantKind::Standing) {
                it.cti_covered = false;
            } else if (it.cls == TrafficClass::Normal && it.enqueue_time < g.start) {
                it.cti_covered = false;
            }
        }
    };
    scrub(m_urllc);
    scrub(m_normal);
}

} // namespace meshpon
