// Orchestration: wires traffic, radio admission, per-slice DBA, and the
// tier-2 downlink hop into one deterministic event-driven run.
#include "meshpon/simulation.hpp"

#include "meshpon/dba.hpp"
#include "meshpon/event_queue.hpp"
#include "meshpon/forwarder.hpp"
#include "meshpon/radio.hpp"
#include "meshpon/traffic.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>
#include <utility>

namespace meshpon {

namespace {

// All packets admitted to the same (slice, RU, slot) leave the RU as one
// fronthaul burst and share every timestamp from the ONU onwards.
struct Burst {
    int slice_idx = 0;
    std::string ru;
    tick_t slot_index = 0;
    TrafficClass cls = TrafficClass::Urllc;
    std::int64_t user_bytes = 0;
    std::int64_t fronthaul_total = 0;
    SimTime arrival;
    std::vector<AppPacket> packets;
};

struct SliceRt {
    const VponSlice* cfg = nullptr;
    MacParams mac;
    DbaPolicy policy = DbaPolicy::Sr;
    std::map<std::string, OnuQueue> queues;    // RU members only
    std::map<std::string, SimTime> prop;       // OLT <-> member, one way
    int lead = 1;                              // DBA pass lookahead, in frames
    SimTime floor_after;                       // earliest start left to the next frame
    std::vector<GrantRequest> spill;
    std::map<tick_t, std::map<std::string, CtiReport>> cti;   // keyed by arrival frame
    std::map<std::string, double> ewma;        // estimator state, bytes per slot
    std::optional<DownlinkForwarder> dl;
    std::int64_t full_cgs_bytes = 0;
};

class Simulation {
public:
    Simulation(const Scenario& sc, const RunConfig& rc)
        : m_sc(sc), m_rc(rc), m_radio(sc.radio), m_metrics(sc.warmup_end()) {
        auto bad = validate_scenario(sc);
        if (!bad.empty()) throw ConfigError("scenario invalid: " + bad.front());
        setup_slices();
        setup_traffic();
    }

    RunResult run();

private:
    void setup_slices();
    void setup_traffic();
    void on_arrival(std::size_t src_idx);
    void create_packet(const std::string& ru, TrafficClass cls, std::int64_t bytes);
    void on_burst_ready(std::size_t burst_idx);
    void dba_pass(int slice_idx, tick_t frame_index);
    std::vector<CtiReport> take_cti(SliceRt& sl, tick_t frame_index);
    std::vector<CgsAdvertisement> build_ads(SliceRt& sl, OccupancyReports& reports);
    void exec_grant(int slice_idx, const Grant& g);
    void deliver(int slice_idx, std::size_t burst_idx, SimTime grant_start, SimTime finish);

    const Scenario& m_sc;
    RunConfig m_rc;
    Scheduler m_sched;
    RadioScheduler m_radio;
    MetricsCollector m_metrics;

    std::vector<SliceRt> m_slices;
    std::map<std::pair<std::string, TrafficClass>, int> m_class_slice;
    std::deque<TrafficSource> m_sources;
    std::deque<Burst> m_bursts;
    std::map<std::tuple<int, std::string, tick_t>, std::size_t> m_open;

    std::uint64_t m_next_packet_id = 0;
    std::int64_t m_created = 0;
    std::int64_t m_delivered = 0;
    std::int64_t m_capacity_frames = 0;
    std::int64_t m_spilled = 0;
    std::int64_t m_order_violations = 0;
    std::int64_t m_grant_violations = 0;
    SimTime m_max_dl_wait;
    std::vector<PacketTrace> m_traces;
};

void Simulation::setup_slices() {
    const Topology& topo = m_sc.topology;
    for (std::size_t s = 0; s < topo.slices.size(); ++s) {
        const VponSlice& v = topo.slices[s];
        SliceRt rt;
        rt.cfg = &v;
        rt.mac = m_sc.mac_for(v);
        rt.policy = m_rc.dba_override.value_or(v.dba);
        rt.full_cgs_bytes =
            fronthaul_bytes(cgs_prbs(m_sc.radio), m_sc.radio.symbols_per_slot, m_sc.radio);

        SimTime prop_max = SimTime::zero();
        for (const std::string& m : v.members) {
            SimTime d = topo.path_delay(v.olt, m);
            rt.prop[m] = d;
            prop_max = std::max(prop_max, d);
            const OdnNode* node = topo.find_node(m);
            if (node->kind == NodeKind::RuOnu) {
                rt.queues.emplace(m, OnuQueue(m));
                m_class_slice.try_emplace({m, v.traffic_class}, static_cast<int>(s));
            } else {
                // An OLT registered as a pseudo-ONU is the tier-2 receiver.
                rt.dl.emplace(v.ds_rate_bps, v.frame_period, v.dl_phase,
                              rt.mac.burst_overhead_bytes, d);
            }
        }
        tick_t fp = rt.mac.frame_period.ps;
        rt.lead = static_cast<int>(std::max<tick_t>(1, (prop_max.ps + fp - 1) / fp));
        m_slices.push_back(std::move(rt));
    }
}

void Simulation::setup_traffic() {
    if (!m_sc.manual_packets.empty()) {
        for (const ManualPacket& p : m_sc.manual_packets) {
            m_sched.schedule(p.at, EventClass::Traffic,
                             [this, p] { create_packet(p.ru, p.cls, p.bytes); });
        }
        return;
    }
    for (const SliceRt& rt : m_slices) {
        const VponSlice& v = *rt.cfg;
        int n_rus = static_cast<int>(rt.queues.size());
        if (n_rus == 0) continue;
        RuRates rates = calibrate_rates(m_rc.load, m_sc.radio, v.us_rate_bps, n_rus, m_sc.shape);
        bool urllc = v.traffic_class == TrafficClass::Urllc;
        double pps = urllc ? rates.urllc_pps : rates.normal_pps;
        if (pps <= 0.0) continue;
        const SizeDist& dist = urllc ? m_sc.shape.urllc_size : m_sc.shape.normal_size;
        for (const auto& [ru, q] : rt.queues) {
            (void)q;
            m_sources.emplace_back(ru, v.traffic_class, pps, dist, m_rc.seed);
        }
    }
    for (std::size_t i = 0; i < m_sources.size(); ++i) {
        SimTime t = m_sources[i].next_arrival();
        if (t <= m_sc.duration) {
            m_sched.schedule(t, EventClass::Traffic, [this, i] { on_arrival(i); });
        }
    }
}

void Simulation::on_arrival(std::size_t src_idx) {
    TrafficSource& src = m_sources[src_idx];
    create_packet(src.ru(), src.cls(), src.draw_size());
    SimTime t = src.next_arrival();
    if (t <= m_sc.duration) {
        m_sched.schedule(t, EventClass::Traffic, [this, src_idx] { on_arrival(src_idx); });
    }
}

void Simulation::create_packet(const std::string& ru, TrafficClass cls, std::int64_t bytes) {
    auto it = m_class_slice.find({ru, cls});
    if (it == m_class_slice.end()) {
        throw ConfigError("no slice carries " + std::string(to_string(cls)) + " for " + ru);
    }
    int s = it->second;
    SliceRt& sl = m_slices[s];

    AppPacket p;
    p.id = ++m_next_packet_id;
    p.ru_id = ru;
    p.cls = cls;
    p.size_bytes = bytes;
    p.prbs = prbs_needed(bytes, m_sc.radio);
    p.t_created = m_sched.now();
    RadioAdmission adm = m_radio.admit(ru, cls, bytes, p.t_created);
    p.t_radio_tx_start = adm.tx_start;
    p.t_at_onu = adm.t_at_onu;
    ++m_created;

    auto [bit, fresh] = m_open.try_emplace({s, ru, adm.slot_index}, m_bursts.size());
    if (fresh) {
        Burst b;
        b.slice_idx = s;
        b.ru = ru;
        b.slot_index = adm.slot_index;
        b.cls = cls;
        b.arrival = adm.t_at_onu;
        m_bursts.push_back(std::move(b));
        std::size_t bidx = bit->second;
        m_sched.schedule(adm.t_at_onu, EventClass::LinkArrival,
                         [this, bidx] { on_burst_ready(bidx); });
    }
    Burst& b = m_bursts[bit->second];
    b.user_bytes += bytes;
    // A CGS RU streams its whole reserved region every slot; dynamically
    // granted traffic only carries the PRBs it actually filled.
    b.fronthaul_total = cls == TrafficClass::Urllc
                            ? sl.full_cgs_bytes
                            : fronthaul_bytes(prbs_needed(b.user_bytes, m_sc.radio),
                                              m_sc.radio.symbols_per_slot, m_sc.radio);
    b.packets.push_back(std::move(p));

    // The DU knows the size and timing of every dynamically granted burst
    // ahead of time; that knowledge is what a CTI report carries.
    if (cls == TrafficClass::Normal) {
        tick_t fidx = b.arrival.ps / sl.mac.frame_period.ps;
        sl.cti[fidx][ru] = CtiReport{ru, b.slot_index, b.fronthaul_total, b.arrival};
    }
}

void Simulation::on_burst_ready(std::size_t burst_idx) {
    Burst& b = m_bursts[burst_idx];
    SliceRt& sl = m_slices[b.slice_idx];
    m_open.erase({b.slice_idx, b.ru, b.slot_index});
    bool covered = b.cls == TrafficClass::Urllc ? sl.policy == DbaPolicy::CoDbaCgs
                                                : sl.policy != DbaPolicy::Sr;
    QueueItem item;
    item.item_id = burst_idx;
    item.cls = b.cls;
    item.total_bytes = b.fronthaul_total;
    item.remaining_bytes = b.fronthaul_total;
    item.enqueue_time = b.arrival;
    item.cti_covered = covered;
    item.burst_ref = burst_idx;
    sl.queues.at(b.ru).enqueue(item);
}

std::vector<CtiReport> Simulation::take_cti(SliceRt& sl, tick_t frame_index) {
    std::vector<CtiReport> out;
    auto it = sl.cti.find(frame_index);
    if (it != sl.cti.end()) {
        for (auto& [onu, rep] : it->second) out.push_back(rep);
        sl.cti.erase(it);
    }
    return out;
}

std::vector<CgsAdvertisement> Simulation::build_ads(SliceRt& sl, OccupancyReports& reports) {
    std::vector<CgsAdvertisement> ads;
    if (sl.cfg->traffic_class != TrafficClass::Urllc) return ads;
    SimTime period = m_sc.radio.slot_duration;
    SimTime phase = m_sc.radio.slot_duration + m_sc.radio.ru_proc;
    for (const auto& [onu, q] : sl.queues) {
        (void)q;
        std::int64_t bytes = sl.full_cgs_bytes;
        if (m_rc.use_estimator) {
            auto rep = reports.find(onu);
            double known = rep == reports.end() ? 0.0 : static_cast<double>(rep->second);
            double est = std::max(sl.ewma[onu] * 1.25, known);
            bytes = std::clamp<std::int64_t>(static_cast<std::int64_t>(est) + 1,
                                             sl.mac.poll_bytes, sl.full_cgs_bytes);
            // The standing grant absorbs the reported backlog.
            if (rep != reports.end()) reports.erase(rep);
        }
        ads.push_back({onu, bytes, period, phase});
    }
    return ads;
}

void Simulation::dba_pass(int slice_idx, tick_t frame_index) {
    SliceRt& sl = m_slices[slice_idx];
    SimTime pass_time = m_sched.now();

    DbaContext ctx;
    ctx.params = sl.mac;
    ctx.frame_index = frame_index;
    ctx.frame_start = SimTime(frame_index * sl.mac.frame_period.ps);
    ctx.min_start = std::max(ctx.frame_start, sl.floor_after);
    ctx.onus = sl.cfg->members;
    ctx.carry = std::move(sl.spill);
    sl.spill.clear();

    OccupancyReports reports;
    for (auto& [onu, q] : sl.queues) {
        std::int64_t r = q.report_and_mark(pass_time - sl.prop.at(onu));
        if (r > 0) reports[onu] = r;
    }

    DbaResult res;
    switch (sl.policy) {
        case DbaPolicy::Sr:
            res = sr_dba(reports, ctx);
            break;
        case DbaPolicy::CoDba:
            res = co_dba(take_cti(sl, frame_index), reports, ctx);
            break;
        case DbaPolicy::CoDbaCgs: {
            auto ads = build_ads(sl, reports);
            res = enhanced_co_dba(take_cti(sl, frame_index), ads, reports, ctx);
            break;
        }
    }

    sl.spill = std::move(res.spill);
    m_spilled += static_cast<std::int64_t>(sl.spill.size());
    if (res.map.capacity_exceeded) ++m_capacity_frames;

    // Every pass is audited: grants stay inside the frame, never start
    // before the floor, and keep one guard time between bursts.
    std::vector<const Grant*> by_start;
    by_start.reserve(res.map.grants.size());
    for (const Grant& g : res.map.grants) by_start.push_back(&g);
    std::sort(by_start.begin(), by_start.end(),
              [](const Grant* a, const Grant* b) { return a->start < b->start; });
    SimTime frame_end = ctx.frame_start + sl.mac.frame_period;
    SimTime clear = ctx.min_start;
    for (const Grant* g : by_start) {
        if (g->start < clear || g->start + g->duration > frame_end) ++m_grant_violations;
        clear = g->start + g->duration + sl.mac.guard_time;
    }

    for (const Grant& g : res.map.grants) {
        sl.floor_after = std::max(sl.floor_after, g.start + g.duration + sl.mac.guard_time);
        m_sched.schedule(g.start, EventClass::Mac, [this, slice_idx, g] { exec_grant(slice_idx, g); });
    }

    m_sched.schedule(pass_time + sl.mac.frame_period, EventClass::Housekeeping,
                     [this, slice_idx, frame_index] { dba_pass(slice_idx, frame_index + 1); });
}

void Simulation::exec_grant(int slice_idx, const Grant& g) {
    SliceRt& sl = m_slices[slice_idx];
    auto it = sl.queues.find(g.onu_id);
    if (it == sl.queues.end()) return;      // polls to the pseudo-ONU land on silence
    OnuQueue& q = it->second;

    std::int64_t before = q.total_transmitted();
    auto completions = q.transmit(g, sl.mac);
    q.after_grant(g);

    if (m_rc.use_estimator && sl.policy == DbaPolicy::CoDbaCgs &&
        g.kind == GrantKind::Standing) {
        double sent = static_cast<double>(q.total_transmitted() - before);
        double& e = sl.ewma[g.onu_id];
        e = 0.2 * sent + 0.8 * e;
    }

    for (const auto& c : completions) {
        SimTime at_olt = c.finish + sl.prop.at(g.onu_id);
        m_sched.schedule(at_olt, EventClass::LinkArrival,
                         [this, slice_idx, bref = c.burst_ref, gs = g.start, fin = c.finish] {
                             deliver(slice_idx, bref, gs, fin);
                         });
    }
}

void Simulation::deliver(int slice_idx, std::size_t burst_idx, SimTime grant_start,
                         SimTime finish) {
    Burst& b = m_bursts[burst_idx];
    SliceRt& sl = m_slices[slice_idx];
    SimTime at_du = m_sched.now();
    SimTime ready = at_du + du_cu_processing_delay(m_sc.radio);

    SimTime app = ready;
    std::optional<SimTime> dl_dep;
    if (sl.dl.has_value()) {
        // Deliveries arrive in event order, so ready instants are
        // non-decreasing as the forwarder requires.
        ForwardResult f = sl.dl->forward(ready, b.user_bytes);
        app = f.t_at_app;
        dl_dep = f.departure;
        m_max_dl_wait = std::max(m_max_dl_wait, f.departure - ready);
    }

    for (AppPacket& p : b.packets) {
        p.t_at_du = at_du;
        p.t_at_app = app;
        if (!(p.t_created <= *p.t_radio_tx_start && *p.t_radio_tx_start <= *p.t_at_onu &&
              *p.t_at_onu <= grant_start && grant_start < finish && finish <= at_du &&
              at_du <= ready && ready <= app)) {
            ++m_order_violations;
        }
        m_metrics.record(p);
        ++m_delivered;
        if (m_rc.trace) {
            m_traces.push_back({p.id, b.ru, b.cls, p.size_bytes, p.t_created,
                                *p.t_radio_tx_start, *p.t_at_onu, grant_start, finish, at_du,
                                ready, app, dl_dep});
        }
    }
    b.packets.clear();
    b.packets.shrink_to_fit();
}

RunResult Simulation::run() {
    for (std::size_t s = 0; s < m_slices.size(); ++s) {
        // The pass for frame `lead` happens at t = 0; earlier frames carry
        // no grants, and no burst can arrive that early.
        m_sched.schedule(SimTime::zero(), EventClass::Housekeeping,
                         [this, s] { dba_pass(static_cast<int>(s), m_slices[s].lead); });
    }

    m_sched.run_until(m_sc.duration);
    int chunks = 0;
    while (m_delivered < m_created && ++chunks <= 600) {
        m_sched.run_until(m_sched.now() + SimTime::ms(10));
    }

    RunResult r;
    r.load = m_rc.load;
    r.seed = m_rc.seed;
    r.slot_us = m_sc.radio.slot_duration.ps / TICKS_PER_US;
    r.created = m_created;
    r.delivered = m_delivered;
    r.capacity_exceeded_frames = m_capacity_frames;
    r.spilled_requests = m_spilled;

    if (m_created != m_delivered) {
        r.audit_notes.push_back("undelivered packets: created " + std::to_string(m_created) +
                                ", delivered " + std::to_string(m_delivered));
    }
    if (!m_open.empty()) {
        r.audit_notes.push_back(std::to_string(m_open.size()) + " bursts never left the radio");
    }
    if (m_order_violations > 0) {
        r.audit_notes.push_back(std::to_string(m_order_violations) +
                                " packets with non-monotonic timestamps");
    }
    if (m_grant_violations > 0) {
        r.audit_notes.push_back(std::to_string(m_grant_violations) +
                                " grants outside frame bounds or overlapping");
    }
    for (const SliceRt& sl : m_slices) {
        for (const auto& [onu, q] : sl.queues) {
            if (!q.empty()) {
                r.audit_notes.push_back("queue " + sl.cfg->id + "/" + onu + " not drained");
            }
            if (q.total_enqueued() != q.total_transmitted()) {
                r.audit_notes.push_back("queue " + sl.cfg->id + "/" + onu + " byte mismatch");
            }
            r.max_covered_urllc_sojourn =
                std::max(r.max_covered_urllc_sojourn, q.max_covered_urllc_sojourn());
        }
    }
    r.max_downlink_wait = m_max_dl_wait;
    r.audit_clean = r.audit_notes.empty();
    r.metrics = std::move(m_metrics);
    r.traces = std::move(m_traces);
    return r;
}

}  // namespace

RunResult run_simulation(const Scenario& sc, const RunConfig& rc) {
    Simulation sim(sc, rc);
    return sim.run();
}

}  // namespace meshpon
