#include "meshpon/radio.hpp"

#include <cmath>
#include <sstream>

namespace meshpon {

int cgs_prbs(const RadioConfig& cfg) {
    int n = static_cast<int>(cfg.cgs_fraction * cfg.n_prb);
    if (n < 1) throw InvalidPrbCount("CGS share yields zero PRBs");
    return n;
}

std::int64_t fronthaul_bytes(int prbs, int symbols, const RadioConfig& cfg) {
    if (prbs < 0 || prbs > cfg.n_prb) {
        std::ostringstream os;
        os << "prb count " << prbs << " outside grid of " << cfg.n_prb;
        throw InvalidPrbCount(os.str());
    }
    // 12 subcarriers per PRB, I and Q per resource element, all layers.
    std::int64_t bits = static_cast<std::int64_t>(prbs) * symbols * 12 * 2 *
                        cfg.iq_bitwidth * cfg.n_layers;
    return (bits + 7) / 8 + cfg.header_bytes;
}

std::int64_t user_bytes_per_prb(const RadioConfig& cfg) {
    std::int64_t bits = 12LL * cfg.symbols_per_slot * cfg.n_layers * cfg.user_bits_per_re;
    return bits / 8;
}

int prbs_needed(std::int64_t size_bytes, const RadioConfig& cfg) {
    std::int64_t per_prb = user_bytes_per_prb(cfg);
    return static_cast<int>((size_bytes + per_prb - 1) / per_prb);
}

SimTime du_cu_processing_delay(const RadioConfig& cfg) { return cfg.slot_duration; }

SimTime slot_start(tick_t slot_index, const RadioConfig& cfg) {
    return SimTime(slot_index * cfg.slot_duration.ps);
}

tick_t slot_index_at(SimTime t, const RadioConfig& cfg) {
    return grid_index(t, cfg.slot_duration);
}

std::int64_t RadioScheduler::slot_budget_bytes(TrafficClass cls) const {
    int prbs = cls == TrafficClass::Urllc ? cgs_prbs(m_cfg) : m_cfg.n_prb - cgs_prbs(m_cfg);
    return prbs * user_bytes_per_prb(m_cfg);
}

RadioAdmission RadioScheduler::admit(const std::string& ru_id, TrafficClass cls,
                                     std::int64_t size_bytes, SimTime t_created) {
    std::int64_t budget = slot_budget_bytes(cls);
    if (size_bytes > budget) {
        std::ostringstream os;
        os << "packet of " << size_bytes << " bytes exceeds per-slot capacity of "
           << budget << " for class " << to_string(cls);
        throw InvalidPrbCount(os.str());
    }

    // Earliest slot the packet may ride: next boundary for grant-free URLLC,
    // BSR at the next boundary plus the 4-slot grant loop for NORMAL.
    SimTime boundary = next_boundary(t_created, m_cfg.slot_duration);
    tick_t first = boundary.ps / m_cfg.slot_duration.ps;
    if (cls == TrafficClass::Normal) first += 4;

    Cursor& cur = m_cursors[ru_id + (cls == TrafficClass::Urllc ? "|u" : "|n")];
    if (first > cur.slot) {
        cur.slot = first;
        cur.used_bytes = 0;
    }
    while (cur.used_bytes + size_bytes > budget) {
        ++cur.slot;
        cur.used_bytes = 0;
    }
    cur.used_bytes += size_bytes;

    RadioAdmission adm;
    adm.slot_index = cur.slot;
    adm.tx_start = slot_start(cur.slot, m_cfg);
    adm.t_at_onu = adm.tx_start + m_cfg.slot_duration + m_cfg.ru_proc;
    return adm;
}

} // namespace meshpon
