// Radio-side model: slot grid, CGS and dynamic-grant admission, and the
// split-7.2 fronthaul payload arithmetic.
#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>

#include "meshpon/errors.hpp"
#include "meshpon/packet.hpp"
#include "meshpon/time.hpp"

namespace meshpon {

struct RadioConfig {
    double bandwidth_mhz = 100.0;
    int n_prb = 273;
    SimTime slot_duration = SimTime::us(500);
    int symbols_per_slot = 14;
    int n_layers = 4;
    int iq_bitwidth = 9;             // bits per I or Q component on the fronthaul
    double cgs_fraction = 0.10;
    std::int64_t header_bytes = 50;  // per-burst fronthaul framing overhead
    int user_bits_per_re = 4;        // delivered payload bits per resource element
    SimTime ru_proc = SimTime::zero();
};

// PRBs reserved semi-statically for grant-free uplink.
int cgs_prbs(const RadioConfig& cfg);

// Frequency-domain IQ volume for a PRB set over `symbols` symbols, plus the
// per-burst header. Rounded up to whole bytes.
std::int64_t fronthaul_bytes(int prbs, int symbols, const RadioConfig& cfg);

// Application payload capacity of one PRB over a full slot.
std::int64_t user_bytes_per_prb(const RadioConfig& cfg);

// Whole PRBs a standalone payload of `size_bytes` would occupy.
int prbs_needed(std::int64_t size_bytes, const RadioConfig& cfg);

// The DU/CU pipeline is budgeted at exactly one slot time.
SimTime du_cu_processing_delay(const RadioConfig& cfg);

SimTime slot_start(tick_t slot_index, const RadioConfig& cfg);
tick_t slot_index_at(SimTime t, const RadioConfig& cfg);

struct RadioAdmission {
    tick_t slot_index = 0;
    SimTime tx_start;      // slot boundary where the over-the-air transfer begins
    SimTime t_at_onu;      // tx_start + slot_duration + ru_proc
};

// Per-RU uplink admission. URLLC rides the CGS share and may start at the
// next slot boundary; NORMAL waits out the BSR + grant loop (4 slots). Slot
// capacity is tracked in payload bytes per class so small packets share
// PRBs; when a slot fills, packets spill FIFO into the next one.
class RadioScheduler {
public:
    explicit RadioScheduler(const RadioConfig& cfg) : m_cfg(cfg) {}

    RadioAdmission admit(const std::string& ru_id, TrafficClass cls,
                         std::int64_t size_bytes, SimTime t_created);

    // Byte budget of one slot for a class (CGS share for URLLC, the
    // remainder for NORMAL).
    std::int64_t slot_budget_bytes(TrafficClass cls) const;

    const RadioConfig& config() const { return m_cfg; }

private:
    struct Cursor {
        tick_t slot = -1;
        std::int64_t used_bytes = 0;
    };

    RadioConfig m_cfg;
    std::unordered_map<std::string, Cursor> m_cursors;   // key: ru_id + class
};

} // namespace meshpon
