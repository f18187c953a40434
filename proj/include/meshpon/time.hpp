// Simulation time base. All internal timestamps are integer picoseconds so
// that frame, slot and serialization arithmetic stays exact; seconds appear
// only at configuration and reporting edges.
#pragma once

#include <cstdint>
#include <cmath>
#include <string>

namespace meshpon {

using tick_t = std::int64_t;

// 1 second = 1e12 ticks.
constexpr tick_t TICKS_PER_SEC = 1'000'000'000'000LL;
constexpr tick_t TICKS_PER_MS  = 1'000'000'000LL;
constexpr tick_t TICKS_PER_US  = 1'000'000LL;
constexpr tick_t TICKS_PER_NS  = 1'000LL;

struct SimTime {
    tick_t ps = 0;

    constexpr SimTime() = default;
    explicit constexpr SimTime(tick_t v) : ps(v) {}

    static constexpr SimTime zero() { return SimTime(0); }
    static constexpr SimTime ns(tick_t v) { return SimTime(v * TICKS_PER_NS); }
    static constexpr SimTime us(tick_t v) { return SimTime(v * TICKS_PER_US); }
    static constexpr SimTime ms(tick_t v) { return SimTime(v * TICKS_PER_MS); }
    static SimTime sec(double v) { return SimTime(static_cast<tick_t>(std::llround(v * static_cast<double>(TICKS_PER_SEC)))); }

    double to_sec() const { return static_cast<double>(ps) / static_cast<double>(TICKS_PER_SEC); }
    double to_us() const { return static_cast<double>(ps) / static_cast<double>(TICKS_PER_US); }

    constexpr bool operator==(const SimTime&) const = default;
    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime operator+(SimTime o) const { return SimTime(ps + o.ps); }
    constexpr SimTime operator-(SimTime o) const { return SimTime(ps - o.ps); }
    constexpr SimTime& operator+=(SimTime o) { ps += o.ps; return *this; }
    constexpr SimTime& operator-=(SimTime o) { ps -= o.ps; return *this; }
    constexpr SimTime operator*(tick_t k) const { return SimTime(ps * k); }
};

// Smallest grid point `phase + k*period` that is >= t (k integer, period > 0).
inline SimTime next_boundary(SimTime t, SimTime period, SimTime phase = SimTime::zero()) {
    tick_t rel = t.ps - phase.ps;
    tick_t k = rel / period.ps;
    if (k * period.ps < rel) ++k;      // round up; exact hits stay put
    if (rel < 0 && k * period.ps > rel) { /* integer division already rounded toward zero */ }
    return SimTime(phase.ps + k * period.ps);
}

// Largest grid point <= t.
inline SimTime prev_boundary(SimTime t, SimTime period, SimTime phase = SimTime::zero()) {
    tick_t rel = t.ps - phase.ps;
    tick_t k = rel / period.ps;
    if (k * period.ps > rel) --k;      // negative rel rounds toward zero, fix up
    return SimTime(phase.ps + k * period.ps);
}

// Zero-based index of the period containing t (boundaries belong to the
// period they start).
inline tick_t grid_index(SimTime t, SimTime period, SimTime phase = SimTime::zero()) {
    tick_t rel = t.ps - phase.ps;
    tick_t k = rel / period.ps;
    if (k * period.ps > rel) --k;
    return k;
}

std::string format_us(SimTime t);

} // namespace meshpon
