// Discrete event scheduler. Events fire in (time, priority, insertion seq)
// order, which makes runs bit-reproducible regardless of heap internals.
#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "meshpon/errors.hpp"
#include "meshpon/time.hpp"

namespace meshpon {

using EventId = std::uint64_t;

// Priority bands for events that share a timestamp. Link arrivals must be
// visible before any MAC or DBA decision taken at the same instant.
enum class EventClass : int {
    LinkArrival = 0,
    Mac         = 1,
    Traffic     = 2,
    Housekeeping = 3,
};

class Scheduler {
public:
    using Action = std::function<void()>;

    // Schedules `fn` at absolute time `at`. Scheduling strictly before the
    // current time is a logic error and throws SchedulingInPast; scheduling
    // at exactly now() is allowed (the event runs within the current sweep).
    EventId schedule(SimTime at, EventClass cls, Action fn);

    // Cancels a pending event. Cancelling an already-fired or unknown id is
    // a no-op; cancellation is lazy (tombstoned, skipped on pop).
    void cancel(EventId id);

    // Runs events until the queue drains or the next event is past `until`.
    // Events at exactly `until` do fire.
    void run_until(SimTime until);

    SimTime now() const { return m_now; }
    std::uint64_t fired_count() const { return m_fired; }
    bool empty() const { return m_live == 0; }

private:
    struct Entry {
        SimTime at;
        int cls;
        EventId id;
        bool operator>(const Entry& o) const {
            if (at != o.at) return at > o.at;
            if (cls != o.cls) return cls > o.cls;
            return id > o.id;
        }
    };

    SimTime m_now = SimTime::zero();
    EventId m_next_id = 1;
    std::uint64_t m_fired = 0;
    std::uint64_t m_live = 0;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> m_heap;
    std::unordered_map<EventId, Action> m_actions;
    std::unordered_set<EventId> m_tombstones;
};

} // namespace meshpon
