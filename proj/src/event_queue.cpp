#include "meshpon/event_queue.hpp"

#include <sstream>

namespace meshpon {

EventId Scheduler::schedule(SimTime at, EventClass cls, Action fn) {
    if (at < m_now) {
        std::ostringstream os;
        os << "schedule at " << at.ps << " ps but clock is at " << m_now.ps << " ps";
        throw SchedulingInPast(os.str());
    }
    EventId id = m_next_id++;
    m_heap.push(Entry{at, static_cast<int>(cls), id});
    m_actions.emplace(id, std::move(fn));
    ++m_live;
    return id;
}

void Scheduler::cancel(EventId id) {
    auto it = m_actions.find(id);
    if (it == m_actions.end()) return;
    m_tombstones.insert(id);
    m_actions.erase(it);
    --m_live;
}

void Scheduler::run_until(SimTime until) {
    while (!m_heap.empty()) {
        Entry top = m_heap.top();
        if (m_tombstones.count(top.id)) {
            m_heap.pop();
            m_tombstones.erase(top.id);
            continue;
        }
        if (top.at > until) break;
        m_heap.pop();
        auto it = m_actions.find(top.id);
        // An id in the heap without an action means it was cancelled; the
        // tombstone branch above should have caught it.
        if (it == m_actions.end()) continue;
        Action fn = std::move(it->second);
        m_actions.erase(it);
        --m_live;
        m_now = top.at;
        ++m_fired;
        fn();
    }
    if (m_now < until) m_now = until;
}

std::string format_us(SimTime t) {
    std::ostringstream os;
    os << t.to_us() << " us";
    return os.str();
}

} // namespace meshpon
