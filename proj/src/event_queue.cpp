#include "dagsim/event_queue.hpp"

#include <string>

#include "dagsim/errors.hpp"

namespace dagsim {

const Event& EventQueue::schedule(double time, EventKind kind, std::uint32_t node, std::uint64_t payload,
                                  std::uint16_t group)
{
    if (time < now_) {
        throw ContractViolation("event scheduled in the past: t=" + std::to_string(time) +
                                " < now=" + std::to_string(now_));
    }
    heap_.push_back(Event{time, next_sequence_++, payload, node, group, kind});
    std::push_heap(heap_.begin(), heap_.end(), Later{});
    return heap_.front();
}

Event EventQueue::pop()
{
    if (heap_.empty()) {
        throw ContractViolation("pop from an empty event queue");
    }
    std::pop_heap(heap_.begin(), heap_.end(), Later{});
    Event e = heap_.back();
    heap_.pop_back();
    now_ = e.time;
    return e;
}

} // namespace dagsim
