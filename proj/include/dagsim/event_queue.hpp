#pragma once

#include <cstdint>
#include <algorithm>
#include <vector>

namespace dagsim {

enum class EventKind : std::uint8_t {
    BlockMined,    // node = miner
    DeliverBlock,  // node = target, payload = block id
    DeliverTx,     // node = origin, group = fan-out group, payload = tx id
    TxGenerated,
};

struct Event {
    double time = 0.0;
    std::uint64_t sequence = 0;
    std::uint64_t payload = 0;
    std::uint32_t node = 0;
    std::uint16_t group = 0;
    EventKind kind = EventKind::BlockMined;
};

/// Time-ordered queue; simultaneous events leave in insertion order.
class EventQueue {
public:
    /// Stamps the next sequence number. Throws ContractViolation when `time`
    /// precedes the time of the last dequeued event.
    const Event& schedule(double time, EventKind kind, std::uint32_t node = 0, std::uint64_t payload = 0,
                          std::uint16_t group = 0);

    Event pop();

    bool empty() const noexcept { return heap_.empty(); }
    std::size_t size() const noexcept { return heap_.size(); }
    double now() const noexcept { return now_; }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const noexcept
        {
            if (a.time != b.time) {
                return a.time > b.time;
            }
            return a.sequence > b.sequence;
        }
    };

    std::vector<Event> heap_;
    std::uint64_t next_sequence_ = 0;
    double now_ = 0.0;
};

} // namespace dagsim
