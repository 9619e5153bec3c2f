#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dagsim/config.hpp"

namespace dagsim {

using NodeId = MinerId;

/// Static peer graph. Messages travel straight from origin to target and
/// arrive after hop-distance x hop delay.
class Topology {
public:
    struct Peer {
        NodeId target;
        double delay;
    };

    struct Delivery {
        NodeId target;
        double deliver_at;

        bool operator==(const Delivery&) const = default;
    };

    Topology(std::size_t node_count, TopologyKind kind, double hop_delay);

    std::size_t node_count() const noexcept { return node_count_; }
    TopologyKind kind() const noexcept { return kind_; }
    double hop_delay() const noexcept { return hop_delay_; }

    std::size_t distance(NodeId a, NodeId b) const;
    double propagation_delay(NodeId from, NodeId to) const;

    /// One delivery per node other than `origin`, ordered by (deliver_at, target).
    std::vector<Delivery> broadcast(NodeId origin, double now) const;

    /// Precomputed broadcast fan-out for `origin`, same order as broadcast().
    std::span<const Peer> peers(NodeId origin) const;

    /// The fan-out of `origin` split into runs of equal delay, in order.
    std::size_t group_count(NodeId origin) const;
    std::span<const Peer> group(NodeId origin, std::size_t index) const;

private:
    void check(NodeId id) const;

    std::size_t node_count_;
    TopologyKind kind_;
    double hop_delay_;
    std::vector<std::vector<Peer>> fanout_;
    std::vector<std::vector<std::size_t>> group_starts_;  // per origin, plus end sentinel
};

} // namespace dagsim
