#include "dagsim/topology.hpp"

#include <algorithm>
#include <string>

#include "dagsim/errors.hpp"

namespace dagsim {

Topology::Topology(std::size_t node_count, TopologyKind kind, double hop_delay)
    : node_count_(node_count), kind_(kind), hop_delay_(hop_delay), fanout_(node_count)
{
    if (hop_delay < 0.0) {
        throw ContractViolation("negative hop delay");
    }
    for (NodeId origin = 0; origin < node_count_; ++origin) {
        auto& peers = fanout_[origin];
        for (NodeId target = 0; target < node_count_; ++target) {
            if (target != origin) {
                peers.push_back(Peer{target, propagation_delay(origin, target)});
            }
        }
        std::stable_sort(peers.begin(), peers.end(), [](const Peer& a, const Peer& b) { return a.delay < b.delay; });
        auto& starts = group_starts_.emplace_back();
        for (std::size_t i = 0; i < peers.size(); ++i) {
            if (i == 0 || peers[i].delay != peers[i - 1].delay) {
                starts.push_back(i);
            }
        }
        starts.push_back(peers.size());
    }
}

void Topology::check(NodeId id) const
{
    if (id >= node_count_) {
        throw ContractViolation("node id " + std::to_string(id) + " out of range (" + std::to_string(node_count_) +
                                " nodes)");
    }
}

std::size_t Topology::distance(NodeId a, NodeId b) const
{
    check(a);
    check(b);
    if (a == b) {
        return 0;
    }
    if (kind_ == TopologyKind::Complete) {
        return 1;
    }
    const std::size_t d = a > b ? a - b : b - a;
    return std::min(d, node_count_ - d);
}

double Topology::propagation_delay(NodeId from, NodeId to) const
{
    return static_cast<double>(distance(from, to)) * hop_delay_;
}

std::vector<Topology::Delivery> Topology::broadcast(NodeId origin, double now) const
{
    std::vector<Delivery> out;
    const auto fan = peers(origin);
    out.reserve(fan.size());
    for (const Peer& p : fan) {
        out.push_back(Delivery{p.target, now + p.delay});
    }
    return out;
}

std::span<const Topology::Peer> Topology::peers(NodeId origin) const
{
    check(origin);
    return fanout_[origin];
}

std::size_t Topology::group_count(NodeId origin) const
{
    check(origin);
    return group_starts_[origin].size() - 1;
}

std::span<const Topology::Peer> Topology::group(NodeId origin, std::size_t index) const
{
    check(origin);
    const auto& starts = group_starts_[origin];
    if (index + 1 >= starts.size()) {
        throw ContractViolation("fan-out group out of range");
    }
    return std::span<const Peer>(fanout_[origin]).subspan(starts[index], starts[index + 1] - starts[index]);
}

} // namespace dagsim
