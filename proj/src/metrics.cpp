#include "dagsim/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "dagsim/errors.hpp"

namespace dagsim {

InclusionCounts count_inclusions(const BlockDag& dag)
{
    InclusionCounts c;
    c.blocks = dag.size() - 1;
    std::vector<TxId> all;
    for (const Block& b : dag.blocks()) {
        all.insert(all.end(), b.tx_ids.begin(), b.tx_ids.end());
    }
    c.total_included = all.size();
    std::sort(all.begin(), all.end());
    c.distinct = static_cast<std::uint64_t>(std::unique(all.begin(), all.end()) - all.begin());
    c.duplicates = c.total_included - c.distinct;
    return c;
}

double collision_rate(const BlockDag& dag, std::size_t capacity_per_block)
{
    const InclusionCounts c = count_inclusions(dag);
    if (c.blocks == 0 || capacity_per_block == 0) {
        throw MetricError("collision rate undefined without mined blocks");
    }
    return static_cast<double>(c.duplicates) / (static_cast<double>(c.blocks) * static_cast<double>(capacity_per_block));
}

double throughput(const BlockDag& dag)
{
    const InclusionCounts c = count_inclusions(dag);
    if (c.total_included == 0) {
        throw MetricError("throughput undefined without included transactions");
    }
    return static_cast<double>(c.distinct) / static_cast<double>(c.total_included);
}

std::vector<MinerProfit> profit_per_miner(std::span<const double> rewards, std::span<const double> powers)
{
    if (rewards.size() != powers.size()) {
        throw ContractViolation("rewards and powers differ in length");
    }
    const double total = std::accumulate(rewards.begin(), rewards.end(), 0.0);
    if (!(total > 0.0)) {
        throw MetricError("relative profit undefined for zero total reward");
    }
    std::vector<MinerProfit> rows;
    rows.reserve(rewards.size());
    for (std::size_t i = 0; i < rewards.size(); ++i) {
        const double relative = rewards[i] / total;
        rows.push_back(MinerProfit{static_cast<MinerId>(i), rewards[i], relative,
                                   powers[i] > 0.0 ? relative / powers[i] : 0.0, powers[i] * total});
    }
    return rows;
}

namespace {

// Ancestor set of one block: every id below `floor`, plus the set bits of
// `bits` (bit i stands for id floor + i). Compacted so the window stays short.
struct PastCone {
    BlockId floor = 0;
    std::vector<std::uint64_t> bits;

    bool has(BlockId id) const
    {
        if (id < floor) {
            return true;
        }
        const std::size_t i = id - floor;
        return i / 64 < bits.size() && ((bits[i / 64] >> (i % 64)) & 1U) != 0;
    }
};

void set_bit(std::vector<std::uint64_t>& bits, std::size_t i)
{
    bits[i / 64] |= std::uint64_t{1} << (i % 64);
}

bool test_bit(const std::vector<std::uint64_t>& bits, std::size_t i)
{
    return ((bits[i / 64] >> (i % 64)) & 1U) != 0;
}

PastCone build_cone(const Block& block, const std::vector<PastCone>& cones)
{
    PastCone cone;
    for (BlockId p : block.parents) {
        cone.floor = std::max(cone.floor, cones[p].floor);
    }
    const std::size_t width = block.id - cone.floor;
    std::vector<std::uint64_t> bits((width + 63) / 64, 0);
    for (BlockId p : block.parents) {
        if (p >= cone.floor) {
            set_bit(bits, p - cone.floor);
        }
        const PastCone& pc = cones[p];
        for (BlockId id = std::max(pc.floor, cone.floor); id < p; ++id) {
            if (pc.has(id)) {
                set_bit(bits, id - cone.floor);
            }
        }
    }
    std::size_t skip = 0;
    while (skip < width && test_bit(bits, skip)) {
        ++skip;
    }
    cone.floor += static_cast<BlockId>(skip);
    const std::size_t rest = width - skip;
    cone.bits.assign((rest + 63) / 64, 0);
    for (std::size_t i = 0; i < rest; ++i) {
        if (test_bit(bits, skip + i)) {
            set_bit(cone.bits, i);
        }
    }
    return cone;
}

} // namespace

ParallelStats parallel_stats(const BlockDag& dag)
{
    const auto blocks = dag.blocks();
    ParallelStats s;
    s.blocks = blocks.size() - 1;
    s.anticone_size.assign(blocks.size(), 0);
    s.non_first.assign(blocks.size(), 0);

    auto earlier = [&](BlockId a, BlockId b) {
        if (blocks[a].mined_at != blocks[b].mined_at) {
            return blocks[a].mined_at < blocks[b].mined_at;
        }
        return a < b;
    };

    // Id order is topological, so every lower id is either an ancestor or parallel.
    std::vector<PastCone> cones(blocks.size());
    for (BlockId b = 1; b < blocks.size(); ++b) {
        cones[b] = build_cone(blocks[b], cones);
        for (BlockId a = cones[b].floor; a < b; ++a) {
            if (cones[b].has(a)) {
                continue;
            }
            ++s.parallel_pairs;
            ++s.anticone_size[a];
            ++s.anticone_size[b];
            s.non_first[earlier(a, b) ? b : a] = 1;
        }
    }

    for (BlockId b = 1; b < blocks.size(); ++b) {
        if (s.anticone_size[b] > 0) {
            ++s.blocks_with_parallel;
        }
        if (s.non_first[b]) {
            ++s.non_first_blocks;
            s.non_first_tx += blocks[b].tx_ids.size();
        }
    }
    return s;
}

double parallel_block_rate(const ParallelStats& stats)
{
    if (stats.blocks == 0) {
        return 0.0;
    }
    return static_cast<double>(stats.blocks_with_parallel) / static_cast<double>(stats.blocks);
}

double parallel_block_rate(const BlockDag& dag)
{
    return parallel_block_rate(parallel_stats(dag));
}

double worst_case_collision(const ParallelStats& stats, std::size_t capacity_per_block)
{
    if (stats.blocks == 0 || capacity_per_block == 0) {
        return 0.0;
    }
    return static_cast<double>(stats.non_first_tx) /
           (static_cast<double>(stats.blocks) * static_cast<double>(capacity_per_block));
}

} // namespace dagsim
