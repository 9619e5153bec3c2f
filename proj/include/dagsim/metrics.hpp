#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dagsim/dag.hpp"

namespace dagsim {

/// Inclusion counters over every non-genesis block.
struct InclusionCounts {
    std::uint64_t blocks = 0;
    std::uint64_t total_included = 0;
    std::uint64_t distinct = 0;
    std::uint64_t duplicates = 0;  // inclusions beyond the first
};

InclusionCounts count_inclusions(const BlockDag& dag);

/// duplicates / (blocks * capacity). Throws MetricError for a DAG with no mined blocks.
double collision_rate(const BlockDag& dag, std::size_t capacity_per_block);

/// distinct / total included. Throws MetricError when nothing was included.
double throughput(const BlockDag& dag);

struct MinerProfit {
    MinerId miner;
    double absolute;
    double relative;  // share of total reward
    double fairness;  // relative / power
    double baseline;  // power share of the total reward
};

/// Throws MetricError when the total reward is zero.
std::vector<MinerProfit> profit_per_miner(std::span<const double> rewards, std::span<const double> powers);

/// Anticone structure of a DAG. Genesis is excluded from the block counts.
struct ParallelStats {
    std::uint64_t blocks = 0;
    std::vector<std::uint32_t> anticone_size;  // indexed by block id
    std::vector<char> non_first;               // parallel to some earlier block, (mined_at, id) order
    std::uint64_t parallel_pairs = 0;
    std::uint64_t blocks_with_parallel = 0;
    std::uint64_t non_first_blocks = 0;
    std::uint64_t non_first_tx = 0;  // transactions carried by non-first parallel blocks
};

ParallelStats parallel_stats(const BlockDag& dag);

/// Fraction of mined blocks with at least one parallel block.
double parallel_block_rate(const ParallelStats& stats);
double parallel_block_rate(const BlockDag& dag);

/// Collision rate if every transaction of every non-first parallel block
/// repeated an earlier inclusion. Upper bound on collision_rate().
double worst_case_collision(const ParallelStats& stats, std::size_t capacity_per_block);

} // namespace dagsim
