#pragma once

#include <cstdint>
#include <vector>

#include "dagsim/config.hpp"
#include "dagsim/dag.hpp"

namespace dagsim {

struct RunReport {
    std::vector<double> miner_profit;
    std::vector<std::uint64_t> miner_blocks;
    std::uint64_t total_blocks = 0;
    std::uint64_t total_tx_included = 0;
    std::uint64_t distinct_tx_included = 0;
    std::uint64_t duplicate_inclusions = 0;
    std::uint64_t total_capacity = 0;
    std::uint64_t parallel_block_pairs = 0;
    std::uint64_t blocks_with_parallel = 0;
    std::uint64_t tx_generated = 0;
    double total_reward = 0.0;
    double collision_rate = 0.0;
    double throughput = 0.0;
    double parallel_block_rate = 0.0;
    double worst_case_collision = 0.0;
    double mining_started_at = 0.0;  // end of mempool warm-up
    double last_block_at = 0.0;
    double wall_clock_seconds = 0.0;  // diagnostics only

    /// Everything except wall-clock time.
    bool same_outcome(const RunReport& other) const;
};

struct RunResult {
    RunReport report;
    BlockDag dag;
};

/// Runs until `total_blocks` blocks are mined, drains in-flight block
/// deliveries, then settles rewards and computes metrics. A pure function of
/// the config (seed included). Throws ConfigError before any event runs.
RunResult simulate(const SimConfig& config);

RunReport run(const SimConfig& config);

} // namespace dagsim
