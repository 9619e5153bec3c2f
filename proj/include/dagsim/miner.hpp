#pragma once

#include <span>
#include <vector>

#include "dagsim/config.hpp"
#include "dagsim/dag.hpp"
#include "dagsim/mempool.hpp"
#include "dagsim/random.hpp"

namespace dagsim {

/// A miner's local view: its pool, the blocks delivered to it, and the tips
/// of that sub-DAG. Duplicate avoidance is view-local.
class MinerState {
public:
    MinerState(MinerId id, double power, Strategy strategy, std::size_t mempool_capacity, double fee_scale = 150.0);

    MinerId id() const noexcept { return id_; }
    double power() const noexcept { return power_; }
    Strategy strategy() const noexcept { return strategy_; }

    /// Builds block `block_id` on the visible tips with up to `capacity`
    /// transactions chosen by strategy. The chosen transactions leave the
    /// pool and the block joins the local view.
    Block mine(BlockId block_id, double now, std::size_t capacity, Rng& rng);

    /// Delivers a block already in `dag`. A block whose parents are not yet
    /// known is buffered until they arrive. Returns the number of blocks
    /// accepted into the view (0 for an echo or a buffered block).
    std::size_t receive_block(BlockId block_id, const BlockDag& dag);

    /// Inserts per mempool policy unless the transaction is already in a
    /// known block. Returns true when the pool now holds it.
    bool receive_tx(const Transaction& tx, const BlockDag& dag);

    bool knows(BlockId id) const noexcept { return id < known_.size() && known_[id] != 0; }
    std::span<const BlockId> tips() const noexcept { return tips_; }
    std::size_t known_count() const noexcept { return known_count_; }
    std::size_t buffered_count() const noexcept { return buffered_.size(); }

    const Mempool& mempool() const noexcept { return mempool_; }
    Mempool& mempool() noexcept { return mempool_; }

private:
    void accept(const Block& block);
    bool parents_known(const Block& block) const;

    MinerId id_;
    double power_;
    Strategy strategy_;
    Mempool mempool_;
    std::vector<char> known_;
    std::size_t known_count_ = 0;
    std::vector<BlockId> tips_;
    std::vector<BlockId> buffered_;
};

} // namespace dagsim
