#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "dagsim/config.hpp"
#include "dagsim/transaction.hpp"

namespace dagsim {

using BlockId = std::uint32_t;

inline constexpr BlockId kGenesis = 0;
inline constexpr MinerId kNoMiner = std::numeric_limits<MinerId>::max();

struct Block {
    BlockId id = 0;
    MinerId miner = kNoMiner;
    double mined_at = 0.0;
    std::vector<BlockId> parents;  // the miner's visible tips when it mined
    std::vector<TxId> tx_ids;

    bool operator==(const Block&) const = default;
};

/// Discount applied to every first-inclusion fee. Constant for a run.
struct RewardConfig {
    double discount = 1.0;
};

/**
 * Append-only global block DAG. Block ids are dense and assigned in append
 * order, so id order is a topological order. Genesis (id 0, no miner, no
 * transactions) is created by the constructor.
 */
class BlockDag {
public:
    BlockDag();

    /// Requires `block.id == size()`, every parent present and mined strictly
    /// earlier, and no repeated transaction ids. Throws ContractViolation.
    const Block& append(Block block);

    const Block& block(BlockId id) const;
    bool contains(BlockId id) const noexcept { return id < blocks_.size(); }
    std::size_t size() const noexcept { return blocks_.size(); }
    std::span<const Block> blocks() const noexcept { return blocks_; }

    /// Blocks without children.
    std::span<const BlockId> tips() const noexcept { return tips_; }

    bool is_ancestor(BlockId ancestor, BlockId descendant) const;

    /// Neither block reaches the other. Irreflexive.
    bool is_parallel(BlockId a, BlockId b) const;

    /// Every block that includes `tx`, in append order.
    std::vector<BlockId> blocks_containing(TxId tx) const;

    /// Cheap check used on the hot path: calls `visit(block)` for each
    /// block containing `tx` until it returns true.
    template <class Visit>
    bool any_block_containing(TxId tx, Visit&& visit) const
    {
        if (tx >= first_inclusion_.size() || first_inclusion_[tx] == kNone) {
            return false;
        }
        if (visit(first_inclusion_[tx])) {
            return true;
        }
        auto [lo, hi] = repeat_inclusions_.equal_range(tx);
        for (; lo != hi; ++lo) {
            if (visit(lo->second)) {
                return true;
            }
        }
        return false;
    }

private:
    static constexpr BlockId kNone = std::numeric_limits<BlockId>::max();

    std::vector<Block> blocks_;
    std::vector<BlockId> tips_;
    std::vector<std::uint32_t> child_count_;
    std::vector<BlockId> first_inclusion_;  // indexed by tx id
    std::unordered_multimap<TxId, BlockId> repeat_inclusions_;
};

/**
 * First-inclusion payoff: each transaction pays `fee * discount` to the miner
 * of the earliest block containing it, earliest meaning smallest
 * (mined_at, id). Later inclusions earn nothing.
 *
 * `fee_by_tx[id]` is the fee of transaction `id`; a missing entry is a
 * contract violation. Result is indexed by miner id.
 */
std::vector<double> settle_rewards(const BlockDag& dag, std::span<const double> fee_by_tx,
                                   std::size_t miner_count, RewardConfig config = {});

/// One line per block: id,miner,mined_at,parents(';'-joined),tx_count.
void write_dag_dump(std::ostream& out, const BlockDag& dag);

} // namespace dagsim
