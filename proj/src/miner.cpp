#include "dagsim/miner.hpp"

#include <algorithm>

namespace dagsim {

MinerState::MinerState(MinerId id, double power, Strategy strategy, std::size_t mempool_capacity, double fee_scale)
    : id_(id), power_(power), strategy_(strategy), mempool_(mempool_capacity, fee_scale)
{
    known_.assign(1, 1);
    known_count_ = 1;
    tips_.push_back(kGenesis);
}

Block MinerState::mine(BlockId block_id, double now, std::size_t capacity, Rng& rng)
{
    const std::vector<Transaction> chosen = strategy_ == Strategy::Rational
                                                ? mempool_.select_top_fee(capacity)
                                                : mempool_.select_random(capacity, rng);
    Block block;
    block.id = block_id;
    block.miner = id_;
    block.mined_at = now;
    block.parents = tips_;
    block.tx_ids.reserve(chosen.size());
    for (const Transaction& tx : chosen) {
        block.tx_ids.push_back(tx.id);
    }
    accept(block);
    return block;
}

std::size_t MinerState::receive_block(BlockId block_id, const BlockDag& dag)
{
    if (knows(block_id) || std::find(buffered_.begin(), buffered_.end(), block_id) != buffered_.end()) {
        return 0;
    }
    const Block& block = dag.block(block_id);
    if (!parents_known(block)) {
        buffered_.push_back(block_id);
        return 0;
    }
    accept(block);
    std::size_t accepted = 1;
    for (bool progress = true; progress && !buffered_.empty();) {
        progress = false;
        for (auto it = buffered_.begin(); it != buffered_.end(); ++it) {
            const Block& waiting = dag.block(*it);
            if (parents_known(waiting)) {
                buffered_.erase(it);
                accept(waiting);
                ++accepted;
                progress = true;
                break;
            }
        }
    }
    return accepted;
}

bool MinerState::receive_tx(const Transaction& tx, const BlockDag& dag)
{
    if (dag.any_block_containing(tx.id, [this](BlockId b) { return knows(b); })) {
        return false;
    }
    return mempool_.insert(tx).outcome != InsertOutcome::Rejected;
}

void MinerState::accept(const Block& block)
{
    if (block.id >= known_.size()) {
        known_.resize(std::max<std::size_t>(block.id + 1, known_.size() * 2), 0);
    }
    known_[block.id] = 1;
    ++known_count_;
    for (BlockId p : block.parents) {
        const auto it = std::find(tips_.begin(), tips_.end(), p);
        if (it != tips_.end()) {
            tips_.erase(it);
        }
    }
    tips_.insert(std::upper_bound(tips_.begin(), tips_.end(), block.id), block.id);
    mempool_.remove_all(block.tx_ids);
}

bool MinerState::parents_known(const Block& block) const
{
    return std::all_of(block.parents.begin(), block.parents.end(), [this](BlockId p) { return knows(p); });
}

} // namespace dagsim
