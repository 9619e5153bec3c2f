#include "dagsim/dag.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>
#include <unordered_set>

#include "dagsim/errors.hpp"

namespace dagsim {

BlockDag::BlockDag()
{
    blocks_.push_back(Block{kGenesis, kNoMiner, 0.0, {}, {}});
    child_count_.push_back(0);
    tips_.push_back(kGenesis);
}

const Block& BlockDag::append(Block block)
{
    if (block.id != blocks_.size()) {
        throw ContractViolation("block id " + std::to_string(block.id) + " is not the next id " +
                                std::to_string(blocks_.size()));
    }
    if (block.parents.empty()) {
        throw ContractViolation("non-genesis block " + std::to_string(block.id) + " has no parents");
    }
    for (std::size_t i = 0; i < block.parents.size(); ++i) {
        const BlockId p = block.parents[i];
        if (!contains(p)) {
            throw ContractViolation("block " + std::to_string(block.id) + " references missing parent " +
                                    std::to_string(p));
        }
        if (!(blocks_[p].mined_at < block.mined_at)) {
            throw ContractViolation("parent " + std::to_string(p) + " is not mined before block " +
                                    std::to_string(block.id));
        }
        if (std::find(block.parents.begin(), block.parents.begin() + static_cast<std::ptrdiff_t>(i), p) !=
            block.parents.begin() + static_cast<std::ptrdiff_t>(i)) {
            throw ContractViolation("block " + std::to_string(block.id) + " lists parent twice");
        }
    }
    {
        std::vector<TxId> sorted = block.tx_ids;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw ContractViolation("block " + std::to_string(block.id) + " repeats a transaction");
        }
    }

    for (BlockId p : block.parents) {
        if (child_count_[p]++ == 0) {
            tips_.erase(std::find(tips_.begin(), tips_.end(), p));
        }
    }
    tips_.push_back(block.id);
    child_count_.push_back(0);

    for (TxId tx : block.tx_ids) {
        if (tx >= first_inclusion_.size()) {
            first_inclusion_.resize(std::max<std::size_t>(tx + 1, first_inclusion_.size() * 2), kNone);
        }
        if (first_inclusion_[tx] == kNone) {
            first_inclusion_[tx] = block.id;
        } else {
            repeat_inclusions_.emplace(tx, block.id);
        }
    }

    blocks_.push_back(std::move(block));
    return blocks_.back();
}

const Block& BlockDag::block(BlockId id) const
{
    if (!contains(id)) {
        throw ContractViolation("unknown block " + std::to_string(id));
    }
    return blocks_[id];
}

bool BlockDag::is_ancestor(BlockId ancestor, BlockId descendant) const
{
    block(ancestor);
    block(descendant);
    if (ancestor >= descendant) {
        return false;
    }
    std::vector<char> seen(descendant + 1 - ancestor, 0);
    std::vector<BlockId> stack{descendant};
    while (!stack.empty()) {
        const BlockId b = stack.back();
        stack.pop_back();
        for (BlockId p : blocks_[b].parents) {
            if (p == ancestor) {
                return true;
            }
            if (p > ancestor && !seen[p - ancestor]) {
                seen[p - ancestor] = 1;
                stack.push_back(p);
            }
        }
    }
    return false;
}

bool BlockDag::is_parallel(BlockId a, BlockId b) const
{
    if (a == b) {
        block(a);
        return false;
    }
    return !is_ancestor(std::min(a, b), std::max(a, b));
}

std::vector<BlockId> BlockDag::blocks_containing(TxId tx) const
{
    std::vector<BlockId> out;
    any_block_containing(tx, [&](BlockId b) {
        out.push_back(b);
        return false;
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> settle_rewards(const BlockDag& dag, std::span<const double> fee_by_tx, std::size_t miner_count,
                                   RewardConfig config)
{
    const auto blocks = dag.blocks();
    std::vector<BlockId> order(blocks.size());
    std::iota(order.begin(), order.end(), BlockId{0});
    std::sort(order.begin(), order.end(), [&](BlockId a, BlockId b) {
        if (blocks[a].mined_at != blocks[b].mined_at) {
            return blocks[a].mined_at < blocks[b].mined_at;
        }
        return a < b;
    });

    std::vector<double> rewards(miner_count, 0.0);
    std::unordered_set<TxId> seen;
    for (BlockId id : order) {
        const Block& b = blocks[id];
        for (TxId tx : b.tx_ids) {
            if (tx >= fee_by_tx.size() || std::isnan(fee_by_tx[tx])) {
                throw ContractViolation("no fee recorded for transaction " + std::to_string(tx));
            }
            if (!seen.insert(tx).second) {
                continue;
            }
            if (b.miner >= miner_count) {
                throw ContractViolation("block " + std::to_string(id) + " has miner id out of range");
            }
            rewards[b.miner] += fee_by_tx[tx] * config.discount;
        }
    }
    return rewards;
}

void write_dag_dump(std::ostream& out, const BlockDag& dag)
{
    out << "id,miner,mined_at,parents,tx_count\n";
    char time_buf[64];
    for (const Block& b : dag.blocks()) {
        std::snprintf(time_buf, sizeof time_buf, "%.6f", b.mined_at);
        out << b.id << ',';
        if (b.miner == kNoMiner) {
            out << "NA";
        } else {
            out << b.miner;
        }
        out << ',' << time_buf << ',';
        for (std::size_t i = 0; i < b.parents.size(); ++i) {
            out << (i ? ";" : "") << b.parents[i];
        }
        out << ',' << b.tx_ids.size() << '\n';
    }
}

} // namespace dagsim
