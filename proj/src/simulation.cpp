#include "dagsim/simulation.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "dagsim/event_queue.hpp"
#include "dagsim/metrics.hpp"
#include "dagsim/miner.hpp"
#include "dagsim/random.hpp"
#include "dagsim/topology.hpp"
#include "dagsim/workload.hpp"

namespace dagsim {

bool RunReport::same_outcome(const RunReport& o) const
{
    return miner_profit == o.miner_profit && miner_blocks == o.miner_blocks && total_blocks == o.total_blocks &&
           total_tx_included == o.total_tx_included && distinct_tx_included == o.distinct_tx_included &&
           duplicate_inclusions == o.duplicate_inclusions && total_capacity == o.total_capacity &&
           parallel_block_pairs == o.parallel_block_pairs && blocks_with_parallel == o.blocks_with_parallel &&
           tx_generated == o.tx_generated && total_reward == o.total_reward && collision_rate == o.collision_rate &&
           throughput == o.throughput && parallel_block_rate == o.parallel_block_rate &&
           worst_case_collision == o.worst_case_collision && mining_started_at == o.mining_started_at &&
           last_block_at == o.last_block_at;
}

namespace {

class Simulation {
public:
    explicit Simulation(const SimConfig& config)
        : config_(config),
          rng_(config.seed),
          topology_(config.miner_count(), config.topology, config.propagation_delay),
          generator_(WorkloadConfig{config.effective_tx_rate(), config.fee_mean(), config.miner_count()}),
          pool_full_(config.miner_count(), 0)
    {
        miners_.reserve(config.miner_count());
        for (MinerId m = 0; m < config.miner_count(); ++m) {
            miners_.emplace_back(m, config.miner_powers[m], config.miner_strategies[m], config.mempool_capacity,
                                 config.fee_mean());
        }
    }

    RunResult execute()
    {
        const auto started = std::chrono::steady_clock::now();
        if (!config_.warmup) {
            start_mining(0.0);
        }
        queue_.schedule(0.0, EventKind::TxGenerated);

        while (!queue_.empty()) {
            const Event e = queue_.pop();
            switch (e.kind) {
            case EventKind::BlockMined:
                on_block_mined(e.node, e.time);
                break;
            case EventKind::DeliverBlock:
                miners_[e.node].receive_block(static_cast<BlockId>(e.payload), dag_);
                break;
            case EventKind::DeliverTx:
                for (const Topology::Peer& peer : topology_.group(e.node, e.group)) {
                    on_deliver_tx(peer.target, e.payload, e.time);
                }
                break;
            case EventKind::TxGenerated:
                on_tx_generated(e.time);
                break;
            }
        }

        RunResult result{finish(), std::move(dag_)};
        result.report.wall_clock_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return result;
    }

private:
    void start_mining(double now)
    {
        mining_ = true;
        mining_started_at_ = now;
        for (MinerId m = 0; m < miners_.size(); ++m) {
            schedule_mining(m, now);
        }
    }

    void schedule_mining(MinerId m, double now)
    {
        const auto interval = sample_block_interval(miners_[m].power(), config_.block_creation_time, rng_);
        if (!interval) {
            return;
        }
        double at = now + *interval;
        if (!(at > now)) {
            at = std::nextafter(now, std::numeric_limits<double>::infinity());
        }
        queue_.schedule(at, EventKind::BlockMined, m);
    }

    void on_block_mined(MinerId m, double now)
    {
        if (stopped_) {
            return;
        }
        const Block& block = dag_.append(miners_[m].mine(static_cast<BlockId>(dag_.size()), now,
                                                         config_.block_capacity, rng_));
        for (const Topology::Peer& peer : topology_.peers(m)) {
            queue_.schedule(now + peer.delay, EventKind::DeliverBlock, peer.target, block.id);
        }
        if (++mined_ >= config_.total_blocks) {
            stopped_ = true;
            return;
        }
        schedule_mining(m, now);
    }

    void on_tx_generated(double now)
    {
        if (stopped_) {
            return;
        }
        const GeneratedTx g = generator_.next(rng_, now);
        txs_.push_back(g.tx);
        deliver_tx(g.origin, g.tx, now);
        // One event per group of equally distant peers.
        for (std::size_t i = 0; i < topology_.group_count(g.origin); ++i) {
            const double delay = topology_.group(g.origin, i).front().delay;
            queue_.schedule(now + delay, EventKind::DeliverTx, g.origin, g.tx.id, static_cast<std::uint16_t>(i));
        }
        queue_.schedule(g.next_arrival, EventKind::TxGenerated);
    }

    void on_deliver_tx(NodeId target, TxId tx, double now)
    {
        if (stopped_) {
            return;
        }
        deliver_tx(target, txs_[tx], now);
    }

    void deliver_tx(NodeId target, const Transaction& tx, double now)
    {
        MinerState& miner = miners_[target];
        miner.receive_tx(tx, dag_);
        if (!mining_ && !pool_full_[target] && miner.mempool().full()) {
            pool_full_[target] = 1;
            if (++full_pools_ == miners_.size()) {
                start_mining(now);
            }
        }
    }

    RunReport finish() const
    {
        RunReport r;
        const std::size_t n = miners_.size();
        std::vector<double> fee_by_tx(txs_.size());
        for (const Transaction& tx : txs_) {
            fee_by_tx[tx.id] = tx.fee;
        }
        r.miner_profit = settle_rewards(dag_, fee_by_tx, n, RewardConfig{config_.discount});
        r.miner_blocks.assign(n, 0);
        for (const Block& b : dag_.blocks()) {
            if (b.miner != kNoMiner) {
                ++r.miner_blocks[b.miner];
            }
        }
        for (double p : r.miner_profit) {
            r.total_reward += p;
        }

        const InclusionCounts counts = count_inclusions(dag_);
        const ParallelStats stats = parallel_stats(dag_);
        r.total_blocks = counts.blocks;
        r.total_tx_included = counts.total_included;
        r.distinct_tx_included = counts.distinct;
        r.duplicate_inclusions = counts.duplicates;
        r.total_capacity = counts.blocks * config_.block_capacity;
        r.parallel_block_pairs = stats.parallel_pairs;
        r.blocks_with_parallel = stats.blocks_with_parallel;
        r.tx_generated = txs_.size();
        r.collision_rate = static_cast<double>(counts.duplicates) / static_cast<double>(r.total_capacity);
        r.throughput = counts.total_included == 0
                           ? std::numeric_limits<double>::quiet_NaN()
                           : static_cast<double>(counts.distinct) / static_cast<double>(counts.total_included);
        r.parallel_block_rate = parallel_block_rate(stats);
        r.worst_case_collision = worst_case_collision(stats, config_.block_capacity);
        r.mining_started_at = mining_started_at_;
        r.last_block_at = dag_.blocks().back().mined_at;
        return r;
    }

    const SimConfig& config_;
    Rng rng_;
    EventQueue queue_;
    Topology topology_;
    BlockDag dag_;
    std::vector<MinerState> miners_;
    TxGenerator generator_;
    std::vector<Transaction> txs_;
    std::vector<char> pool_full_;
    std::size_t full_pools_ = 0;
    std::uint64_t mined_ = 0;
    bool mining_ = false;
    bool stopped_ = false;
    double mining_started_at_ = 0.0;
};

} // namespace

RunResult simulate(const SimConfig& config)
{
    validate(config);
    return Simulation(config).execute();
}

RunReport run(const SimConfig& config)
{
    return simulate(config).report;
}

} // namespace dagsim
