#include "dagsim/workload.hpp"

#include "dagsim/errors.hpp"

namespace dagsim {

TxGenerator::TxGenerator(WorkloadConfig config) : config_(config)
{
    if (!(config_.tx_rate > 0.0) || !(config_.fee_mean > 0.0) || config_.node_count == 0) {
        throw ContractViolation("workload needs a positive rate, a positive fee mean and at least one node");
    }
}

GeneratedTx TxGenerator::next(Rng& rng, double now)
{
    GeneratedTx out;
    out.tx.id = next_id_++;
    out.tx.created_at = now;
    out.tx.fee = sample_exponential(config_.fee_mean, rng);
    out.origin = static_cast<NodeId>(std::uniform_int_distribution<std::size_t>(0, config_.node_count - 1)(rng));
    out.next_arrival = now + sample_exponential(1.0 / config_.tx_rate, rng);
    return out;
}

} // namespace dagsim
