#pragma once

#include <cstddef>

#include "dagsim/random.hpp"
#include "dagsim/topology.hpp"
#include "dagsim/transaction.hpp"

namespace dagsim {

struct WorkloadConfig {
    double tx_rate = 10.0;   // transactions per second
    double fee_mean = 150.0;
    std::size_t node_count = 10;  // origins drawn uniformly
};

struct GeneratedTx {
    Transaction tx;
    NodeId origin;
    double next_arrival;
};

/// Poisson arrivals with exponential fees. Ids are dense from 0 and increase
/// with creation time.
class TxGenerator {
public:
    explicit TxGenerator(WorkloadConfig config);

    /// Draws fee, origin, then the gap to the next arrival, in that order.
    GeneratedTx next(Rng& rng, double now);

    TxId issued() const noexcept { return next_id_; }
    const WorkloadConfig& config() const noexcept { return config_; }

private:
    WorkloadConfig config_;
    TxId next_id_ = 0;
};

} // namespace dagsim
