#include "dagsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dagsim {

std::string_view to_string(Strategy s)
{
    return s == Strategy::Random ? "random" : "rational";
}

std::string_view to_string(TopologyKind k)
{
    return k == TopologyKind::Ring ? "ring" : "complete";
}

std::string_view to_string(FeeParameterKind k)
{
    return k == FeeParameterKind::Mean ? "mean" : "rate";
}

Strategy parse_strategy(std::string_view text)
{
    if (text == "random" || text == "honest") {
        return Strategy::Random;
    }
    if (text == "rational" || text == "malicious") {
        return Strategy::Rational;
    }
    throw ConfigError("mining_strategies", "unknown strategy '" + std::string(text) + "'");
}

TopologyKind parse_topology(std::string_view text)
{
    if (text == "ring") {
        return TopologyKind::Ring;
    }
    if (text == "complete") {
        return TopologyKind::Complete;
    }
    throw ConfigError("topology", "unknown topology '" + std::string(text) + "'");
}

FeeParameterKind parse_fee_parameter_kind(std::string_view text)
{
    if (text == "mean") {
        return FeeParameterKind::Mean;
    }
    if (text == "rate") {
        return FeeParameterKind::Rate;
    }
    throw ConfigError("fee_parameter_kind", "expected 'mean' or 'rate', got '" + std::string(text) + "'");
}

double SimConfig::fee_mean() const noexcept
{
    return fee_parameter_kind == FeeParameterKind::Mean ? fee_parameter : 1.0 / fee_parameter;
}

double SimConfig::effective_tx_rate() const noexcept
{
    if (tx_generation_rate > 0.0) {
        return tx_generation_rate;
    }
    return 2.0 * static_cast<double>(block_capacity) / block_creation_time;
}

double SimConfig::adversarial_power() const noexcept
{
    double alpha = 0.0;
    for (std::size_t i = 0; i < miner_powers.size() && i < miner_strategies.size(); ++i) {
        if (miner_strategies[i] == Strategy::Rational) {
            alpha += miner_powers[i];
        }
    }
    return alpha;
}

std::size_t SimConfig::rational_count() const noexcept
{
    return static_cast<std::size_t>(std::count(miner_strategies.begin(), miner_strategies.end(), Strategy::Rational));
}

void SimConfig::set_uniform_miners(std::size_t count)
{
    miner_powers.assign(count, count == 0 ? 0.0 : 1.0 / static_cast<double>(count));
    miner_strategies.assign(count, Strategy::Random);
}

void validate(const SimConfig& c)
{
    if (!(c.block_creation_time > 0.0) || !std::isfinite(c.block_creation_time)) {
        throw ConfigError("block_creation_time", "lambda must be a positive number of seconds");
    }
    if (!(c.propagation_delay >= 0.0) || !std::isfinite(c.propagation_delay)) {
        throw ConfigError("propagation_delay", "tau must be >= 0 seconds");
    }
    if (c.total_blocks == 0) {
        throw ConfigError("total_blocks", "must be >= 1");
    }
    if (c.miner_powers.empty()) {
        throw ConfigError("miners", "at least one miner is required");
    }
    if (c.miner_strategies.size() != c.miner_powers.size()) {
        throw ConfigError("mining_strategies", "expected " + std::to_string(c.miner_powers.size()) +
                                                   " entries, got " + std::to_string(c.miner_strategies.size()));
    }
    for (double p : c.miner_powers) {
        if (!(p > 0.0) || p > 1.0) {
            throw ConfigError("mining_powers", "each power must be in (0, 1]");
        }
    }
    const double sum = std::accumulate(c.miner_powers.begin(), c.miner_powers.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError("mining_powers", "powers must sum to 1 (got " + std::to_string(sum) + ")");
    }
    if (c.block_capacity < 1) {
        throw ConfigError("transactions_in_block", "must be >= 1");
    }
    if (c.mempool_capacity < c.block_capacity) {
        throw ConfigError("mempool_size", "must be >= transactions_in_block");
    }
    if (!(c.fee_parameter > 0.0) || !std::isfinite(c.fee_parameter)) {
        throw ConfigError("fee_parameter", "must be positive");
    }
    if (c.tx_generation_rate < 0.0 || !std::isfinite(c.tx_generation_rate)) {
        throw ConfigError("tx_generation_rate", "must be >= 0 (0 selects the automatic rate)");
    }
    if (c.effective_tx_rate() * c.block_creation_time < static_cast<double>(c.block_capacity)) {
        throw ConfigError("tx_generation_rate", "generation cannot fill one block per block interval");
    }
    if (!(c.discount >= 0.0 && c.discount <= 1.0)) {
        throw ConfigError("discount", "must be in [0, 1]");
    }
}

} // namespace dagsim
