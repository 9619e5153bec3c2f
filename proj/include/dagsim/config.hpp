#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dagsim/errors.hpp"

namespace dagsim {

using MinerId = std::uint32_t;

/// Transaction selection strategy. Honest miners select at random; rational
/// (malicious) miners take the highest fees.
enum class Strategy : std::uint8_t { Random, Rational };

enum class TopologyKind : std::uint8_t { Ring, Complete };

/// How `fee_parameter` is read: as the mean of the exponential fee
/// distribution, or as its rate (mean = 1 / rate).
enum class FeeParameterKind : std::uint8_t { Mean, Rate };

std::string_view to_string(Strategy s);
std::string_view to_string(TopologyKind k);
std::string_view to_string(FeeParameterKind k);

Strategy parse_strategy(std::string_view text);
TopologyKind parse_topology(std::string_view text);
FeeParameterKind parse_fee_parameter_kind(std::string_view text);

struct SimConfig {
    double block_creation_time = 20.0;  // seconds, network-wide mean block interval
    double propagation_delay = 5.0;     // seconds per hop
    std::uint64_t total_blocks = 10000;
    std::vector<double> miner_powers = std::vector<double>(10, 0.1);
    std::vector<Strategy> miner_strategies = std::vector<Strategy>(10, Strategy::Random);
    std::size_t block_capacity = 100;
    std::size_t mempool_capacity = 10000;
    double fee_parameter = 150.0;
    FeeParameterKind fee_parameter_kind = FeeParameterKind::Mean;
    double tx_generation_rate = 0.0;  // transactions per second; 0 selects the automatic rate
    TopologyKind topology = TopologyKind::Ring;
    std::uint64_t seed = 42;
    double discount = 1.0;
    bool warmup = true;

    std::size_t miner_count() const noexcept { return miner_powers.size(); }

    double fee_mean() const noexcept;

    /// Explicit rate, or twice the block consumption rate when left at 0.
    double effective_tx_rate() const noexcept;

    /// Total power of rational-strategy miners.
    double adversarial_power() const noexcept;

    std::size_t rational_count() const noexcept;

    /// Replaces miners with `count` equal-power honest miners.
    void set_uniform_miners(std::size_t count);

    bool operator==(const SimConfig&) const = default;
};

/// Throws ConfigError naming the first invalid field.
void validate(const SimConfig& config);

} // namespace dagsim
