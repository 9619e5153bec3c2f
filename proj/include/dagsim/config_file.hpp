#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dagsim/config.hpp"

namespace dagsim {

class ConfigNotFound : public std::runtime_error {
public:
    explicit ConfigNotFound(const std::filesystem::path& path)
        : std::runtime_error("config file not found: " + path.string())
    {
    }
};

/// Applies one `key = value` assignment. Unknown keys and malformed values
/// throw ConfigError naming the key.
void apply_setting(SimConfig& config, std::string_view key, std::string_view value);

/**
 * Flat key-value format, one `key = value` per line, `#` starts a comment.
 * Keys mirror the simulation parameter table:
 *
 *   block_creation_time, propagation_delay, total_blocks, miners,
 *   mining_powers, mining_strategies, topology, transactions_in_block,
 *   mempool_size, fee_distribution, fee_parameter, fee_parameter_kind,
 *   tx_generation_rate, seed, discount, warmup
 *
 * Starts from the defaults and validates the result.
 */
SimConfig parse_config(std::istream& in);
SimConfig load_config(const std::filesystem::path& path);

/// Canonical text form accepted by parse_config().
std::string format_config(const SimConfig& config);

} // namespace dagsim
