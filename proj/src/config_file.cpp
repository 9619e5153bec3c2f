#include "dagsim/config_file.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace dagsim {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s)
{
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        out.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        s.remove_prefix(comma + 1);
    }
    return out;
}

double parse_double(std::string_view key, std::string_view text)
{
    // std::from_chars for double is not available in every toolchain we target.
    std::string buf(text);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size()) {
        throw ConfigError(std::string(key), "expected a number, got '" + buf + "'");
    }
    return v;
}

std::uint64_t parse_uint(std::string_view key, std::string_view text)
{
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ConfigError(std::string(key), "expected true or false, got '" + std::string(text) + "'");
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void apply_setting(SimConfig& c, std::string_view key, std::string_view value)
{
    value = trim(value);
    if (key == "block_creation_time") {
        c.block_creation_time = parse_double(key, value);
    } else if (key == "propagation_delay") {
        c.propagation_delay = parse_double(key, value);
    } else if (key == "total_blocks") {
        c.total_blocks = parse_uint(key, value);
    } else if (key == "miners") {
        const auto n = parse_uint(key, value);
        if (n == 0) {
            throw ConfigError("miners", "at least one miner is required");
        }
        if (n != c.miner_count()) {
            c.set_uniform_miners(n);
        }
    } else if (key == "mining_powers") {
        c.miner_powers.clear();
        for (auto item : split_list(value)) {
            c.miner_powers.push_back(parse_double(key, item));
        }
    } else if (key == "mining_strategies") {
        c.miner_strategies.clear();
        for (auto item : split_list(value)) {
            c.miner_strategies.push_back(parse_strategy(item));
        }
    } else if (key == "topology") {
        c.topology = parse_topology(value);
    } else if (key == "transactions_in_block") {
        c.block_capacity = parse_uint(key, value);
    } else if (key == "mempool_size") {
        c.mempool_capacity = parse_uint(key, value);
    } else if (key == "fee_distribution") {
        if (value != "exponential") {
            throw ConfigError("fee_distribution", "only 'exponential' is supported");
        }
    } else if (key == "fee_parameter") {
        c.fee_parameter = parse_double(key, value);
    } else if (key == "fee_parameter_kind") {
        c.fee_parameter_kind = parse_fee_parameter_kind(value);
    } else if (key == "tx_generation_rate") {
        c.tx_generation_rate = value == "auto" ? 0.0 : parse_double(key, value);
    } else if (key == "seed") {
        c.seed = parse_uint(key, value);
    } else if (key == "discount") {
        c.discount = parse_double(key, value);
    } else if (key == "warmup") {
        c.warmup = parse_bool(key, value);
    } else {
        throw ConfigError(std::string(key), "unknown key");
    }
}

SimConfig parse_config(std::istream& in)
{
    SimConfig c;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        }
        apply_setting(c, trim(view.substr(0, eq)), view.substr(eq + 1));
    }
    validate(c);
    return c;
}

SimConfig load_config(const std::filesystem::path& path)
{
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw ConfigNotFound(path);
    }
    std::ifstream in(path);
    if (!in) {
        throw ConfigNotFound(path);
    }
    return parse_config(in);
}

std::string format_config(const SimConfig& c)
{
    std::ostringstream out;
    out << "block_creation_time = " << format_number(c.block_creation_time) << '\n'
        << "propagation_delay = " << format_number(c.propagation_delay) << '\n'
        << "total_blocks = " << c.total_blocks << '\n'
        << "miners = " << c.miner_count() << '\n'
        << "mining_powers = ";
    for (std::size_t i = 0; i < c.miner_powers.size(); ++i) {
        out << (i ? "," : "") << format_number(c.miner_powers[i]);
    }
    out << "\nmining_strategies = ";
    for (std::size_t i = 0; i < c.miner_strategies.size(); ++i) {
        out << (i ? "," : "") << to_string(c.miner_strategies[i]);
    }
    out << "\ntopology = " << to_string(c.topology) << '\n'
        << "transactions_in_block = " << c.block_capacity << '\n'
        << "mempool_size = " << c.mempool_capacity << '\n'
        << "fee_distribution = exponential\n"
        << "fee_parameter = " << format_number(c.fee_parameter) << '\n'
        << "fee_parameter_kind = " << to_string(c.fee_parameter_kind) << '\n'
        << "tx_generation_rate = "
        << (c.tx_generation_rate > 0.0 ? format_number(c.tx_generation_rate) : std::string("auto")) << '\n'
        << "seed = " << c.seed << '\n'
        << "discount = " << format_number(c.discount) << '\n'
        << "warmup = " << (c.warmup ? "true" : "false") << '\n';
    return out.str();
}

} // namespace dagsim
