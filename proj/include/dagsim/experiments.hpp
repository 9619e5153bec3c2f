#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dagsim/config.hpp"
#include "dagsim/simulation.hpp"

namespace dagsim {

enum class StrategyMode : std::uint8_t { AllHonest, AllMalicious };

std::string_view to_string(StrategyMode mode);
StrategyMode parse_strategy_mode(std::string_view text);

struct SweepOptions {
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::optional<std::uint64_t> blocks;  // overrides total_blocks
    std::size_t workers = 1;
};

/// One configuration of a sweep, run once per seed.
struct SweepPoint {
    std::string setting;
    SimConfig config;
    std::optional<StrategyMode> mode;
};

enum class RowKind : std::uint8_t { Run, Mean, Stddev };

struct ResultRow {
    std::string experiment;
    std::string setting;
    RowKind kind = RowKind::Run;
    std::optional<std::uint64_t> seed;
    std::optional<StrategyMode> mode;
    std::string strategies;
    std::string powers;
    std::vector<std::optional<double>> values;  // aligned with numeric_columns()

    std::optional<double> get(std::string_view column) const;
};

/// Per-seed rows followed by mean and stddev rows, grouped by setting in
/// sweep order, seeds ascending within a setting.
struct ResultTable {
    std::string experiment;
    std::vector<ResultRow> rows;

    std::vector<const ResultRow*> of_kind(RowKind kind) const;
    const ResultRow* find(std::string_view setting, RowKind kind) const;
};

std::span<const std::string_view> numeric_columns();

/// Header plus one line per row. Floats use 6 significant digits; counts
/// are written as integers in per-seed rows; NA marks absent values.
void write_csv(std::ostream& out, const ResultTable& table, bool header = true);
void write_csv_header(std::ostream& out);

ResultTable run_sweep(std::string experiment, const std::vector<SweepPoint>& points, const SweepOptions& options);

std::vector<std::size_t> default_malicious_counts(std::size_t miner_count);
std::vector<double> default_alphas();
std::vector<double> default_lambdas();

/// `base` as given, once per seed.
ResultTable run_single(const SimConfig& base, const SweepOptions& options);

/// Equal-power miners; the first m are rational. Profit columns.
ResultTable run_experiment_1(const SimConfig& base, const std::vector<std::size_t>& malicious_counts,
                             const SweepOptions& options);

/// Two miners: rational with power alpha, honest with 1 - alpha. alpha in (0, 0.49].
ResultTable run_experiment_1b(const SimConfig& base, const std::vector<double>& alphas, const SweepOptions& options);

/// Same sweep as experiment 1, read for collision and throughput.
ResultTable run_experiment_2(const SimConfig& base, const std::vector<std::size_t>& malicious_counts,
                             const SweepOptions& options);

/// Block creation time sweep (each in [10, 600]) with every miner honest or every miner rational.
ResultTable run_experiment_3(const SimConfig& base, const std::vector<double>& lambdas,
                             const std::vector<StrategyMode>& modes, const SweepOptions& options);

} // namespace dagsim
