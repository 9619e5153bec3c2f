#include "dagsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <ostream>
#include <thread>

#include "dagsim/errors.hpp"

namespace dagsim {

namespace {

struct ColumnSpec {
    std::string_view name;
    bool echo;     // copied, not aggregated, into mean/stddev rows
    bool integer;  // printed as an integer in per-seed rows
};

constexpr ColumnSpec kColumns[] = {
    {"block_creation_time", true, false},
    {"propagation_delay", true, false},
    {"total_blocks", true, true},
    {"miners", true, true},
    {"block_capacity", true, true},
    {"malicious_count", true, true},
    {"alpha", true, false},
    {"honest_profit_avg", false, false},
    {"malicious_profit_avg", false, false},
    {"profit_ratio", false, false},
    {"baseline_profit", false, false},
    {"honest_relative_avg", false, false},
    {"malicious_relative_avg", false, false},
    {"honest_fairness", false, false},
    {"malicious_fairness", false, false},
    {"total_reward", false, false},
    {"collision_rate", false, false},
    {"throughput", false, false},
    {"parallel_block_rate", false, false},
    {"worst_case_collision", false, false},
    {"total_tx_included", false, true},
    {"distinct_tx_included", false, true},
    {"duplicate_inclusions", false, true},
    {"total_capacity", false, true},
    {"parallel_block_pairs", false, true},
    {"blocks_with_parallel", false, true},
};

constexpr std::size_t kColumnCount = std::size(kColumns);

const std::vector<std::string_view>& column_names()
{
    static const std::vector<std::string_view> names = [] {
        std::vector<std::string_view> out;
        for (const auto& c : kColumns) {
            out.push_back(c.name);
        }
        return out;
    }();
    return names;
}

std::optional<std::size_t> column_index(std::string_view name)
{
    for (std::size_t i = 0; i < kColumnCount; ++i) {
        if (kColumns[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::string format_g6(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string join_strategies(const SimConfig& c)
{
    std::string out;
    for (std::size_t i = 0; i < c.miner_strategies.size(); ++i) {
        out += (i ? ";" : "");
        out += to_string(c.miner_strategies[i]);
    }
    return out;
}

std::string join_powers(const SimConfig& c)
{
    std::string out;
    for (std::size_t i = 0; i < c.miner_powers.size(); ++i) {
        out += (i ? ";" : "");
        out += format_g6(c.miner_powers[i]);
    }
    return out;
}

std::optional<double> mean_of(const std::vector<double>& xs)
{
    if (xs.empty()) {
        return std::nullopt;
    }
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

ResultRow make_run_row(const std::string& experiment, const SweepPoint& point, const SimConfig& config,
                       const RunReport& report)
{
    ResultRow row;
    row.experiment = experiment;
    row.setting = point.setting;
    row.kind = RowKind::Run;
    row.seed = config.seed;
    row.mode = point.mode;
    row.strategies = join_strategies(config);
    row.powers = join_powers(config);
    row.values.assign(kColumnCount, std::nullopt);

    auto set = [&](std::string_view name, std::optional<double> v) {
        if (v && std::isnan(*v)) {
            v.reset();
        }
        row.values[*column_index(name)] = v;
    };

    set("block_creation_time", config.block_creation_time);
    set("propagation_delay", config.propagation_delay);
    set("total_blocks", static_cast<double>(report.total_blocks));
    set("miners", static_cast<double>(config.miner_count()));
    set("block_capacity", static_cast<double>(config.block_capacity));
    set("malicious_count", static_cast<double>(config.rational_count()));
    set("alpha", config.adversarial_power());

    std::vector<double> honest_abs, malicious_abs, honest_rel, malicious_rel, honest_fair, malicious_fair, honest_pow;
    const double total = report.total_reward;
    for (std::size_t m = 0; m < config.miner_count(); ++m) {
        const double abs = report.miner_profit[m];
        const bool rational = config.miner_strategies[m] == Strategy::Rational;
        (rational ? malicious_abs : honest_abs).push_back(abs);
        if (total > 0.0) {
            const double rel = abs / total;
            (rational ? malicious_rel : honest_rel).push_back(rel);
            (rational ? malicious_fair : honest_fair).push_back(rel / config.miner_powers[m]);
        }
        if (!rational) {
            honest_pow.push_back(config.miner_powers[m]);
        }
    }
    const auto honest_avg = mean_of(honest_abs);
    const auto malicious_avg = mean_of(malicious_abs);
    set("honest_profit_avg", honest_avg);
    set("malicious_profit_avg", malicious_avg);
    if (honest_avg && malicious_avg && *honest_avg > 0.0) {
        set("profit_ratio", *malicious_avg / *honest_avg);
    }
    const auto baseline_power = honest_pow.empty() ? mean_of(config.miner_powers) : mean_of(honest_pow);
    set("baseline_profit", total * *baseline_power);
    set("honest_relative_avg", mean_of(honest_rel));
    set("malicious_relative_avg", mean_of(malicious_rel));
    set("honest_fairness", mean_of(honest_fair));
    set("malicious_fairness", mean_of(malicious_fair));
    set("total_reward", total);
    set("collision_rate", report.collision_rate);
    set("throughput", report.throughput);
    set("parallel_block_rate", report.parallel_block_rate);
    set("worst_case_collision", report.worst_case_collision);
    set("total_tx_included", static_cast<double>(report.total_tx_included));
    set("distinct_tx_included", static_cast<double>(report.distinct_tx_included));
    set("duplicate_inclusions", static_cast<double>(report.duplicate_inclusions));
    set("total_capacity", static_cast<double>(report.total_capacity));
    set("parallel_block_pairs", static_cast<double>(report.parallel_block_pairs));
    set("blocks_with_parallel", static_cast<double>(report.blocks_with_parallel));
    return row;
}

std::pair<ResultRow, ResultRow> aggregate(const std::vector<ResultRow>& runs)
{
    ResultRow mean = runs.front();
    ResultRow stddev = runs.front();
    mean.kind = RowKind::Mean;
    stddev.kind = RowKind::Stddev;
    mean.seed.reset();
    stddev.seed.reset();
    for (std::size_t c = 0; c < kColumnCount; ++c) {
        if (kColumns[c].echo) {
            continue;
        }
        std::vector<double> xs;
        for (const auto& r : runs) {
            if (r.values[c]) {
                xs.push_back(*r.values[c]);
            }
        }
        mean.values[c] = mean_of(xs);
        stddev.values[c].reset();
        if (xs.size() >= 2) {
            double ss = 0.0;
            for (double x : xs) {
                ss += (x - *mean.values[c]) * (x - *mean.values[c]);
            }
            stddev.values[c] = std::sqrt(ss / static_cast<double>(xs.size() - 1));
        }
    }
    return {std::move(mean), std::move(stddev)};
}

std::string_view to_string(RowKind k)
{
    switch (k) {
    case RowKind::Run:
        return "run";
    case RowKind::Mean:
        return "mean";
    case RowKind::Stddev:
        return "stddev";
    }
    return "run";
}

void apply_options(SimConfig& c, const SweepOptions& options)
{
    if (options.blocks) {
        c.total_blocks = *options.blocks;
    }
}

void check_seeds(const SweepOptions& options)
{
    if (options.seeds.empty()) {
        throw ConfigError("seeds", "at least one seed is required");
    }
}

} // namespace

std::string_view to_string(StrategyMode mode)
{
    return mode == StrategyMode::AllHonest ? "all-honest" : "all-malicious";
}

StrategyMode parse_strategy_mode(std::string_view text)
{
    if (text == "all-honest") {
        return StrategyMode::AllHonest;
    }
    if (text == "all-malicious") {
        return StrategyMode::AllMalicious;
    }
    throw ConfigError("mode", "expected all-honest or all-malicious, got '" + std::string(text) + "'");
}

std::optional<double> ResultRow::get(std::string_view column) const
{
    const auto i = column_index(column);
    if (!i) {
        throw ContractViolation("unknown column " + std::string(column));
    }
    return values[*i];
}

std::vector<const ResultRow*> ResultTable::of_kind(RowKind kind) const
{
    std::vector<const ResultRow*> out;
    for (const auto& r : rows) {
        if (r.kind == kind) {
            out.push_back(&r);
        }
    }
    return out;
}

const ResultRow* ResultTable::find(std::string_view setting, RowKind kind) const
{
    for (const auto& r : rows) {
        if (r.setting == setting && r.kind == kind) {
            return &r;
        }
    }
    return nullptr;
}

std::span<const std::string_view> numeric_columns()
{
    return column_names();
}

void write_csv_header(std::ostream& out)
{
    out << "experiment,setting,row,seed,mode,strategies,powers";
    for (const auto& c : kColumns) {
        out << ',' << c.name;
    }
    out << '\n';
}

void write_csv(std::ostream& out, const ResultTable& table, bool header)
{
    if (header) {
        write_csv_header(out);
    }
    char buf[64];
    for (const auto& r : table.rows) {
        out << r.experiment << ',' << r.setting << ',' << to_string(r.kind) << ',';
        if (r.seed) {
            out << *r.seed;
        } else {
            out << "NA";
        }
        out << ',' << (r.mode ? to_string(*r.mode) : std::string_view("NA")) << ',' << r.strategies << ','
            << r.powers;
        for (std::size_t c = 0; c < kColumnCount; ++c) {
            out << ',';
            if (!r.values[c]) {
                out << "NA";
            } else if (kColumns[c].integer && r.kind == RowKind::Run) {
                std::snprintf(buf, sizeof buf, "%.0f", *r.values[c]);
                out << buf;
            } else {
                out << format_g6(*r.values[c]);
            }
        }
        out << '\n';
    }
}

ResultTable run_sweep(std::string experiment, const std::vector<SweepPoint>& points, const SweepOptions& options)
{
    check_seeds(options);
    std::vector<std::uint64_t> seeds = options.seeds;
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

    struct Job {
        const SweepPoint* point;
        SimConfig config;
    };
    std::vector<Job> jobs;
    for (const auto& p : points) {
        for (std::uint64_t seed : seeds) {
            Job job{&p, p.config};
            job.config.seed = seed;
            apply_options(job.config, options);
            validate(job.config);
            jobs.push_back(std::move(job));
        }
    }

    std::vector<ResultRow> rows(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                rows[i] = make_run_row(experiment, *jobs[i].point, jobs[i].config, run(jobs[i].config));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(jobs.size(), 1));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    ResultTable table;
    table.experiment = std::move(experiment);
    for (std::size_t p = 0; p < points.size(); ++p) {
        std::vector<ResultRow> group(rows.begin() + static_cast<std::ptrdiff_t>(p * seeds.size()),
                                     rows.begin() + static_cast<std::ptrdiff_t>((p + 1) * seeds.size()));
        auto [mean, stddev] = aggregate(group);
        for (auto& r : group) {
            table.rows.push_back(std::move(r));
        }
        table.rows.push_back(std::move(mean));
        table.rows.push_back(std::move(stddev));
    }
    return table;
}

std::vector<std::size_t> default_malicious_counts(std::size_t miner_count)
{
    std::vector<std::size_t> out(miner_count + 1);
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
}

std::vector<double> default_alphas()
{
    return {0.1, 0.2, 0.3, 0.4, 0.49};
}

std::vector<double> default_lambdas()
{
    return {10, 20, 40, 60, 120, 300, 600};
}

ResultTable run_single(const SimConfig& base, const SweepOptions& options)
{
    return run_sweep("run", {SweepPoint{"base", base, std::nullopt}}, options);
}

namespace {

std::vector<SweepPoint> malicious_sweep(const SimConfig& base, const std::vector<std::size_t>& counts)
{
    const std::size_t n = base.miner_count();
    std::vector<SweepPoint> points;
    for (std::size_t m : counts) {
        if (m > n) {
            throw ConfigError("malicious_count", std::to_string(m) + " exceeds the " + std::to_string(n) + " miners");
        }
        SimConfig c = base;
        c.set_uniform_miners(n);
        std::fill_n(c.miner_strategies.begin(), m, Strategy::Rational);
        points.push_back(SweepPoint{"m=" + std::to_string(m), std::move(c), std::nullopt});
    }
    return points;
}

} // namespace

ResultTable run_experiment_1(const SimConfig& base, const std::vector<std::size_t>& malicious_counts,
                             const SweepOptions& options)
{
    return run_sweep("exp1", malicious_sweep(base, malicious_counts), options);
}

ResultTable run_experiment_2(const SimConfig& base, const std::vector<std::size_t>& malicious_counts,
                             const SweepOptions& options)
{
    return run_sweep("exp2", malicious_sweep(base, malicious_counts), options);
}

ResultTable run_experiment_1b(const SimConfig& base, const std::vector<double>& alphas, const SweepOptions& options)
{
    std::vector<SweepPoint> points;
    for (double alpha : alphas) {
        if (!(alpha > 0.0 && alpha <= 0.49)) {
            throw ConfigError("alpha", format_g6(alpha) + " outside (0, 0.49]");
        }
        SimConfig c = base;
        c.miner_powers = {alpha, 1.0 - alpha};
        c.miner_strategies = {Strategy::Rational, Strategy::Random};
        points.push_back(SweepPoint{"alpha=" + format_g6(alpha), std::move(c), std::nullopt});
    }
    return run_sweep("exp1b", points, options);
}

ResultTable run_experiment_3(const SimConfig& base, const std::vector<double>& lambdas,
                             const std::vector<StrategyMode>& modes, const SweepOptions& options)
{
    std::vector<SweepPoint> points;
    for (StrategyMode mode : modes) {
        for (double lambda : lambdas) {
            if (!(lambda >= 10.0 && lambda <= 600.0)) {
                throw ConfigError("block_creation_time", format_g6(lambda) + " outside [10, 600]");
            }
            SimConfig c = base;
            c.block_creation_time = lambda;
            std::fill(c.miner_strategies.begin(), c.miner_strategies.end(),
                      mode == StrategyMode::AllHonest ? Strategy::Random : Strategy::Rational);
            points.push_back(
                SweepPoint{std::string(to_string(mode)) + "/lambda=" + format_g6(lambda), std::move(c), mode});
        }
    }
    return run_sweep("exp3", points, options);
}

} // namespace dagsim
