// Command-line front end: single runs and the three experiment sweeps.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dagsim/config_file.hpp"
#include "dagsim/experiments.hpp"
#include "dagsim/simulation.hpp"

namespace {

constexpr int kExitInvalidConfig = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitRuntime = 4;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::string seeds;
    std::uint64_t blocks = 0;
    std::size_t workers = 1;
    std::vector<std::string> overrides;
};

void add_common(CLI::App& cmd, CommonArgs& args)
{
    cmd.add_option("--config", args.config_path, "Key-value config file (defaults when omitted)");
    cmd.add_option("--out", args.out_path, "CSV output path (stdout when omitted)");
    cmd.add_option("--seeds", args.seeds, "Comma-separated seed list (default 1,2,3,4,5)");
    cmd.add_option("--blocks", args.blocks, "Override total_blocks");
    cmd.add_option("--workers", args.workers, "Concurrent runs")->check(CLI::PositiveNumber);
    cmd.add_option("--set", args.overrides, "Override a config key: --set key=value (repeatable)");
}

template <class T>
std::vector<T> parse_list(const std::string& text, const std::string& field)
{
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::istringstream is(item);
        T v{};
        if (!(is >> v) || !(is >> std::ws).eof()) {
            throw dagsim::ConfigError(field, "cannot parse list item '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw dagsim::ConfigError(field, "empty list");
    }
    return out;
}

dagsim::SimConfig load_base(const CommonArgs& args)
{
    dagsim::SimConfig config =
        args.config_path.empty() ? dagsim::SimConfig{} : dagsim::load_config(args.config_path);
    for (const auto& kv : args.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw dagsim::ConfigError(kv, "override must look like key=value");
        }
        std::string key = kv.substr(0, eq);
        key.erase(key.find_last_not_of(' ') + 1);
        dagsim::apply_setting(config, key, kv.substr(eq + 1));
    }
    if (args.blocks > 0) {
        config.total_blocks = args.blocks;
    }
    dagsim::validate(config);
    return config;
}

dagsim::SweepOptions sweep_options(const CommonArgs& args, std::vector<std::uint64_t> default_seeds)
{
    dagsim::SweepOptions options;
    options.seeds = args.seeds.empty() ? std::move(default_seeds) : parse_list<std::uint64_t>(args.seeds, "seeds");
    if (args.blocks > 0) {
        options.blocks = args.blocks;
    }
    options.workers = args.workers;
    return options;
}

void emit(const dagsim::ResultTable& table, const std::string& out_path, bool append)
{
    if (out_path.empty()) {
        dagsim::write_csv(std::cout, table);
        return;
    }
    const bool has_content =
        append && std::filesystem::exists(out_path) && std::filesystem::file_size(out_path) > 0;
    std::ofstream out(out_path, append ? std::ios::app : std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + out_path + " for writing");
    }
    dagsim::write_csv(out, table, !has_content);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Block-DAG mining simulator: transaction selection strategy experiments"};
    app.require_subcommand(1);

    CommonArgs run_args, exp1_args, exp1b_args, exp2_args, exp3_args;
    std::string dump_dag;
    std::string malicious1, malicious2, alphas, lambdas;
    std::string mode = "both";

    auto* run_cmd = app.add_subcommand("run", "Single simulation; one CSV row per seed, appended to --out");
    add_common(*run_cmd, run_args);
    run_cmd->add_option("--dump-dag", dump_dag, "Write the final block DAG (one line per block)");

    auto* exp1_cmd = app.add_subcommand("exp1", "Profit vs number of malicious miners");
    add_common(*exp1_cmd, exp1_args);
    exp1_cmd->add_option("--malicious", malicious1, "Malicious counts (default 0..miners)");

    auto* exp1b_cmd = app.add_subcommand("exp1b", "Two miners, adversarial power sweep");
    add_common(*exp1b_cmd, exp1b_args);
    exp1b_cmd->add_option("--alpha", alphas, "Adversarial powers (default 0.1,0.2,0.3,0.4,0.49)");

    auto* exp2_cmd = app.add_subcommand("exp2", "Collision rate and throughput vs number of malicious miners");
    add_common(*exp2_cmd, exp2_args);
    exp2_cmd->add_option("--malicious", malicious2, "Malicious counts (default 0..miners)");

    auto* exp3_cmd = app.add_subcommand("exp3", "Collision rate vs block creation time, all honest / all malicious");
    add_common(*exp3_cmd, exp3_args);
    exp3_cmd->add_option("--lambdas", lambdas, "Block creation times (default 10,20,40,60,120,300,600)");
    exp3_cmd->add_option("--mode", mode, "all-honest, all-malicious or both")
        ->check(CLI::IsMember({"all-honest", "all-malicious", "both"}));

    CLI11_PARSE(app, argc, argv);

    const std::vector<std::uint64_t> default_seeds{1, 2, 3, 4, 5};
    try {
        if (*run_cmd) {
            const auto base = load_base(run_args);
            auto options = sweep_options(run_args, {base.seed});
            if (!dump_dag.empty()) {
                for (std::size_t i = 0; i < options.seeds.size(); ++i) {
                    auto c = base;
                    c.seed = options.seeds[i];
                    const auto result = dagsim::simulate(c);
                    const std::string path =
                        options.seeds.size() == 1 ? dump_dag : dump_dag + ".seed" + std::to_string(c.seed);
                    std::ofstream out(path);
                    dagsim::write_dag_dump(out, result.dag);
                }
            }
            emit(dagsim::run_single(base, options), run_args.out_path, true);
        } else if (*exp1_cmd) {
            const auto base = load_base(exp1_args);
            const auto counts = malicious1.empty() ? dagsim::default_malicious_counts(base.miner_count())
                                                   : parse_list<std::size_t>(malicious1, "malicious_count");
            emit(dagsim::run_experiment_1(base, counts, sweep_options(exp1_args, default_seeds)), exp1_args.out_path,
                 false);
        } else if (*exp1b_cmd) {
            const auto base = load_base(exp1b_args);
            const auto list = alphas.empty() ? dagsim::default_alphas() : parse_list<double>(alphas, "alpha");
            emit(dagsim::run_experiment_1b(base, list, sweep_options(exp1b_args, default_seeds)), exp1b_args.out_path,
                 false);
        } else if (*exp2_cmd) {
            const auto base = load_base(exp2_args);
            const auto counts = malicious2.empty() ? dagsim::default_malicious_counts(base.miner_count())
                                                   : parse_list<std::size_t>(malicious2, "malicious_count");
            emit(dagsim::run_experiment_2(base, counts, sweep_options(exp2_args, default_seeds)), exp2_args.out_path,
                 false);
        } else if (*exp3_cmd) {
            const auto base = load_base(exp3_args);
            const auto list =
                lambdas.empty() ? dagsim::default_lambdas() : parse_list<double>(lambdas, "block_creation_time");
            std::vector<dagsim::StrategyMode> modes;
            if (mode == "both") {
                modes = {dagsim::StrategyMode::AllHonest, dagsim::StrategyMode::AllMalicious};
            } else {
                modes = {dagsim::parse_strategy_mode(mode)};
            }
            emit(dagsim::run_experiment_3(base, list, modes, sweep_options(exp3_args, default_seeds)),
                 exp3_args.out_path, false);
        }
    } catch (const dagsim::ConfigNotFound& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNotFound;
    } catch (const dagsim::ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return 0;
}
