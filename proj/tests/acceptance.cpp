// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dagsim/experiments.hpp"
#include "dagsim/mempool.hpp"
#include "dagsim/metrics.hpp"
#include "dagsim/simulation.hpp"
#include "dagsim/workload.hpp"
#include "support/oracles.hpp"
#include "support/stats.hpp"

using namespace dagsim;

namespace {

constexpr std::uint64_t kProfitBlocks = 10000;  // A1
constexpr std::uint64_t kSweepBlocks = 2000;    // A2-A6
const std::vector<std::uint64_t> kSeeds{1, 2, 3, 4, 5};

struct Verdict {
    std::string id;
    bool pass;
    std::string detail;
};

std::vector<Verdict> verdicts;

void report(std::string id, bool pass, std::string detail)
{
    std::printf("%s %s  %s\n", id.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    verdicts.push_back({std::move(id), pass, std::move(detail)});
}

void note(const std::string& text)
{
    std::printf("   %s\n", text.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double mean_of(const ResultTable& t, const std::string& setting, std::string_view column)
{
    const ResultRow* r = t.find(setting, RowKind::Mean);
    if (r == nullptr || !r->get(column)) {
        return std::nan("");
    }
    return *r->get(column);
}

std::string csv(const ResultTable& t)
{
    std::ostringstream out;
    write_csv(out, t);
    return out.str();
}

void save(const std::filesystem::path& dir, const std::string& name, const ResultTable& t)
{
    if (dir.empty()) {
        return;
    }
    std::filesystem::create_directories(dir);
    std::ofstream(dir / name) << csv(t);
}

SweepOptions options(std::uint64_t blocks, std::size_t workers)
{
    SweepOptions o;
    o.seeds = kSeeds;
    o.blocks = blocks;
    o.workers = workers;
    return o;
}

std::string m_setting(std::size_t m)
{
    return "m=" + std::to_string(m);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria A1-A9"};
    std::string out_dir;
    std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
    app.add_option("--out", out_dir, "Directory for the sweep CSVs");
    app.add_option("--workers", workers, "Concurrent runs")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    const SimConfig base;  // the simulation parameter table: 10 miners x 10%, lambda 20, tau 5

    // A1: one rational miner, full scale.
    {
        const auto t = run_experiment_1(base, {1}, options(kProfitBlocks, workers));
        save(out_dir, "a1_exp1.csv", t);
        const double mal = mean_of(t, "m=1", "malicious_profit_avg");
        const double hon = mean_of(t, "m=1", "honest_profit_avg");
        const double ratio = mal / hon;
        report("A1", ratio >= 1.5 && ratio <= 3.0,
               "malicious/honest profit " + fmt("%.3f", ratio) + " (want [1.5, 3.0]; " +
                   std::to_string(kProfitBlocks) + " blocks x 5 seeds)");
    }

    // A2 and A4 share one malicious-count sweep 0..10.
    const auto sweep = run_experiment_1(base, default_malicious_counts(10), options(kSweepBlocks, workers));
    save(out_dir, "exp1.csv", sweep);
    {
        bool ok = true;
        std::string series;
        for (std::size_t m = 1; m <= 9; ++m) {
            const double v = mean_of(sweep, m_setting(m), "malicious_profit_avg");
            series += (m > 1 ? " " : "") + fmt("%.4g", v);
            if (m > 1) {
                ok &= v <= mean_of(sweep, m_setting(m - 1), "malicious_profit_avg") * 1.05;
            }
        }
        report("A2", ok, "per-malicious profit non-increasing over m=1..9 within 5% slack");
        note("malicious_profit_avg: " + series);
    }
    // A3: two miners, alpha sweep.
    {
        const auto alphas = default_alphas();
        const auto t = run_experiment_1b(base, alphas, options(kSweepBlocks, workers));
        save(out_dir, "exp1b.csv", t);
        bool increasing = true;
        bool fair = true;
        std::string rel, fr;
        double prev = -1.0;
        for (double a : alphas) {
            const std::string s = "alpha=" + fmt("%g", a);
            const double r = mean_of(t, s, "malicious_relative_avg");
            const double f = mean_of(t, s, "malicious_fairness");
            increasing &= r > prev;
            fair &= f > 1.0;
            prev = r;
            rel += fmt(" %.4f", r);
            fr += fmt(" %.3f", f);
        }
        report("A3", increasing && fair,
               std::string("relative profit strictly increasing ") + (increasing ? "yes" : "NO") +
                   ", fairness > 1 at every alpha " + (fair ? "yes" : "NO"));
        note("relative profit:" + rel);
        note("fairness ratio: " + fr);
    }

    {
        bool collision_up = true;
        bool throughput_down = true;
        std::string cs, ts;
        for (std::size_t m = 0; m <= 10; ++m) {
            const double c = mean_of(sweep, m_setting(m), "collision_rate");
            const double th = mean_of(sweep, m_setting(m), "throughput");
            cs += (m ? " " : "") + fmt("%.4g", c);
            ts += (m ? " " : "") + fmt("%.4g", th);
            if (m > 0) {
                collision_up &= c >= mean_of(sweep, m_setting(m - 1), "collision_rate");
                throughput_down &= th <= mean_of(sweep, m_setting(m - 1), "throughput");
            }
        }
        const double honest = mean_of(sweep, "m=0", "collision_rate");
        bool bounded = true;
        for (const ResultRow* r : sweep.of_kind(RowKind::Run)) {
            bounded &= *r->get("collision_rate") <= *r->get("worst_case_collision");
        }
        report("A4", collision_up && throughput_down && honest < 0.01 && bounded,
               std::string("collision non-decreasing ") + (collision_up ? "yes" : "NO") +
                   ", throughput non-increasing " + (throughput_down ? "yes" : "NO") + ", all-honest collision " +
                   fmt("%.4f%%", 100 * honest) + " (want < 1%), collision <= worst case on every run " +
                   (bounded ? "yes" : "NO"));
        note("collision_rate m=0..10: " + cs);
        note("throughput     m=0..10: " + ts);
    }

    // A5 and A6 share one lambda sweep in both modes.
    {
        const auto lambdas = default_lambdas();
        const auto t = run_experiment_3(base, lambdas, {StrategyMode::AllHonest, StrategyMode::AllMalicious},
                                        options(kSweepBlocks, workers));
        save(out_dir, "exp3.csv", t);
        const auto setting = [](StrategyMode mode, double lambda) {
            return std::string(to_string(mode)) + "/lambda=" + fmt("%g", lambda);
        };

        const double mal10 = mean_of(t, setting(StrategyMode::AllMalicious, 10), "collision_rate");
        const double mal600 = mean_of(t, setting(StrategyMode::AllMalicious, 600), "collision_rate");
        bool honest_low = true;
        std::string hs, ms;
        for (double l : lambdas) {
            const double h = mean_of(t, setting(StrategyMode::AllHonest, l), "collision_rate");
            honest_low &= h < 0.01;
            hs += fmt(" %.4g", h);
            ms += fmt(" %.4g", mean_of(t, setting(StrategyMode::AllMalicious, l), "collision_rate"));
        }
        report("A5", mal10 >= 5.0 * mal600 && honest_low,
               "all-malicious collision(10)/collision(600) = " + fmt("%.2f", mal10 / mal600) +
                   " (want >= 5), all-honest collision < 1% at every lambda " + (honest_low ? "yes" : "NO"));
        note("all-honest collision    lambda=10..600:" + hs);
        note("all-malicious collision lambda=10..600:" + ms);

        bool monotone = true;
        bool in_band = true;
        for (StrategyMode mode : {StrategyMode::AllHonest, StrategyMode::AllMalicious}) {
            std::string series;
            double prev = 2.0;
            for (double l : lambdas) {
                const double r = mean_of(t, setting(mode, l), "parallel_block_rate");
                monotone &= r <= prev;
                prev = r;
                series += fmt(" %.4g", r);
            }
            in_band &= prev >= 0.001 && prev <= 0.03;
            note(std::string(to_string(mode)) + " parallel_block_rate lambda=10..600:" + series);
        }
        const double at600 = mean_of(t, setting(StrategyMode::AllHonest, 600), "parallel_block_rate");
        report("A6", monotone && in_band,
               std::string("parallel block rate non-increasing in lambda ") + (monotone ? "yes" : "NO") +
                   ", at lambda=600 " + fmt("%.3f%%", 100 * at600) + " (want [0.1%, 3%])");
    }

    // A7: statistical model checks.
    {
        SimConfig c = base;
        c.seed = 1;
        const RunReport r = run(c);
        const double gap = (r.last_block_at - r.mining_started_at) / static_cast<double>(r.total_blocks);
        const bool gap_ok = std::abs(gap - c.block_creation_time) <= 0.03 * c.block_creation_time;

        Rng rng(7);
        TxGenerator gen(WorkloadConfig{c.effective_tx_rate(), c.fee_mean(), c.miner_count()});
        double fees = 0.0;
        double now = 0.0;
        for (int i = 0; i < 1'000'000; ++i) {
            const auto g = gen.next(rng, now);
            fees += g.tx.fee;
            now = g.next_arrival;
        }
        const double fee_mean = fees / 1e6;
        const bool fee_ok = std::abs(fee_mean - 150.0) <= 1.5;

        Mempool pool(10000);
        for (TxId i = 0; i < 10000; ++i) {
            pool.insert(Transaction{i, sample_exponential(150.0, rng), 0.0});
        }
        std::vector<double> counts(10000, 0.0);
        for (int rep = 0; rep < 10000; ++rep) {
            for (const auto& t : pool.select_random(100, rng)) {
                counts[t.id] += 1.0;
            }
        }
        const double p = stats::chi_square_uniform_p(counts);
        report("A7", gap_ok && fee_ok && p > 0.01,
               "block interval mean " + fmt("%.3f", gap) + " s over " + std::to_string(r.total_blocks) +
                   " blocks (want 20 +/- 3%), fee mean " + fmt("%.3f", fee_mean) +
                   " over 1e6 (want 150 +/- 1%), selection chi-square p = " + fmt("%.3f", p) + " (want > 0.01)");
    }

    // A8: exact agreement with brute-force enumerators.
    {
        Rng rng(2718);
        std::size_t mismatches = 0;
        const int dags = 5000;
        for (int i = 0; i < dags; ++i) {
            const auto d = oracle::random_dag(rng, 6, 3, 6);
            const BlockDag dag = oracle::build(d);
            const auto counts = oracle::inclusions(d);
            mismatches += collision_rate(dag, d.capacity) != oracle::collision_rate(d);
            if (counts.total > 0) {
                mismatches += throughput(dag) != oracle::throughput(d);
            }
            for (double gamma : {1.0, 0.5}) {
                mismatches += settle_rewards(dag, d.fees, d.miners, RewardConfig{gamma}) != oracle::rewards(d, gamma);
            }
        }
        const int pools = 5000;
        for (int i = 0; i < pools; ++i) {
            const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 12)(rng);
            const std::size_t k = std::uniform_int_distribution<std::size_t>(0, 12)(rng);
            Mempool pool(12);
            std::vector<Transaction> txs;
            for (std::size_t j = 0; j < n; ++j) {
                const Transaction t{static_cast<TxId>(j * 7 + rng() % 7),
                                    static_cast<double>(std::uniform_int_distribution<int>(1, 8)(rng)), 0.0};
                txs.push_back(t);
                pool.insert(t);
            }
            mismatches += pool.select_top_fee(k) != oracle::best_k(txs, k);
        }
        report("A8", mismatches == 0,
               std::to_string(dags) + " DAGs (<= 6 blocks, capacity <= 3) and " + std::to_string(pools) +
                   " pools (<= 12): " + std::to_string(mismatches) + " mismatches");
    }

    // A9: every experiment reproduces byte for byte, serially and in parallel.
    {
        SimConfig small = base;
        small.total_blocks = 300;
        SweepOptions serial;
        serial.seeds = {2, 1};
        SweepOptions parallel = serial;
        parallel.workers = std::max<std::size_t>(workers, 3);
        const std::vector<std::pair<std::string, std::function<ResultTable(const SweepOptions&)>>> experiments{
            {"run", [&](const SweepOptions& o) { return run_single(small, o); }},
            {"exp1", [&](const SweepOptions& o) { return run_experiment_1(small, {0, 1, 10}, o); }},
            {"exp1b", [&](const SweepOptions& o) { return run_experiment_1b(small, {0.1, 0.49}, o); }},
            {"exp2", [&](const SweepOptions& o) { return run_experiment_2(small, {0, 5}, o); }},
            {"exp3",
             [&](const SweepOptions& o) {
                 return run_experiment_3(small, {10, 600}, {StrategyMode::AllHonest, StrategyMode::AllMalicious}, o);
             }},
        };
        bool identical = true;
        std::string which;
        for (const auto& [name, fn] : experiments) {
            const std::string a = csv(fn(serial));
            const std::string b = csv(fn(serial));
            const std::string c = csv(fn(parallel));
            const bool same = a == b && a == c && !a.empty();
            identical &= same;
            which += " " + name + (same ? "=ok" : "=DIFF");
        }
        report("A9", identical, "identical CSV on re-run and with parallel workers:" + which);
    }

    const auto failed = std::count_if(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return !v.pass; });
    std::printf("%zu/%zu criteria passed\n", verdicts.size() - static_cast<std::size_t>(failed), verdicts.size());
    return failed == 0 ? 0 : 1;
}
