#include <doctest.h>

#include <vector>

#include "dagsim/config.hpp"
#include "dagsim/errors.hpp"
#include "dagsim/workload.hpp"
#include "support/stats.hpp"

using namespace dagsim;

TEST_SUITE("workload")
{
    TEST_CASE("fee mean over a million draws")
    {
        Rng rng(31);
        TxGenerator gen(WorkloadConfig{10.0, 150.0, 10});
        double sum = 0.0;
        double now = 0.0;
        bool positive = true;
        for (int i = 0; i < 1'000'000; ++i) {
            const auto g = gen.next(rng, now);
            sum += g.tx.fee;
            positive &= g.tx.fee > 0.0;
            now = g.next_arrival;
        }
        const double mean = sum / 1e6;
        MESSAGE("fee mean " << mean);
        CHECK(mean >= 148.5);
        CHECK(mean <= 151.5);
        CHECK(positive);
    }

    TEST_CASE("inter-arrival mean is the inverse rate")
    {
        Rng rng(32);
        TxGenerator gen(WorkloadConfig{10.0, 150.0, 10});
        double now = 0.0;
        for (int i = 0; i < 1'000'000; ++i) {
            now = gen.next(rng, now).next_arrival;
        }
        CHECK(now / 1e6 == doctest::Approx(0.1).epsilon(0.01));
    }

    TEST_CASE("ids are dense and follow creation time; origins are uniform")
    {
        Rng rng(33);
        TxGenerator gen(WorkloadConfig{5.0, 150.0, 4});
        double now = 0.0;
        double last_created = -1.0;
        std::vector<double> origins(4, 0.0);
        for (TxId i = 0; i < 40'000; ++i) {
            const auto g = gen.next(rng, now);
            CHECK(g.tx.id == i);
            CHECK(g.tx.created_at > last_created);
            CHECK(g.next_arrival > now);
            last_created = g.tx.created_at;
            origins[g.origin] += 1.0;
            now = g.next_arrival;
        }
        CHECK(gen.issued() == 40'000);
        CHECK(stats::chi_square_uniform_p(origins) > 0.01);
    }

    TEST_CASE("invalid workloads are rejected")
    {
        CHECK_THROWS_AS(TxGenerator(WorkloadConfig{0.0, 150.0, 1}), ContractViolation);
        CHECK_THROWS_AS(TxGenerator(WorkloadConfig{1.0, 0.0, 1}), ContractViolation);
        CHECK_THROWS_AS(TxGenerator(WorkloadConfig{1.0, 1.0, 0}), ContractViolation);
    }

    TEST_CASE("automatic rate is twice the consumption rate")
    {
        SimConfig c;
        CHECK(c.effective_tx_rate() == doctest::Approx(2.0 * 100 / 20));
        c.tx_generation_rate = 3.0;
        CHECK(c.effective_tx_rate() == 3.0);
    }
}
