#include <doctest.h>

#include <random>
#include <vector>

#include "dagsim/errors.hpp"
#include "dagsim/event_queue.hpp"

using namespace dagsim;

TEST_SUITE("event_queue")
{
    TEST_CASE("scheduling before the current time is rejected")
    {
        EventQueue q;
        q.schedule(5.0, EventKind::TxGenerated);
        q.pop();
        CHECK_THROWS_AS(q.schedule(3.0, EventKind::TxGenerated), ContractViolation);
        CHECK_NOTHROW(q.schedule(5.0, EventKind::TxGenerated));
    }

    TEST_CASE("simultaneous events leave in insertion order")
    {
        EventQueue q;
        q.schedule(7.0, EventKind::BlockMined, 0, 1);
        q.schedule(7.0, EventKind::BlockMined, 0, 2);
        CHECK(q.pop().payload == 1);
        CHECK(q.pop().payload == 2);
    }

    TEST_CASE("stable order across distinct times")
    {
        EventQueue q;
        q.schedule(1.0, EventKind::BlockMined, 0, 1);
        q.schedule(2.0, EventKind::BlockMined, 0, 2);
        q.schedule(1.0, EventKind::BlockMined, 0, 3);
        CHECK(q.pop().payload == 1);
        CHECK(q.pop().payload == 3);
        CHECK(q.pop().payload == 2);
        CHECK(q.empty());
    }

    TEST_CASE("pop on empty queue throws")
    {
        EventQueue q;
        CHECK_THROWS_AS(q.pop(), ContractViolation);
    }

    TEST_CASE("property: dequeue order is lexicographic in (time, sequence)")
    {
        std::mt19937_64 rng(7);
        EventQueue q;
        for (int round = 0; round < 50; ++round) {
            const double base = q.now();
            for (int i = 0; i < 40; ++i) {
                q.schedule(base + static_cast<double>(rng() % 6), EventKind::TxGenerated);
            }
            double last_time = q.now();
            std::uint64_t last_seq = 0;
            bool first = true;
            while (q.size() > 10) {
                const Event e = q.pop();
                CHECK(e.time >= last_time);
                if (!first && e.time == last_time) {
                    CHECK(e.sequence > last_seq);
                }
                CHECK(q.now() == e.time);
                last_time = e.time;
                last_seq = e.sequence;
                first = false;
            }
        }
    }
}
