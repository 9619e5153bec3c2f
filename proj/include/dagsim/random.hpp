#pragma once

#include <optional>
#include <random>

namespace dagsim {

/// One stream per run, consumed in event order.
using Rng = std::mt19937_64;

/// Exponential sample with the given mean; strictly positive.
double sample_exponential(double mean, Rng& rng);

/// Time until a miner holding `power` of the hash rate finds its next block,
/// given a network-wide mean interval `lambda`. Independent per-miner clocks
/// superpose to an aggregate rate of 1/lambda. A zero-power miner never mines.
std::optional<double> sample_block_interval(double power, double lambda, Rng& rng);

} // namespace dagsim
