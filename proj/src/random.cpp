#include "dagsim/random.hpp"

namespace dagsim {

double sample_exponential(double mean, Rng& rng)
{
    std::exponential_distribution<double> dist(1.0 / mean);
    double x = dist(rng);
    while (x <= 0.0) {
        x = dist(rng);
    }
    return x;
}

std::optional<double> sample_block_interval(double power, double lambda, Rng& rng)
{
    if (power <= 0.0) {
        return std::nullopt;
    }
    return sample_exponential(lambda / power, rng);
}

} // namespace dagsim
