#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "laststop/problem.hpp"

namespace laststop {

// Seeded stochastic estimation of a policy's win probability.
//
// Reproducibility contract: the generator is std::mt19937_64 (Mersenne
// Twister 19937, 64-bit, as specified by the C++ standard); uniforms are the
// top 53 bits mapped to [0,1). Trials are processed in fixed-size chunks and
// chunk c is seeded from (seed, c), so results are bit-identical for a given
// seed regardless of worker count.

struct SimulationReport {
    double estimate = 0.0;   // wins / trials
    double std_error = 0.0;  // sqrt(estimate (1-estimate) / trials)
    long long trials = 0;
    std::uint64_t seed = 0;
    long long wins = 0;
};

/// One trajectory drawn stage by stage: +1 with a_k, -1 with b_k, else 0.
Trajectory sample_trajectory(const ProblemSpec& spec, std::mt19937_64& rng);

/// Monte Carlo win-rate of the hitting time of `region`. Deterministic for a
/// fixed seed; `threads` only changes the wall time, never the result.
SimulationReport estimate(const ProblemSpec& spec, const StoppingRegion& region,
                          long long trials, std::uint64_t seed, int threads = 1);

/// Common-random-numbers evaluation: every region is applied to the same
/// trajectory stream. estimate_coupled(spec, {r}, ...) equals
/// estimate(spec, r, ...).
std::vector<SimulationReport> estimate_coupled(const ProblemSpec& spec,
                                               std::span<const StoppingRegion> regions,
                                               long long trials, std::uint64_t seed);

} // namespace laststop
