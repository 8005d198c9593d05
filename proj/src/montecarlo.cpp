#include "laststop/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace laststop {

namespace {

constexpr long long kChunkTrials = 1 << 16;

// Top 53 bits of the generator output mapped to [0, 1).
double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::mt19937_64 chunk_rng(std::uint64_t seed, long long chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk),
                      static_cast<std::uint32_t>(chunk >> 32)};
    return std::mt19937_64(seq);
}

void sample_into(const ProblemSpec& spec, std::mt19937_64& rng, std::vector<int>& out) {
    const int n = spec.n();
    out.resize(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k) {
        const double u = unit_uniform(rng);
        const double a = spec.plus_prob(k);
        const double b = spec.minus_prob(k);
        out[static_cast<size_t>(k - 1)] = u < a ? 1 : (u < a + b ? -1 : 0);
    }
}

// Stop stage and win check on the raw buffer; same semantics as
// apply_policy + win on a Trajectory, without the per-trial allocation.
bool trial_wins(const StoppingRegion& region, const std::vector<int>& traj) {
    const int n = static_cast<int>(traj.size());
    int stop = n;
    for (int k = 1; k < n; ++k) {
        const int v = traj[static_cast<size_t>(k - 1)];
        if ((v == 1 && region.stops_on_plus(k)) || (v == -1 && region.stops_on_minus(k))) {
            stop = k;
            break;
        }
    }
    const int v = traj[static_cast<size_t>(stop - 1)];
    if (v == 0) return false;
    for (int i = stop + 1; i <= n; ++i)
        if (traj[static_cast<size_t>(i - 1)] == v) return false;
    return true;
}

SimulationReport make_report(long long wins, long long trials, std::uint64_t seed) {
    SimulationReport report;
    report.wins = wins;
    report.trials = trials;
    report.seed = seed;
    report.estimate = static_cast<double>(wins) / static_cast<double>(trials);
    report.std_error =
        std::sqrt(report.estimate * (1.0 - report.estimate) / static_cast<double>(trials));
    return report;
}

} // namespace

Trajectory sample_trajectory(const ProblemSpec& spec, std::mt19937_64& rng) {
    std::vector<int> buf;
    sample_into(spec, rng, buf);
    return Trajectory(std::move(buf));
}

SimulationReport estimate(const ProblemSpec& spec, const StoppingRegion& region,
                          long long trials, std::uint64_t seed, int threads) {
    if (trials < 1) throw SpecError("trials must be >= 1");
    if (region.n() != spec.n()) throw SpecError("region and spec horizons differ");
    const long long chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<long long> wins_by_chunk(static_cast<size_t>(chunks), 0);

    auto run_chunk = [&](long long c) {
        std::mt19937_64 rng = chunk_rng(seed, c);
        const long long begin = c * kChunkTrials;
        const long long count = std::min(kChunkTrials, trials - begin);
        std::vector<int> traj;
        long long wins = 0;
        for (long long t = 0; t < count; ++t) {
            sample_into(spec, rng, traj);
            if (trial_wins(region, traj)) ++wins;
        }
        wins_by_chunk[static_cast<size_t>(c)] = wins;
    };

    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(chunks)));
    if (workers == 1) {
        for (long long c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::atomic<long long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int i = 0; i < workers; ++i)
            pool.emplace_back([&] {
                for (long long c = next.fetch_add(1); c < chunks; c = next.fetch_add(1))
                    run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }

    long long wins = 0;
    for (long long c = 0; c < chunks; ++c) wins += wins_by_chunk[static_cast<size_t>(c)];
    return make_report(wins, trials, seed);
}

std::vector<SimulationReport> estimate_coupled(const ProblemSpec& spec,
                                               std::span<const StoppingRegion> regions,
                                               long long trials, std::uint64_t seed) {
    if (trials < 1) throw SpecError("trials must be >= 1");
    for (const StoppingRegion& r : regions)
        if (r.n() != spec.n()) throw SpecError("region and spec horizons differ");
    std::vector<long long> wins(regions.size(), 0);
    const long long chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<int> traj;
    for (long long c = 0; c < chunks; ++c) {
        std::mt19937_64 rng = chunk_rng(seed, c);
        const long long begin = c * kChunkTrials;
        const long long count = std::min(kChunkTrials, trials - begin);
        for (long long t = 0; t < count; ++t) {
            sample_into(spec, rng, traj);
            for (size_t i = 0; i < regions.size(); ++i)
                if (trial_wins(regions[i], traj)) ++wins[i];
        }
    }
    std::vector<SimulationReport> reports;
    reports.reserve(regions.size());
    for (size_t i = 0; i < regions.size(); ++i)
        reports.push_back(make_report(wins[i], trials, seed));
    return reports;
}

} // namespace laststop
