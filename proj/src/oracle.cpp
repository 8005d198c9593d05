#include "laststop/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace laststop {

namespace {

// suffix[k] = prod_{j>k} (1 - seq[j]), k = 0..n; one backward pass.
std::vector<double> suffix_survival(const std::vector<double>& seq) {
    const int n = static_cast<int>(seq.size());
    std::vector<double> out(static_cast<size_t>(n) + 1, 1.0);
    for (int k = n - 1; k >= 0; --k)
        out[static_cast<size_t>(k)] =
            out[static_cast<size_t>(k) + 1] * (1.0 - seq[static_cast<size_t>(k)]);
    return out;
}

} // namespace

DPResult solve_backward(const ProblemSpec& spec) {
    const int n = spec.n();
    // no_plus_after[k] = P(no +1 after stage k) = prod_{j>k}(1-a_j)
    const std::vector<double> no_plus_after = suffix_survival(spec.plus_seq());
    const std::vector<double> no_minus_after = suffix_survival(spec.minus_seq());

    DPResult res;
    res.continue_value.assign(static_cast<size_t>(n) + 1, 0.0);
    res.stop_plus.assign(static_cast<size_t>(n) + 1, 0);
    res.stop_minus.assign(static_cast<size_t>(n) + 1, 0);

    // v_j with j observations remaining; the next observation is at stage
    // k = n - j + 1, whose stop values are the suffix products at k.
    for (int j = 1; j <= n; ++j) {
        const int k = n - j + 1;
        const double a = spec.plus_prob(k);
        const double b = spec.minus_prob(k);
        const double stop_p = no_plus_after[static_cast<size_t>(k)];
        const double stop_m = no_minus_after[static_cast<size_t>(k)];
        const double cont = res.continue_value[static_cast<size_t>(j) - 1];
        res.continue_value[static_cast<size_t>(j)] =
            a * std::max(stop_p, cont) + b * std::max(stop_m, cont) + (1.0 - a - b) * cont;
    }
    res.value = res.continue_value[static_cast<size_t>(n)];

    // Ties stop, which makes the thresholds the smallest optimal ones.
    int s = n, s_prime = n;
    for (int k = n; k >= 1; --k) {
        const double cont = res.continue_value[static_cast<size_t>(n - k)];
        const bool sp = no_plus_after[static_cast<size_t>(k)] >= cont;
        const bool sm = no_minus_after[static_cast<size_t>(k)] >= cont;
        res.stop_plus[static_cast<size_t>(k)] = sp ? 1 : 0;
        res.stop_minus[static_cast<size_t>(k)] = sm ? 1 : 0;
        if (sp) s = k;
        if (sm) s_prime = k;
    }
    res.policy = ThresholdPolicy{s, s_prime};
    return res;
}

double region_value(const ProblemSpec& spec, const StoppingRegion& region) {
    const int n = spec.n();
    if (region.n() != n) throw SpecError("region and spec horizons differ");
    const std::vector<double> no_plus_after = suffix_survival(spec.plus_seq());
    const std::vector<double> no_minus_after = suffix_survival(spec.minus_seq());

    // u = P(win | stage k reached); forced stop at n wins iff X_n != 0.
    double u = spec.plus_prob(n) + spec.minus_prob(n);
    for (int k = n - 1; k >= 1; --k) {
        const double a = spec.plus_prob(k);
        const double b = spec.minus_prob(k);
        const double on_plus =
            region.stops_on_plus(k) ? no_plus_after[static_cast<size_t>(k)] : u;
        const double on_minus =
            region.stops_on_minus(k) ? no_minus_after[static_cast<size_t>(k)] : u;
        u = a * on_plus + b * on_minus + (1.0 - a - b) * u;
    }
    return u;
}

namespace {

// Depth-first walk over all 3^n trajectories in fixed order; the running
// product keeps each leaf's probability exact to one rounding per stage.
double enumerate_rec(const ProblemSpec& spec, const StoppingRegion& region,
                     std::vector<int>& traj, int k, double prob) {
    const int n = spec.n();
    if (prob == 0.0) return 0.0;  // impossible branch, e.g. a_k = 1
    if (k > n) {
        Trajectory t(traj);
        return win(t, apply_policy(region, t)) ? prob : 0.0;
    }
    const double a = spec.plus_prob(k);
    const double b = spec.minus_prob(k);
    double total = 0.0;
    traj[static_cast<size_t>(k - 1)] = 1;
    total += enumerate_rec(spec, region, traj, k + 1, prob * a);
    traj[static_cast<size_t>(k - 1)] = -1;
    total += enumerate_rec(spec, region, traj, k + 1, prob * b);
    traj[static_cast<size_t>(k - 1)] = 0;
    total += enumerate_rec(spec, region, traj, k + 1, prob * (1.0 - a - b));
    return total;
}

} // namespace

double enumerate_policy_value(const ProblemSpec& spec, const StoppingRegion& region) {
    const int n = spec.n();
    if (region.n() != n) throw SpecError("region and spec horizons differ");
    if (n > kEnumerationMaxHorizon)
        throw GuardError("horizon " + std::to_string(n) + " too large for 3^n enumeration (max " +
                         std::to_string(kEnumerationMaxHorizon) + ")");
    std::vector<int> traj(static_cast<size_t>(n), 0);
    return enumerate_rec(spec, region, traj, 1, 1.0);
}

MonotoneReport verify_monotone(const ProblemSpec& spec) {
    const DPResult dp = solve_backward(spec);
    MonotoneReport report;
    report.switch_plus = dp.policy.s;
    report.switch_minus = dp.policy.s_prime;
    for (int k = 2; k <= spec.n(); ++k) {
        const bool plus_drop = dp.stop_plus[static_cast<size_t>(k - 1)] &&
                               !dp.stop_plus[static_cast<size_t>(k)];
        const bool minus_drop = dp.stop_minus[static_cast<size_t>(k - 1)] &&
                                !dp.stop_minus[static_cast<size_t>(k)];
        if (plus_drop || minus_drop) {
            report.monotone = false;
            report.first_violation = k;
            break;
        }
    }
    return report;
}

} // namespace laststop
