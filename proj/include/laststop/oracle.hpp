#pragma once

#include <optional>
#include <vector>

#include "laststop/problem.hpp"

namespace laststop {

/// Exact backward-induction solution for the fully general independent case.
struct DPResult {
    // continue_value[j] = optimal win probability with j observations left;
    // continue_value[0] == 0 and continue_value[n] is the problem value.
    std::vector<double> continue_value;
    // Per-stage decisions, index 1..n (index 0 unused).
    std::vector<char> stop_plus;
    std::vector<char> stop_minus;
    ThresholdPolicy policy;
    double value = 0.0;

    // Value of continuing past stage k, i.e. continue_value[n-k].
    double continue_value_at_stage(int k) const {
        return continue_value[continue_value.size() - 1 - static_cast<size_t>(k)];
    }
};

/// Optimal value and per-stage stop decisions, O(n). Stopping on +1 at stage
/// k is optimal iff prod_{j>k}(1-a_j) >= v_{n-k} (ties stop, which yields the
/// smallest optimal thresholds); analogously for -1.
DPResult solve_backward(const ProblemSpec& spec);

/// Exact win probability of the hitting time of `region` by summing over all
/// 3^n trajectories. Guarded at n <= 14; throws GuardError above that.
double enumerate_policy_value(const ProblemSpec& spec, const StoppingRegion& region);
inline constexpr int kEnumerationMaxHorizon = 14;

/// Exact win probability of the hitting time of `region` by one backward
/// pass, O(n). No horizon guard.
double region_value(const ProblemSpec& spec, const StoppingRegion& region);

struct MonotoneReport {
    bool monotone = true;
    // First stage whose stop decision flips back to false, if any.
    std::optional<int> first_violation;
    int switch_plus = 0;   // first stage where stopping on +1 is optimal
    int switch_minus = 0;  // first stage where stopping on -1 is optimal
};

/// Runs solve_backward and checks that both stop-decision sequences are
/// nondecreasing. Violations are report content, not errors.
MonotoneReport verify_monotone(const ProblemSpec& spec);

} // namespace laststop
