#pragma once

#include <span>
#include <vector>

#include "laststop/problem.hpp"

namespace laststop {

// Fast solvers for the biased i.i.d. case: P(X=+1)=p, P(X=-1)=p'.
//
// w(j,k) is the win probability of the threshold stopping time that takes
// the first +1 at stage >= j or the first -1 at stage >= k (forced stop
// at n). The optimal pair (s, s') maximizes w.

/// Lower-triangular grid of w(j,k), 1 <= k <= j <= n.
class WGrid {
public:
    WGrid(int n, double p, double p_prime);

    int n() const { return n_; }
    double p() const { return p_; }
    double p_prime() const { return p_prime_; }

    double w(int j, int k) const { return entries_[index(j, k)]; }
    double& w(int j, int k) { return entries_[index(j, k)]; }

private:
    size_t index(int j, int k) const {
        return static_cast<size_t>(j - 1) * j / 2 + static_cast<size_t>(k - 1);
    }

    int n_;
    double p_, p_prime_;
    std::vector<double> entries_;
};

/// Fills the grid backward from w(n,n) = p + p' using the one-step
/// recurrences. Requires p' > 0.
WGrid w_recurrence(int n, double p, double p_prime);

/// Single-entry evaluation of w(j,k) in closed form, no grid. Requires
/// p > 0 and p' > 0; for j < k the roles of the two signs are exchanged.
double w_closed_form(int n, double p, double p_prime, int j, int k);

enum class Method { walk, bisection, dp, odds };
const char* method_name(Method m);

struct SolveReport {
    ThresholdPolicy thresholds;
    double value = 0.0;
    Method method = Method::walk;
    long evaluation_count = 0;  // number of w-evaluations performed
};

/// Zigzag walk down the diagonal of the w grid; O(n) evaluations.
/// Degenerate inputs are dispatched: p' = 0 to the odds rule, p = p' to the
/// symmetric-case threshold, p + p' = 1 to stop-on-the-last-event, and
/// p < p' solves the sign-swapped problem and swaps the thresholds back.
SolveReport solve_walk(int n, double p, double p_prime);

/// Mode search on the unimodal maps j -> w(j,1) and k -> w(s,k) by discrete
/// ternary search; O(log n) closed-form evaluations. Same degenerate-input
/// dispatch as solve_walk. Throws UnimodalityError if a found mode fails its
/// neighbor check (never expected).
SolveReport solve_bisection(int n, double p, double p_prime);

/// Stop-on-the-last-success rule for independent indicators (the p' = 0
/// case): with odds r_k = p_k/(1-p_k), stop from the largest index s whose
/// backward odds sum reaches 1 (s = 1 if the total stays below 1).
SolveReport odds_threshold(std::span<const double> success_prob);

} // namespace laststop
