#pragma once

#include <span>
#include <vector>

#include "laststop/problem.hpp"

namespace laststop {

// Symmetric time-varying case: P(X_k=+1) = P(X_k=-1) = p_k, p_k <= 1/2.
//
// V_k is the win probability of stopping at stage k on a nonzero value;
// W_k is the win probability of continuing and stopping at the next nonzero
// value. Lambda_k = W_k / (2 V_k); stopping from stage k on is optimal once
// 2 Lambda_k < 1.

/// Lambda_1..Lambda_{n-1}, filled backward from Lambda_{n-1} = r_n with
/// Lambda_k = r_{k+1} + (1 - r_{k+1}) Lambda_{k+1}, r_j = p_j / (1 - p_j).
class LambdaSequence {
public:
    explicit LambdaSequence(std::vector<double> values);  // values[0] unused

    int n() const { return static_cast<int>(values_.size()); }
    double lambda(int k) const { return values_[static_cast<size_t>(k)]; }

private:
    std::vector<double> values_;  // index 1..n-1
};

/// Odds r_1..r_n with r_j = p_j / (1 - p_j); r_j <= 1 whenever p_j <= 1/2.
std::vector<double> odds_sequence(std::span<const double> p);

/// Backward-filled Lambda sequence. Requires every p_k in [0, 1/2], n >= 2.
LambdaSequence lambda_sequence(std::span<const double> p);

/// V_k = prod_{j>k} (1 - p_j), the stop-now win probability given a nonzero
/// observation at stage k.
double stop_now_value(std::span<const double> p, int k);

/// W_k, the continue-and-stop-at-the-next-opportunity win probability,
/// evaluated from its explicit double-product sum (independent of the
/// Lambda recurrence; used to cross-check it).
double stop_next_value(std::span<const double> p, int k);

struct TimeVaryingSolution {
    int k_star = 1;  // stop on the first nonzero observation at stage >= k_star
    ThresholdPolicy policy;
    double value = 0.0;
    int lambda_evaluations = 0;  // at most n - k_star + 1
};

/// Linear backward scan for k_star: walk k = n-1, n-2, ... and stop at the
/// first k with 2 Lambda_k >= 1, giving k_star = k+1; if the scan exhausts,
/// k_star = 1. Only the Lambda values actually visited are computed. The
/// threshold is inclusive: stopping at stage k_star itself is optimal.
TimeVaryingSolution solve_time_varying(std::span<const double> p);

struct WeberSolution {
    int s = 1;
    double value = 0.0;
};

/// Constant-p symmetric case: V_k = q^{n-k} and W_k = 2(q^{n-k} - qt^{n-k})
/// with q = 1-p, qt = 1-2p, so s is the smallest stage with W_k/V_k < 1
/// (s = 1 if there is none). Requires p in [0, 1/2].
WeberSolution weber_threshold(int n, double p);

} // namespace laststop
