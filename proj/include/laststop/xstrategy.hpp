#pragma once

namespace laststop {

// Continuous-arrival approximation of the symmetric problem. The n
// observations arrive at uniform order-statistic times on [0,1]; an
// x-strategy picks the first nonzero observation arriving after time x.
// Its success probability has the closed form
//   p_n(x) = 2((q + p x)^n - (qt + 2 p x)^n),  q = 1-p, qt = 1-2p,
// maximized at x*_n = (q - qt b_n) / (p (2 b_n - 1)) with b_n = 2^{1/(n-1)}.

struct XStrategyReport {
    int n = 0;
    double p = 0.0;
    double beta = 0.0;    // 2^{1/(n-1)}; NaN for the degenerate n = 1
    double x_star = 0.0;  // stationary point clamped to [0, 1]
    double value = 0.0;   // p_n(x_star)
    bool interior = false;  // unclamped stationary point lies in [0, 1]
    bool degenerate = false;  // n = 1
};

/// Closed-form p_n(x). Requires n >= 1, p in (0, 1/2], x in [0, 1].
double success_prob_x(int n, double p, double x);

/// Optimal cut and its value. n = 1 is reported degenerate with x* = 0 and
/// value 2p. When the interior condition p >= (b_n-1)/(2 b_n-1) fails, the
/// stationary point is negative and x* clamps to 0.
XStrategyReport optimal_x(int n, double p);

/// 2 (2 b_n - 1)^{1-n}, the interior-case optimum; independent of p and
/// strictly decreasing toward 1/2. Requires n >= 2. Evaluated in log space.
double optimal_value(int n);

/// True iff p >= (b_n - 1) / (2 b_n - 1), i.e. the optimal cut is interior
/// and the x-strategy achieves at least 1/2.
bool lower_bound_condition(int n, double p);

} // namespace laststop
