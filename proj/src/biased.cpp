#include "laststop/biased.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "laststop/timevarying.hpp"

namespace laststop {

namespace {

void check_biased_params(int n, double p, double p_prime) {
    if (n < 1) throw SpecError("n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw SpecError("p outside [0,1]");
    if (!(p_prime >= 0.0 && p_prime <= 1.0)) throw SpecError("p' outside [0,1]");
    if (p + p_prime > 1.0) throw SpecError("p + p' exceeds 1");
}

} // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::walk: return "walk";
        case Method::bisection: return "bisection";
        case Method::dp: return "dp";
        case Method::odds: return "odds";
    }
    return "?";
}

WGrid::WGrid(int n, double p, double p_prime)
    : n_(n), p_(p), p_prime_(p_prime),
      entries_(static_cast<size_t>(n) * (n + 1) / 2, 0.0) {
    if (n < 1) throw SpecError("n must be >= 1");
}

WGrid w_recurrence(int n, double p, double p_prime) {
    check_biased_params(n, p, p_prime);
    if (p_prime == 0.0)
        throw SpecError("w recurrence needs p' > 0; use the odds rule for p' = 0");
    const double q = 1.0 - p;
    const double qp = 1.0 - p_prime;
    const double qt = 1.0 - p - p_prime;

    // power tables: qp_pow[i] = (1-p')^i, q_pow[i] = (1-p)^i
    std::vector<double> qp_pow(static_cast<size_t>(n) + 1, 1.0);
    std::vector<double> q_pow(static_cast<size_t>(n) + 1, 1.0);
    for (int i = 1; i <= n; ++i) {
        qp_pow[static_cast<size_t>(i)] = qp_pow[static_cast<size_t>(i) - 1] * qp;
        q_pow[static_cast<size_t>(i)] = q_pow[static_cast<size_t>(i) - 1] * q;
    }

    WGrid grid(n, p, p_prime);
    grid.w(n, n) = p + p_prime;
    for (int j = n; j >= 1; --j) {
        if (j < n)
            grid.w(j, j) = p_prime * qp_pow[static_cast<size_t>(n - j)] +
                           p * q_pow[static_cast<size_t>(n - j)] + qt * grid.w(j + 1, j + 1);
        for (int k = j - 1; k >= 1; --k)
            grid.w(j, k) = p_prime * qp_pow[static_cast<size_t>(n - k)] + qp * grid.w(j, k + 1);
    }
    return grid;
}

double w_closed_form(int n, double p, double p_prime, int j, int k) {
    check_biased_params(n, p, p_prime);
    if (j < 1 || j > n || k < 1 || k > n) throw SpecError("threshold index out of range");
    if (j < k) return w_closed_form(n, p_prime, p, k, j);  // exchange the signs' roles
    if (p == 0.0 || p_prime == 0.0)
        throw SpecError("closed form needs p > 0 and p' > 0");
    const double q = 1.0 - p;
    const double qp = 1.0 - p_prime;
    const double qt = 1.0 - p - p_prime;
    const double diag = (p / p_prime) * (std::pow(q, n - j + 1) - std::pow(qt, n - j + 1)) +
                        (p_prime / p) * (std::pow(qp, n - j + 1) - std::pow(qt, n - j + 1));
    if (j == k) return diag;
    return (j - k) * p_prime * std::pow(qp, n - k) + std::pow(qp, j - k) * diag;
}

namespace {

// Shared degenerate-input dispatch for the walk and bisection entry points.
// Returns true when the report was produced without running the caller's
// main algorithm.
bool dispatch_degenerate(int n, double p, double p_prime, Method method,
                         const std::function<SolveReport(int, double, double)>& self,
                         SolveReport& out) {
    if (p < p_prime) {
        SolveReport swapped = self(n, p_prime, p);
        std::swap(swapped.thresholds.s, swapped.thresholds.s_prime);
        out = swapped;
        return true;
    }
    if (p + p_prime == 1.0) {  // stop on the last event
        out = SolveReport{ThresholdPolicy{n, n}, 1.0, method, 0};
        return true;
    }
    if (p_prime == 0.0) {
        if (p == 0.0) {
            out = SolveReport{ThresholdPolicy{n, n}, 0.0, method, 0};
            return true;
        }
        std::vector<double> seq(static_cast<size_t>(n), p);
        out = odds_threshold(seq);
        return true;
    }
    if (p == p_prime) {  // symmetric case
        const WeberSolution w = weber_threshold(n, p);
        out = SolveReport{ThresholdPolicy{w.s, w.s}, w.value, method, 1};
        return true;
    }
    return false;
}

} // namespace

SolveReport solve_walk(int n, double p, double p_prime) {
    check_biased_params(n, p, p_prime);
    SolveReport report;
    if (dispatch_degenerate(n, p, p_prime, Method::walk, solve_walk, report)) return report;

    long evals = 0;
    auto w = [&](int j, int k) {
        ++evals;
        return w_closed_form(n, p, p_prime, j, k);
    };

    // Zigzag descent: alpha holds the best value found so far; each test
    // lowers one threshold by one and keeps going while the value does not
    // drop (ties extend the stopping region).
    int k = n;
    double alpha = w(k, k);
    int s = n;
    for (;;) {
        if (k == 1)
            return SolveReport{ThresholdPolicy{1, 1}, alpha, Method::walk, evals};
        double beta = w(k, k - 1);  // try lowering the minus threshold
        if (beta < alpha)
            return SolveReport{ThresholdPolicy{k, k}, alpha, Method::walk, evals};
        alpha = beta;
        k -= 1;
        beta = w(k, k);  // try lowering the plus threshold
        if (beta < alpha) {
            // Lowering the plus threshold to k hurts, so it stays at the
            // pre-decrement index k+1. (Assigning s = k here would be off by
            // one: on (n,p,p') = (3, 0.4, 0.1) it returns (1,1) with value
            // 0.515 instead of the optimal (2,1) with 0.603.)
            s = k + 1;
            break;
        }
        alpha = beta;
    }
    // Only the minus threshold moves from here on; alpha == w(s, k).
    for (;;) {
        if (k == 1)
            return SolveReport{ThresholdPolicy{s, 1}, alpha, Method::walk, evals};
        const double beta = w(s, k - 1);
        if (beta < alpha)
            return SolveReport{ThresholdPolicy{s, k}, alpha, Method::walk, evals};
        alpha = beta;
        k -= 1;
    }
}

namespace {

// Smallest argmax of f over {lo..hi}, assuming f weakly increases then
// weakly decreases. On equal probes the bracket shrinks toward the smaller
// index; brackets of width <= 4 are scanned linearly.
int ternary_mode(int lo, int hi, const std::function<double(int)>& f) {
    while (hi - lo > 4) {
        const int m1 = lo + (hi - lo) / 3;
        const int m2 = hi - (hi - lo) / 3;
        if (f(m1) < f(m2))
            lo = m1 + 1;
        else
            hi = m2 - 1;
    }
    int best = lo;
    double best_value = f(lo);
    for (int i = lo + 1; i <= hi; ++i) {
        const double v = f(i);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    return best;
}

void check_mode_neighbors(int mode, int lo, int hi, const std::function<double(int)>& f,
                          const char* label) {
    const double at_mode = f(mode);
    if ((mode > lo && f(mode - 1) > at_mode) || (mode < hi && f(mode + 1) > at_mode))
        throw UnimodalityError(std::string("unimodality violation at the ") + label +
                               " mode " + std::to_string(mode));
}

} // namespace

SolveReport solve_bisection(int n, double p, double p_prime) {
    check_biased_params(n, p, p_prime);
    SolveReport report;
    if (dispatch_degenerate(n, p, p_prime, Method::bisection, solve_bisection, report))
        return report;

    long evals = 0;
    auto w = [&](int j, int k) {
        ++evals;
        return w_closed_form(n, p, p_prime, j, k);
    };

    // With the minus threshold parked at 1, j -> w(j,1) peaks at s; then
    // k -> w(s,k) over k <= s peaks at s'.
    auto over_plus = std::function<double(int)>([&](int j) { return w(j, 1); });
    const int s = ternary_mode(1, n, over_plus);
    check_mode_neighbors(s, 1, n, over_plus, "plus");

    auto over_minus = std::function<double(int)>([&](int k) { return w(s, k); });
    const int s_prime = ternary_mode(1, s, over_minus);
    check_mode_neighbors(s_prime, 1, s, over_minus, "minus");

    const double value = w(s, s_prime);
    return SolveReport{ThresholdPolicy{s, s_prime}, value, Method::bisection, evals};
}

SolveReport odds_threshold(std::span<const double> success_prob) {
    const int n = static_cast<int>(success_prob.size());
    if (n < 1) throw SpecError("empty odds sequence");
    for (double pk : success_prob)
        if (!(pk >= 0.0 && pk <= 1.0)) throw SpecError("success probability outside [0,1]");

    // Backward odds sum; a p_k = 1 term is infinite and trips the test at k.
    double odds_sum = 0.0;
    int s = 1;
    for (int k = n; k >= 1; --k) {
        const double pk = success_prob[static_cast<size_t>(k - 1)];
        odds_sum += pk >= 1.0 ? std::numeric_limits<double>::infinity() : pk / (1.0 - pk);
        if (odds_sum >= 1.0) {
            s = k;
            break;
        }
    }

    // P(win) = sum over j >= s of P(first success in the window is at j and
    // none follow). Evaluated directly so p_k = 1 needs no special case.
    std::vector<double> none_after(static_cast<size_t>(n) + 1, 1.0);
    for (int k = n - 1; k >= 0; --k)
        none_after[static_cast<size_t>(k)] = none_after[static_cast<size_t>(k) + 1] *
                                             (1.0 - success_prob[static_cast<size_t>(k)]);
    double value = 0.0;
    double none_before = 1.0;
    for (int j = s; j <= n; ++j) {
        const double pj = success_prob[static_cast<size_t>(j - 1)];
        value += none_before * pj * none_after[static_cast<size_t>(j)];
        none_before *= 1.0 - pj;
    }

    // No -1 ever occurs, so stopping on one is vacuous; threshold 1 matches
    // the DP's ties-stop convention.
    return SolveReport{ThresholdPolicy{s, 1}, value, Method::odds, 0};
}

} // namespace laststop
