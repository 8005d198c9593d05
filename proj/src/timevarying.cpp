#include "laststop/timevarying.hpp"

#include <cmath>

namespace laststop {

namespace {

void check_symmetric_params(std::span<const double> p, int min_n) {
    if (static_cast<int>(p.size()) < min_n)
        throw SpecError("horizon must be >= " + std::to_string(min_n));
    for (double pk : p)
        if (!(pk >= 0.0 && pk <= 0.5))
            throw SpecError("symmetric stage probability outside [0, 1/2]");
}

double odds(double pk) { return pk / (1.0 - pk); }  // p_k <= 1/2, so finite

} // namespace

LambdaSequence::LambdaSequence(std::vector<double> values) : values_(std::move(values)) {}

std::vector<double> odds_sequence(std::span<const double> p) {
    check_symmetric_params(p, 1);
    std::vector<double> r(p.size());
    for (size_t j = 0; j < p.size(); ++j) r[j] = odds(p[j]);
    return r;
}

LambdaSequence lambda_sequence(std::span<const double> p) {
    check_symmetric_params(p, 2);
    const int n = static_cast<int>(p.size());
    std::vector<double> lam(static_cast<size_t>(n), 0.0);  // index 1..n-1
    lam[static_cast<size_t>(n - 1)] = odds(p[static_cast<size_t>(n - 1)]);
    for (int k = n - 2; k >= 1; --k) {
        const double r = odds(p[static_cast<size_t>(k)]);  // r_{k+1}
        lam[static_cast<size_t>(k)] = r + (1.0 - r) * lam[static_cast<size_t>(k) + 1];
    }
    return LambdaSequence(std::move(lam));
}

double stop_now_value(std::span<const double> p, int k) {
    check_symmetric_params(p, 1);
    const int n = static_cast<int>(p.size());
    if (k < 1 || k > n) throw SpecError("stage index out of range");
    double v = 1.0;
    for (int j = k + 1; j <= n; ++j) v *= 1.0 - p[static_cast<size_t>(j - 1)];
    return v;
}

double stop_next_value(std::span<const double> p, int k) {
    check_symmetric_params(p, 1);
    const int n = static_cast<int>(p.size());
    if (k < 1 || k > n - 1) throw SpecError("stage index out of range");
    // W_k = 2 sum_m [prod_{j=k+1}^{k+m} (q_j - p_j)] p_{k+m+1}
    //             [prod_{j=k+m+2}^{n} q_j]
    double total = 0.0;
    double zeros_run = 1.0;  // prod of (1 - 2 p_j) over the skipped stages
    for (int m = 0; m <= n - k - 1; ++m) {
        const int hit = k + m + 1;
        double none_after = 1.0;
        for (int j = hit + 1; j <= n; ++j) none_after *= 1.0 - p[static_cast<size_t>(j - 1)];
        total += zeros_run * p[static_cast<size_t>(hit - 1)] * none_after;
        zeros_run *= 1.0 - 2.0 * p[static_cast<size_t>(hit - 1)];
    }
    return 2.0 * total;
}

TimeVaryingSolution solve_time_varying(std::span<const double> p) {
    check_symmetric_params(p, 2);
    const int n = static_cast<int>(p.size());

    // Backward scan; only the Lambda values actually tested are computed.
    TimeVaryingSolution sol;
    double lam = odds(p[static_cast<size_t>(n - 1)]);  // Lambda_{n-1} = r_n
    sol.lambda_evaluations = 1;
    int k_star = 1;
    if (2.0 * lam >= 1.0) {
        k_star = n;
    } else {
        for (int k = n - 2; k >= 1; --k) {
            const double r = odds(p[static_cast<size_t>(k)]);  // r_{k+1}
            lam = r + (1.0 - r) * lam;
            ++sol.lambda_evaluations;
            if (2.0 * lam >= 1.0) {
                k_star = k + 1;
                break;
            }
        }
    }
    sol.k_star = k_star;
    sol.policy = ThresholdPolicy{k_star, k_star};

    // Exact value of "stop on the first nonzero at stage >= k_star":
    // u_k = 2 p_k V_k + (1 - 2 p_k) u_{k+1}, with forced stop at n.
    double u = 2.0 * p[static_cast<size_t>(n - 1)];
    double none_after = 1.0;  // V_k = prod_{j>k} (1 - p_j)
    for (int k = n - 1; k >= k_star; --k) {
        none_after *= 1.0 - p[static_cast<size_t>(k)];
        u = 2.0 * p[static_cast<size_t>(k - 1)] * none_after +
            (1.0 - 2.0 * p[static_cast<size_t>(k - 1)]) * u;
    }
    sol.value = u;
    return sol;
}

WeberSolution weber_threshold(int n, double p) {
    if (n < 1) throw SpecError("n must be >= 1");
    if (!(p >= 0.0 && p <= 0.5)) throw SpecError("p outside [0, 1/2]");
    const double q = 1.0 - p;
    const double qt = 1.0 - 2.0 * p;

    // W_k/V_k = 2 (1 - (qt/q)^{n-k}) falls as k grows and is 0 at k = n, so
    // the first stage with ratio < 1 always exists; the s = 1 fallback is
    // kept for form's sake.
    int s = 1;
    for (int k = 1; k <= n; ++k) {
        const double ratio = 2.0 * (std::pow(q, n - k) - std::pow(qt, n - k)) / std::pow(q, n - k);
        if (ratio < 1.0) {
            s = k;
            break;
        }
    }
    const double value = 2.0 * (std::pow(q, n - s + 1) - std::pow(qt, n - s + 1));
    return WeberSolution{s, value};
}

} // namespace laststop
