#include "laststop/xstrategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "laststop/errors.hpp"

namespace laststop {

namespace {

void check_params(int n, double p) {
    if (n < 1) throw SpecError("n must be >= 1");
    if (!(p > 0.0 && p <= 0.5)) throw SpecError("p outside (0, 1/2]");
}

} // namespace

double success_prob_x(int n, double p, double x) {
    check_params(n, p);
    if (!(x >= 0.0 && x <= 1.0)) throw SpecError("cut x outside [0,1]");
    const double q = 1.0 - p;
    const double qt = 1.0 - 2.0 * p;
    return 2.0 * (std::pow(q + p * x, n) - std::pow(qt + 2.0 * p * x, n));
}

XStrategyReport optimal_x(int n, double p) {
    check_params(n, p);
    XStrategyReport report;
    report.n = n;
    report.p = p;
    if (n == 1) {
        // No cut to choose with a single arrival; any x before it selects it.
        report.beta = std::numeric_limits<double>::quiet_NaN();
        report.x_star = 0.0;
        report.value = 2.0 * p;
        report.interior = false;
        report.degenerate = true;
        return report;
    }
    const double beta = std::exp2(1.0 / (n - 1));
    const double q = 1.0 - p;
    const double qt = 1.0 - 2.0 * p;
    const double stationary = (q - qt * beta) / (p * (2.0 * beta - 1.0));
    report.beta = beta;
    report.interior = p >= (beta - 1.0) / (2.0 * beta - 1.0);
    report.x_star = std::clamp(stationary, 0.0, 1.0);
    report.value = success_prob_x(n, p, report.x_star);
    return report;
}

double optimal_value(int n) {
    if (n < 2) throw SpecError("n must be >= 2");
    const double beta = std::exp2(1.0 / (n - 1));
    // (2 beta - 1)^{1-n} in log space; beta - 1 keeps the log accurate for
    // large n where 2 beta - 1 is barely above 1.
    return 2.0 * std::exp((1.0 - n) * std::log1p(2.0 * (beta - 1.0)));
}

bool lower_bound_condition(int n, double p) {
    if (n < 2) throw SpecError("n must be >= 2");
    const double beta = std::exp2(1.0 / (n - 1));
    return p >= (beta - 1.0) / (2.0 * beta - 1.0);
}

} // namespace laststop
