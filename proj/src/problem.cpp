#include "laststop/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace laststop {

namespace {

bool is_constant(const std::vector<double>& xs) {
    return std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); });
}

void check_probability_pair(int k, double a, double b) {
    if (!(a >= 0.0 && a <= 1.0) || std::isnan(a))
        throw SpecError("plus probability at stage " + std::to_string(k) +
                        " is outside [0,1]");
    if (!(b >= 0.0 && b <= 1.0) || std::isnan(b))
        throw SpecError("minus probability at stage " + std::to_string(k) +
                        " is outside [0,1]");
    if (a + b > 1.0)
        throw SpecError("stage " + std::to_string(k) + ": P(+1) + P(-1) = " +
                        std::to_string(a + b) + " exceeds 1");
}

Kind classify(const std::vector<double>& plus, const std::vector<double>& minus) {
    const bool sym = std::equal(plus.begin(), plus.end(), minus.begin());
    if (sym && is_constant(plus)) return Kind::weber;
    if (is_constant(plus) && is_constant(minus)) return Kind::biased;
    if (sym) return Kind::timevarying;
    return Kind::general;
}

} // namespace

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::weber: return "weber";
        case Kind::biased: return "biased";
        case Kind::timevarying: return "timevarying";
        case Kind::general: return "general";
    }
    return "?";
}

std::optional<Kind> kind_from_name(const std::string& name) {
    if (name == "weber") return Kind::weber;
    if (name == "biased") return Kind::biased;
    if (name == "timevarying") return Kind::timevarying;
    if (name == "general") return Kind::general;
    return std::nullopt;
}

ProblemSpec::ProblemSpec(Kind kind, std::vector<double> plus, std::vector<double> minus)
    : kind_(kind), n_(static_cast<int>(plus.size())),
      plus_(std::move(plus)), minus_(std::move(minus)) {}

ProblemSpec ProblemSpec::weber(int n, double p) {
    return general(std::vector<double>(static_cast<size_t>(std::max(n, 0)), p),
                   std::vector<double>(static_cast<size_t>(std::max(n, 0)), p));
}

ProblemSpec ProblemSpec::biased(int n, double p, double p_prime) {
    return general(std::vector<double>(static_cast<size_t>(std::max(n, 0)), p),
                   std::vector<double>(static_cast<size_t>(std::max(n, 0)), p_prime));
}

ProblemSpec ProblemSpec::timevarying(std::vector<double> p) {
    std::vector<double> copy = p;
    return general(std::move(p), std::move(copy));
}

ProblemSpec ProblemSpec::general(std::vector<double> plus, std::vector<double> minus) {
    if (plus.empty() || minus.empty()) throw SpecError("empty probability sequence");
    if (plus.size() != minus.size())
        throw SpecError("plus/minus sequences differ in length");
    for (size_t i = 0; i < plus.size(); ++i)
        check_probability_pair(static_cast<int>(i + 1), plus[i], minus[i]);
    Kind kind = classify(plus, minus);
    return ProblemSpec(kind, std::move(plus), std::move(minus));
}

bool ProblemSpec::symmetric() const {
    return kind_ == Kind::weber || kind_ == Kind::timevarying;
}

double ProblemSpec::p() const {
    if (!constant()) throw SpecError("p is defined only for constant-probability specs");
    return plus_.front();
}

double ProblemSpec::p_prime() const {
    if (!constant()) throw SpecError("p' is defined only for constant-probability specs");
    return minus_.front();
}

ProblemSpec validate_spec(const RawSpec& raw) {
    auto kind = kind_from_name(raw.kind);
    if (!kind) throw SpecError("unknown kind '" + raw.kind + "'");
    if (!raw.n) throw SpecError("missing field n");
    const int n = *raw.n;
    if (n < 1) throw SpecError("n must be >= 1");

    auto require = [&](bool present, const char* field, bool wanted) {
        if (wanted && !present)
            throw SpecError(std::string("kind ") + raw.kind + " requires field " + field);
        if (!wanted && present)
            throw SpecError(std::string("kind ") + raw.kind + " does not take field " + field);
    };

    switch (*kind) {
        case Kind::weber:
            require(raw.p.has_value(), "p", true);
            require(raw.p_prime.has_value(), "p_prime", false);
            require(raw.p_seq.has_value(), "p_seq", false);
            require(raw.plus_seq.has_value(), "plus_seq", false);
            require(raw.minus_seq.has_value(), "minus_seq", false);
            return ProblemSpec::weber(n, *raw.p);
        case Kind::biased:
            require(raw.p.has_value(), "p", true);
            require(raw.p_prime.has_value(), "p_prime", true);
            require(raw.p_seq.has_value(), "p_seq", false);
            require(raw.plus_seq.has_value(), "plus_seq", false);
            require(raw.minus_seq.has_value(), "minus_seq", false);
            return ProblemSpec::biased(n, *raw.p, *raw.p_prime);
        case Kind::timevarying:
            require(raw.p.has_value(), "p", false);
            require(raw.p_prime.has_value(), "p_prime", false);
            require(raw.p_seq.has_value(), "p_seq", true);
            require(raw.plus_seq.has_value(), "plus_seq", false);
            require(raw.minus_seq.has_value(), "minus_seq", false);
            if (static_cast<int>(raw.p_seq->size()) != n)
                throw SpecError("p_seq length does not match n");
            return ProblemSpec::timevarying(*raw.p_seq);
        case Kind::general:
            require(raw.p.has_value(), "p", false);
            require(raw.p_prime.has_value(), "p_prime", false);
            require(raw.p_seq.has_value(), "p_seq", false);
            require(raw.plus_seq.has_value(), "plus_seq", true);
            require(raw.minus_seq.has_value(), "minus_seq", true);
            if (static_cast<int>(raw.plus_seq->size()) != n ||
                static_cast<int>(raw.minus_seq->size()) != n)
                throw SpecError("plus_seq/minus_seq length does not match n");
            return ProblemSpec::general(*raw.plus_seq, *raw.minus_seq);
    }
    throw SpecError("unreachable kind");
}

Trajectory::Trajectory(std::vector<int> values) : values_(std::move(values)) {
    if (values_.empty()) throw SpecError("empty trajectory");
    for (int v : values_)
        if (v < -1 || v > 1) throw SpecError("trajectory values must be -1, 0, or +1");
}

StoppingRegion::StoppingRegion(int n)
    : n_(n), plus_(static_cast<size_t>(n) + 1, 0), minus_(static_cast<size_t>(n) + 1, 0) {
    if (n < 1) throw SpecError("region horizon must be >= 1");
}

StoppingRegion StoppingRegion::from_sets(int n, const std::vector<int>& plus_set,
                                         const std::vector<int>& minus_set) {
    StoppingRegion r(n);
    for (int k : plus_set) {
        if (k < 1 || k > n) throw SpecError("plus-set stage out of range");
        r.plus_[static_cast<size_t>(k)] = 1;
    }
    for (int k : minus_set) {
        if (k < 1 || k > n) throw SpecError("minus-set stage out of range");
        r.minus_[static_cast<size_t>(k)] = 1;
    }
    return r;
}

StoppingRegion StoppingRegion::from_thresholds(int n, int s, int s_prime) {
    if (s < 1 || s > n || s_prime < 1 || s_prime > n)
        throw SpecError("threshold out of range [1, n]");
    StoppingRegion r(n);
    for (int k = s; k <= n; ++k) r.plus_[static_cast<size_t>(k)] = 1;
    for (int k = s_prime; k <= n; ++k) r.minus_[static_cast<size_t>(k)] = 1;
    return r;
}

StoppingRegion StoppingRegion::terminal_only(int n) { return StoppingRegion(n); }

bool StoppingRegion::subset_of(const StoppingRegion& other) const {
    if (n_ != other.n_) return false;
    for (int k = 1; k <= n_; ++k) {
        if (stops_on_plus(k) && !other.stops_on_plus(k)) return false;
        if (stops_on_minus(k) && !other.stops_on_minus(k)) return false;
    }
    return true;
}

StoppingRegion to_region(const ThresholdPolicy& policy, int n) {
    return StoppingRegion::from_thresholds(n, policy.s, policy.s_prime);
}

bool win(const Trajectory& traj, int t) {
    const int n = traj.n();
    if (t < 1 || t > n) throw SpecError("stage index out of range");
    const int v = traj.x(t);
    if (v == 0) return false;
    for (int i = t + 1; i <= n; ++i)
        if (traj.x(i) == v) return false;
    return true;
}

int apply_policy(const StoppingRegion& region, const Trajectory& traj) {
    const int n = traj.n();
    if (region.n() != n) throw SpecError("region and trajectory horizons differ");
    for (int k = 1; k < n; ++k) {
        const int v = traj.x(k);
        if (v == 1 && region.stops_on_plus(k)) return k;
        if (v == -1 && region.stops_on_minus(k)) return k;
    }
    return n;  // forced terminal stop
}

} // namespace laststop
