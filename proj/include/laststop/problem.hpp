#pragma once

#include <optional>
#include <string>
#include <vector>

#include "laststop/errors.hpp"

namespace laststop {

// Stages are 1-indexed throughout: k runs over {1..n}.

enum class Kind { weber, biased, timevarying, general };

const char* kind_name(Kind k);
std::optional<Kind> kind_from_name(const std::string& name);

/// Independent ternary observations X_1..X_n with P(X_k=+1)=a_k and
/// P(X_k=-1)=b_k. Immutable after construction; constructors validate and
/// normalize the kind tag to the most specific one the sequences admit
/// (e.g. biased input with p == p' becomes weber).
class ProblemSpec {
public:
    static ProblemSpec weber(int n, double p);
    static ProblemSpec biased(int n, double p, double p_prime);
    static ProblemSpec timevarying(std::vector<double> p);
    static ProblemSpec general(std::vector<double> plus, std::vector<double> minus);

    int n() const { return n_; }
    Kind kind() const { return kind_; }

    double plus_prob(int k) const { return plus_[static_cast<size_t>(k - 1)]; }
    double minus_prob(int k) const { return minus_[static_cast<size_t>(k - 1)]; }
    const std::vector<double>& plus_seq() const { return plus_; }
    const std::vector<double>& minus_seq() const { return minus_; }

    // a_k == b_k for every stage (weber or timevarying).
    bool symmetric() const;
    // both sequences constant (weber or biased).
    bool constant() const { return kind_ == Kind::weber || kind_ == Kind::biased; }

    // Constant-kind accessors; throw SpecError on non-constant specs.
    double p() const;
    double p_prime() const;
    double q() const { return 1.0 - p(); }
    double q_prime() const { return 1.0 - p_prime(); }
    double q_tilde() const { return 1.0 - p() - p_prime(); }

private:
    ProblemSpec(Kind kind, std::vector<double> plus, std::vector<double> minus);

    Kind kind_;
    int n_;
    std::vector<double> plus_;
    std::vector<double> minus_;
};

/// Unvalidated spec as read from flags or a spec file. Exactly the fields
/// required by `kind` must be set: weber -> n,p; biased -> n,p,p_prime;
/// timevarying -> n,p_seq; general -> n,plus_seq,minus_seq.
struct RawSpec {
    std::string kind;
    std::optional<int> n;
    std::optional<double> p;
    std::optional<double> p_prime;
    std::optional<std::vector<double>> p_seq;
    std::optional<std::vector<double>> plus_seq;
    std::optional<std::vector<double>> minus_seq;
};

/// Validates a raw spec; throws SpecError on any violation.
ProblemSpec validate_spec(const RawSpec& raw);

/// A realization x_1..x_n with every x_k in {-1, 0, +1}.
class Trajectory {
public:
    explicit Trajectory(std::vector<int> values);

    int n() const { return static_cast<int>(values_.size()); }
    int x(int k) const { return values_[static_cast<size_t>(k - 1)]; }
    const std::vector<int>& values() const { return values_; }

private:
    std::vector<int> values_;
};

/// Threshold pair: stop on the first +1 at stage >= s, the first -1 at
/// stage >= s_prime, forced stop at n.
struct ThresholdPolicy {
    int s = 1;
    int s_prime = 1;

    bool operator==(const ThresholdPolicy&) const = default;
};

/// General stopping set: stop at stage k on +1 if k is in the plus set, on
/// -1 if k is in the minus set. The forced terminal stop at stage n is
/// implicit and never needs a member.
class StoppingRegion {
public:
    static StoppingRegion from_sets(int n, const std::vector<int>& plus_set,
                                    const std::vector<int>& minus_set);
    static StoppingRegion from_thresholds(int n, int s, int s_prime);
    static StoppingRegion terminal_only(int n);

    int n() const { return n_; }
    bool stops_on_plus(int k) const { return plus_[static_cast<size_t>(k)] != 0; }
    bool stops_on_minus(int k) const { return minus_[static_cast<size_t>(k)] != 0; }

    bool subset_of(const StoppingRegion& other) const;

private:
    explicit StoppingRegion(int n);

    int n_;
    std::vector<char> plus_;  // index 1..n
    std::vector<char> minus_;
};

StoppingRegion to_region(const ThresholdPolicy& policy, int n);

/// True iff stopping at stage t wins: x_t != 0 and no later observation
/// repeats x_t.
bool win(const Trajectory& traj, int t);

/// First stage k with (k, x_k) in the region, or n (forced stop).
int apply_policy(const StoppingRegion& region, const Trajectory& traj);

} // namespace laststop
