// laststop — threshold policies and win probabilities for stopping on the
// last +1 or -1 of a ternary observation stream.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "laststop/biased.hpp"
#include "laststop/montecarlo.hpp"
#include "laststop/oracle.hpp"
#include "laststop/problem.hpp"
#include "laststop/spec_json.hpp"
#include "laststop/timevarying.hpp"
#include "laststop/xstrategy.hpp"

namespace {

using namespace laststop;

// Exit codes: 0 success, 2 invalid spec/flags, 3 malformed stream input,
// 4 resource guard.
constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitStream = 3;
constexpr int kExitGuard = 4;

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<double> parse_csv_doubles(const std::string& text) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        try {
            size_t used = 0;
            const double v = std::stod(item, &used);
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
                ++used;
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw SpecError("cannot parse '" + item + "' as a number");
        }
        pos = comma + 1;
    }
    return out;
}

int env_threads() {
    const char* raw = std::getenv("LASTSTOP_THREADS");
    if (!raw) return 1;
    const int v = std::atoi(raw);
    return v >= 1 ? v : 1;
}

// Spec source shared by the spec-consuming subcommands: inline flags or a
// spec file, never both.
struct SpecOptions {
    std::string kind;
    int n = 0;
    double p = 0.0;
    double p_prime = 0.0;
    std::string p_seq, plus_seq, minus_seq;
    std::string spec_file;

    CLI::Option* kind_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* p_opt = nullptr;
    CLI::Option* p_prime_opt = nullptr;
    CLI::Option* p_seq_opt = nullptr;
    CLI::Option* plus_seq_opt = nullptr;
    CLI::Option* minus_seq_opt = nullptr;
    CLI::Option* file_opt = nullptr;

    void attach(CLI::App* cmd) {
        kind_opt = cmd->add_option("--kind", kind, "weber|biased|timevarying|general");
        n_opt = cmd->add_option("--n", n, "horizon (number of observations)");
        p_opt = cmd->add_option("--p", p, "P(X = +1)");
        p_prime_opt = cmd->add_option("--p-prime", p_prime, "P(X = -1)");
        p_seq_opt = cmd->add_option("--p-seq", p_seq,
                                    "comma-separated per-stage p_k (timevarying)");
        plus_seq_opt = cmd->add_option("--plus-seq", plus_seq,
                                       "comma-separated per-stage P(X_k = +1) (general)");
        minus_seq_opt = cmd->add_option("--minus-seq", minus_seq,
                                        "comma-separated per-stage P(X_k = -1) (general)");
        file_opt = cmd->add_option("--spec-file", spec_file, "JSON problem-spec file");
    }

    ProblemSpec build() const {
        const bool any_inline = kind_opt->count() || n_opt->count() || p_opt->count() ||
                                p_prime_opt->count() || p_seq_opt->count() ||
                                plus_seq_opt->count() || minus_seq_opt->count();
        if (file_opt->count()) {
            if (any_inline)
                throw SpecError("--spec-file cannot be combined with inline spec flags");
            return load_spec_file(spec_file);
        }
        if (!kind_opt->count())
            throw SpecError("either --kind or --spec-file is required");
        RawSpec raw;
        raw.kind = kind;
        if (n_opt->count()) raw.n = n;
        if (p_opt->count()) raw.p = p;
        if (p_prime_opt->count()) raw.p_prime = p_prime;
        if (p_seq_opt->count()) raw.p_seq = parse_csv_doubles(p_seq);
        if (plus_seq_opt->count()) raw.plus_seq = parse_csv_doubles(plus_seq);
        if (minus_seq_opt->count()) raw.minus_seq = parse_csv_doubles(minus_seq);
        return validate_spec(raw);
    }
};

struct Solution {
    int s = 1;
    int s_prime = 1;
    double value = 0.0;
    std::string method;
};

bool all_zero(const std::vector<double>& xs) {
    for (double x : xs)
        if (x != 0.0) return false;
    return true;
}

Solution run_solver(const ProblemSpec& spec, const std::string& requested) {
    std::string method = requested;
    if (method == "auto") {
        switch (spec.kind()) {
            case Kind::weber: method = "weber"; break;
            case Kind::biased: method = "walk"; break;
            case Kind::timevarying: method = "lambda"; break;
            case Kind::general: method = "dp"; break;
        }
    }

    auto reject = [&]() {
        throw SpecError("method '" + method + "' is not valid for kind " +
                        kind_name(spec.kind()));
    };
    switch (spec.kind()) {
        case Kind::weber:
            if (method != "weber" && method != "walk" && method != "bisection" &&
                method != "dp" && method != "lambda")
                reject();
            break;
        case Kind::biased:
            if (method == "odds" && spec.p_prime() != 0.0) reject();
            if (method != "walk" && method != "bisection" && method != "dp" &&
                method != "odds")
                reject();
            break;
        case Kind::timevarying:
            if (method != "lambda" && method != "dp") reject();
            break;
        case Kind::general:
            if (method == "odds" && !all_zero(spec.minus_seq())) reject();
            if (method != "dp" && method != "odds") reject();
            break;
    }

    Solution out;
    if (method == "weber") {
        const WeberSolution w = weber_threshold(spec.n(), spec.p());
        out = {w.s, w.s, w.value, "weber"};
    } else if (method == "walk" || method == "bisection") {
        const SolveReport r = method == "walk"
                                  ? solve_walk(spec.n(), spec.p(), spec.p_prime())
                                  : solve_bisection(spec.n(), spec.p(), spec.p_prime());
        out = {r.thresholds.s, r.thresholds.s_prime, r.value, method_name(r.method)};
    } else if (method == "lambda") {
        const TimeVaryingSolution r = solve_time_varying(spec.plus_seq());
        out = {r.k_star, r.k_star, r.value, "lambda"};
    } else if (method == "odds") {
        const SolveReport r = odds_threshold(spec.plus_seq());
        out = {r.thresholds.s, r.thresholds.s_prime, r.value, "odds"};
    } else {  // dp
        const DPResult r = solve_backward(spec);
        out = {r.policy.s, r.policy.s_prime, r.value, "dp"};
    }
    return out;
}

void print_solution(const Solution& sol, const std::string& format) {
    if (format == "json") {
        std::cout << "{\"s\": " << sol.s << ", \"s_prime\": " << sol.s_prime
                  << ", \"value\": " << fmt12(sol.value) << ", \"method\": \"" << sol.method
                  << "\"}\n";
    } else {
        std::cout << "s=" << sol.s << " s_prime=" << sol.s_prime
                  << " value=" << fmt12(sol.value) << " method=" << sol.method << "\n";
    }
}

int cmd_solve(const SpecOptions& opts, const std::string& method, const std::string& format) {
    const ProblemSpec spec = opts.build();
    print_solution(run_solver(spec, method), format);
    return kExitOk;
}

int cmd_evaluate(const SpecOptions& opts, int s, int s_prime, const std::string& format) {
    const ProblemSpec spec = opts.build();
    const StoppingRegion region = StoppingRegion::from_thresholds(spec.n(), s, s_prime);
    const double value = enumerate_policy_value(spec, region);
    if (format == "json")
        std::cout << "{\"s\": " << s << ", \"s_prime\": " << s_prime
                  << ", \"value\": " << fmt12(value) << "}\n";
    else
        std::cout << "value=" << fmt12(value) << "\n";
    return kExitOk;
}

int cmd_simulate(const SpecOptions& opts, int s, int s_prime, long long trials,
                 std::uint64_t seed, const std::string& format) {
    const ProblemSpec spec = opts.build();
    const StoppingRegion region = StoppingRegion::from_thresholds(spec.n(), s, s_prime);
    const SimulationReport r = estimate(spec, region, trials, seed, env_threads());
    if (format == "json")
        std::cout << "{\"estimate\": " << fmt12(r.estimate) << ", \"stderr\": "
                  << fmt12(r.std_error) << ", \"trials\": " << r.trials << ", \"seed\": " << r.seed
                  << ", \"wins\": " << r.wins << "}\n";
    else
        std::cout << "estimate=" << fmt12(r.estimate) << " stderr=" << fmt12(r.std_error)
                  << " trials=" << r.trials << " seed=" << r.seed << " wins=" << r.wins << "\n";
    return kExitOk;
}

int cmd_sweep(const SpecOptions& opts, bool modes) {
    const ProblemSpec spec = opts.build();
    if (!spec.constant())
        throw SpecError("sweep requires constant probabilities (kind biased or weber)");
    const int n = spec.n();
    const double p = spec.p();
    const double p_prime = spec.p_prime();
    const WGrid grid = w_recurrence(n, p, p_prime);

    std::cout << "k_plus,k_minus,w\n";
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= j; ++k)
            std::cout << j << "," << k << "," << fmt12(grid.w(j, k)) << "\n";

    if (modes) {
        if (p == 0.0) throw SpecError("--modes needs p > 0");
        // full-rectangle evaluations; entries with j < k come from the
        // sign-exchanged closed form
        auto w_any = [&](int j, int k) { return w_closed_form(n, p, p_prime, j, k); };
        std::cout << "mode,k,argmax\n";
        for (int k = 1; k <= n; ++k) {  // mode of j -> w(j,k), fixed minus threshold
            int best = 1;
            for (int j = 2; j <= n; ++j)
                if (w_any(j, k) > w_any(best, k)) best = j;
            std::cout << "plus," << k << "," << best << "\n";
        }
        for (int j = 1; j <= n; ++j) {  // mode of k -> w(j,k), fixed plus threshold
            int best = 1;
            for (int k = 2; k <= n; ++k)
                if (w_any(j, k) > w_any(j, best)) best = k;
            std::cout << "minus," << j << "," << best << "\n";
        }
    }
    return kExitOk;
}

int cmd_approx(int n, double p, const std::string& format) {
    const XStrategyReport r = optimal_x(n, p);
    if (format == "json") {
        std::cout << "{\"n\": " << r.n << ", \"p\": " << fmt12(r.p) << ", \"beta\": ";
        if (r.degenerate)
            std::cout << "null";
        else
            std::cout << fmt12(r.beta);
        std::cout << ", \"x_star\": " << fmt12(r.x_star) << ", \"value\": " << fmt12(r.value)
                  << ", \"interior\": " << (r.interior ? "true" : "false") << "}\n";
    } else {
        std::cout << "beta=" << fmt12(r.beta) << " x_star=" << fmt12(r.x_star)
                  << " value=" << fmt12(r.value) << " interior=" << (r.interior ? "true" : "false")
                  << (r.degenerate ? " degenerate=true" : "") << "\n";
    }
    return kExitOk;
}

int cmd_advise(const SpecOptions& opts, const std::string& method) {
    const ProblemSpec spec = opts.build();
    const Solution sol = run_solver(spec, method);
    const int n = spec.n();

    std::string line;
    int stage = 0;
    while (stage < n && std::getline(std::cin, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        int x = 0;
        if (line == "+1" || line == "1")
            x = 1;
        else if (line == "-1")
            x = -1;
        else if (line == "0")
            x = 0;
        else {
            std::cerr << "malformed observation line: '" << line << "' (expected +1, -1, or 0)\n";
            return kExitStream;
        }
        ++stage;
        if ((x == 1 && stage >= sol.s) || (x == -1 && stage >= sol.s_prime) || stage == n) {
            std::cout << "STOP" << std::endl;
            return kExitOk;
        }
        std::cout << "CONTINUE" << std::endl;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal stopping on the last +1 or -1 of a ternary observation stream"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string method = "auto";
    int s = 1, s_prime = 1;
    long long trials = 1000000;
    std::uint64_t seed = 1;
    bool modes = false;
    int approx_n = 2;
    double approx_p = 0.5;

    const std::vector<std::string> methods{"auto",  "walk", "bisection", "dp",
                                           "odds", "lambda", "weber"};

    CLI::App* solve = app.add_subcommand("solve", "compute the optimal thresholds and value");
    SpecOptions solve_spec;
    solve_spec.attach(solve);
    solve->add_option("--method", method, "auto|walk|bisection|dp|odds|lambda|weber")
        ->check(CLI::IsMember(methods));
    solve->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

    CLI::App* evaluate =
        app.add_subcommand("evaluate", "exact value of a threshold policy by 3^n enumeration");
    SpecOptions eval_spec;
    eval_spec.attach(evaluate);
    evaluate->add_option("--s", s, "plus threshold")->required();
    evaluate->add_option("--s-prime", s_prime, "minus threshold")->required();
    evaluate->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

    CLI::App* simulate =
        app.add_subcommand("simulate", "Monte Carlo estimate of a threshold policy's value");
    SpecOptions sim_spec;
    sim_spec.attach(simulate);
    simulate->add_option("--s", s, "plus threshold")->required();
    simulate->add_option("--s-prime", s_prime, "minus threshold")->required();
    simulate->add_option("--trials", trials, "number of trials");
    simulate->add_option("--seed", seed, "PRNG seed");
    simulate->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

    CLI::App* sweep = app.add_subcommand("sweep", "CSV of w(k_plus, k_minus) over the whole grid");
    SpecOptions sweep_spec;
    sweep_spec.attach(sweep);
    sweep->add_flag("--modes", modes, "append per-threshold argmax rows");

    CLI::App* approx =
        app.add_subcommand("approx", "continuous-arrival approximation (optimal cut and value)");
    approx->add_option("--n", approx_n, "horizon")->required();
    approx->add_option("--p", approx_p, "P(X = +1) = P(X = -1)")->required();
    approx->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

    CLI::App* advise =
        app.add_subcommand("advise", "read observations from stdin, print STOP/CONTINUE");
    SpecOptions advise_spec;
    advise_spec.attach(advise);
    advise->add_option("--method", method, "solver used for the thresholds")
        ->check(CLI::IsMember(methods));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_spec, method, format);
        if (evaluate->parsed()) return cmd_evaluate(eval_spec, s, s_prime, format);
        if (simulate->parsed()) return cmd_simulate(sim_spec, s, s_prime, trials, seed, format);
        if (sweep->parsed()) return cmd_sweep(sweep_spec, modes);
        if (approx->parsed()) return cmd_approx(approx_n, approx_p, format);
        if (advise->parsed()) return cmd_advise(advise_spec, method);
    } catch (const GuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
