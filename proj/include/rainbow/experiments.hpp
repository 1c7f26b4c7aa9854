#pragma once

#include "rainbow/coloring.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/recolor.hpp"
#include "rainbow/two_round.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace rainbow {

/// A checked internal invariant failed (CLI exit code 3).
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Chernoff sizing

struct ChernoffTolerance {
    enum class Status {
        Ok,
        Trivial,     // failure_prob >= 2: any eps > 0 works
        Insufficient // the bound needs eps > 3/2, outside its range
    };
    double eps = 0.0;
    Status status = Status::Ok;
};

/// Smallest eps with 2 exp(-eps^2 n p / 3) <= failure_prob.
ChernoffTolerance chernoff_tolerance(double n, double p, double failure_prob);

/// 2 exp(-eps^2 mean / 3), capped at 1.
double chernoff_tail_bound(double mean, double rel_eps);

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.96);

/// exp(-exp(-c)/2), the limiting probability of diameter <= 2 at
/// p = sqrt((2 log n + c)/n).
double predicted_diameter2_limit(double c);

/// p = sqrt((2 log n + c) / n), clamped to [0, 1].
double corollary_probability(std::size_t n, double c);

// ---------------------------------------------------------------------------
// Hitting times

using GraphPredicate = std::function<bool(const Graph&)>;

/// Smallest t with property(snapshot(seq, t)), by binary search. The
/// property must be monotone increasing and hold on the complete graph.
std::size_t hitting_time(const ProcessSequence& seq, const GraphPredicate& property);

/// The same by scanning t = 0, 1, 2, ...
std::size_t hitting_time_linear(const ProcessSequence& seq, const GraphPredicate& property);

// ---------------------------------------------------------------------------
// Certification

enum class Verdict { CertifiedEqual, BoundOnly, ExactEqual, ExactStrictlyGreater };
std::string to_string(Verdict v);

struct CertificationRecord {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t tau_D = 0;
    std::size_t t_target = 0;    // edges with weight <= p_target
    bool subgraph_is_g2 = false; // false: tau_D came first, the snapshot itself was used
    bool m_audit_passes = false;
    bool certificate_success = false;
    std::string method; // "recolor", "oracle" or "none"
    std::string failure_reason;
    std::optional<VertexPair> failure_pair;
    std::size_t max_flag_count = 0;
    std::size_t max_flag_count_in_sub = 0;
    std::optional<std::size_t> tau_R_exact;
    Verdict verdict = Verdict::BoundOnly;

    /// Rainbow 2-colouring of snapshot(seq, tau_D) when one was found.
    std::optional<EdgeColoring> certificate;
    Graph graph; // snapshot(seq, tau_D)
};

/// Coupled pipeline: weights -> two-round build at p_target -> tau_D ->
/// recolor snapshot(tau_D) -> verify; for n <= exact_cutoff also tau_R
/// by scanning rc_at_most_2 upward from tau_D.
CertificationRecord certify_tau_coincidence(std::size_t n, TwoRoundParams params, Rng& rng,
                                            std::size_t exact_cutoff = 12);

// ---------------------------------------------------------------------------
// Experiment runners

struct ExperimentConfig {
    std::size_t n = 100;
    std::size_t trials = 1;
    std::uint64_t master_seed = 1;
    std::size_t threads = 1; // not part of the output: results are thread-count independent

    std::vector<double> c_values{0.0}; // corollary
    std::size_t certify_subsample = 0; // corollary: first trials also certified

    std::size_t k = 3;                // k-colouring
    double omega = 0.0;               // k-colouring: p = sqrt((2 log n + omega)/n)
    std::optional<double> p_override; // k-colouring: explicit p
    std::optional<Graph> fixed_graph; // k-colouring: colour this graph every trial

    TwoRoundParams two_round;     // hitting / certification
    std::size_t exact_cutoff = 12;
};

/// Runs f(trial_index, trial_seed) on `threads` workers; results are
/// returned in trial order.
template <typename R, typename F>
std::vector<R> run_trials(const ExperimentConfig& cfg, F&& f)
{
    std::vector<R> out(cfg.trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cfg.trials; i = next++)
            out[i] = f(i, derive_seed(cfg.master_seed, i));
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(cfg.threads, cfg.trials));
    if (threads == 1) {
        worker();
        return out;
    }
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                try {
                    worker();
                } catch (...) {
                    errors[t] = std::current_exception();
                    next = cfg.trials;
                }
            });
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

struct CorollaryRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double c = 0.0;
    double p = 0.0;
    std::size_t edges = 0;
    bool diameter_at_most_2 = false;
    bool certify_attempted = false;
    bool certified = false;
    std::string failure_reason;
};

struct CorollaryPoint {
    double c = 0.0;
    double p = 0.0;
    std::size_t trials = 0;
    std::size_t diameter2 = 0;
    double frequency = 0.0;
    Interval ci;
    double predicted_limit = 0.0;
    std::size_t certify_attempted = 0;
    std::size_t certified = 0;
};

struct CorollaryStats {
    std::vector<CorollaryRecord> records; // trial-major, then c order
    std::vector<CorollaryPoint> points;   // one per c value
};

/// Empirical P(diam <= 2) at p = sqrt((2 log n + c)/n) for each c, all c
/// values thresholded from the same weights per trial.
CorollaryStats run_corollary_experiment(const ExperimentConfig& cfg);

struct KColoringRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double p = 0.0;
    std::size_t edges = 0;
    bool rainbow = false;
};

struct KColoringStats {
    std::size_t k = 0;
    double p = 0.0;
    std::vector<KColoringRecord> records;
    std::size_t rainbow = 0;
    double frequency = 0.0;
    Interval ci;
};

KColoringStats run_random_k_coloring_experiment(const ExperimentConfig& cfg, std::size_t k);

struct HittingStats {
    std::vector<CertificationRecord> records;
    std::size_t tau_D_min = 0;
    std::size_t tau_D_max = 0;
    double tau_D_mean = 0.0;
    std::map<std::string, std::size_t> verdicts;
    std::map<std::string, std::size_t> failures;
    std::size_t certified = 0;   // certificate found
    std::size_t exact_trials = 0;
    std::size_t exact_equal = 0;
    std::size_t ordering_holds = 0; // tau_D <= tau_R among exact trials
    std::size_t m_audit_passes = 0;
};

HittingStats run_hitting_experiment(const ExperimentConfig& cfg);

} // namespace rainbow
