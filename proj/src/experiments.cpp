#include "rainbow/experiments.hpp"

#include "rainbow/danger.hpp"
#include "rainbow/oracle.hpp"

#include <cmath>

namespace rainbow {

ChernoffTolerance chernoff_tolerance(double n, double p, double failure_prob)
{
    if (!(n > 0.0))
        throw ConfigError("chernoff_tolerance needs n > 0");
    if (!(p > 0.0 && p < 1.0))
        throw ConfigError("chernoff_tolerance needs 0 < p < 1, got " + std::to_string(p));
    if (!(failure_prob > 0.0))
        throw ConfigError("chernoff_tolerance needs failure_prob > 0");
    ChernoffTolerance out;
    if (failure_prob >= 2.0) {
        out.status = ChernoffTolerance::Status::Trivial;
        return out;
    }
    out.eps = std::sqrt(3.0 * std::log(2.0 / failure_prob) / (n * p));
    if (out.eps > 1.5)
        out.status = ChernoffTolerance::Status::Insufficient;
    return out;
}

double chernoff_tail_bound(double mean, double rel_eps)
{
    return std::min(1.0, 2.0 * std::exp(-rel_eps * rel_eps * mean / 3.0));
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z)
{
    if (trials == 0)
        return {0.0, 1.0};
    const auto nt = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / nt;
    const double z2 = z * z;
    const double centre = (phat + z2 / (2 * nt)) / (1 + z2 / nt);
    const double half = z * std::sqrt(phat * (1 - phat) / nt + z2 / (4 * nt * nt)) / (1 + z2 / nt);
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double predicted_diameter2_limit(double c)
{
    return std::exp(-std::exp(-c) / 2.0);
}

double corollary_probability(std::size_t n, double c)
{
    const auto nd = static_cast<double>(n);
    const double p2 = (2.0 * std::log(nd) + c) / nd;
    return std::clamp(p2 > 0.0 ? std::sqrt(p2) : 0.0, 0.0, 1.0);
}

std::size_t hitting_time(const ProcessSequence& seq, const GraphPredicate& property)
{
    if (!property(snapshot(seq, seq.size())))
        throw ConfigError("property does not hold on the complete graph");
    std::size_t lo = 0, hi = seq.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (property(snapshot(seq, mid)))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

std::size_t hitting_time_linear(const ProcessSequence& seq, const GraphPredicate& property)
{
    for (std::size_t t = 0; t <= seq.size(); ++t)
        if (property(snapshot(seq, t)))
            return t;
    throw ConfigError("property does not hold on the complete graph");
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::CertifiedEqual:
        return "CertifiedEqual";
    case Verdict::BoundOnly:
        return "BoundOnly";
    case Verdict::ExactEqual:
        return "ExactEqual";
    case Verdict::ExactStrictlyGreater:
        return "ExactStrictlyGreater";
    }
    return "Unknown";
}

namespace {

EdgeColoring restrict_coloring(const Graph& g, const EdgeColoring& col)
{
    EdgeColoring out(g.n(), col.k());
    for (const Edge& e : g.edges())
        out.assign(e, col.require(e));
    return out;
}

} // namespace

CertificationRecord certify_tau_coincidence(std::size_t n, TwoRoundParams params, Rng& rng, std::size_t exact_cutoff)
{
    params.n = n;
    CertificationRecord rec;
    rec.n = n;
    rec.d = params.d;

    const ProcessSequence seq = gen_weighted_process(n, rng);
    const TwoRoundOutput built = build_two_round(params, rng, &seq);
    rec.tau_D = hitting_time(seq, has_diameter_at_most_2);
    rec.t_target = seq.count_at_most(built.p_target);
    rec.graph = snapshot(seq, rec.tau_D);

    // The spanning subgraph must sit inside snapshot(tau_D). When diameter 2
    // arrives before p_target the snapshot is its own subgraph.
    rec.subgraph_is_g2 = rec.tau_D >= rec.t_target;
    const Graph& sub = rec.subgraph_is_g2 ? built.g2 : rec.graph;
    const EdgeColoring sub_coloring = rec.subgraph_is_g2 ? built.coloring : restrict_coloring(rec.graph, built.coloring);

    rec.m_audit_passes = audit_property_M(sub, sub_coloring, params.d).passes();
    auto result = recolor(rec.graph, sub, sub_coloring, params.d);
    if (auto* ok = std::get_if<RecolorSuccess>(&result)) {
        if (!verify_rc2_coloring(rec.graph, ok->coloring))
            throw InvariantViolation("recolor reported success on a colouring that fails verification");
        rec.certificate_success = true;
        rec.method = "recolor";
        rec.max_flag_count = ok->trace.max_flag_count();
        rec.max_flag_count_in_sub = ok->trace.max_flag_count_in_sub();
        rec.certificate = std::move(ok->coloring);
    } else {
        auto& fail = std::get<RecolorFailure>(result);
        rec.method = "none";
        rec.failure_reason = to_string(fail.reason);
        rec.failure_pair = fail.pair;
        rec.max_flag_count = fail.trace.max_flag_count();
        rec.max_flag_count_in_sub = fail.trace.max_flag_count_in_sub();
    }

    if (n <= exact_cutoff) {
        for (std::size_t t = rec.tau_D; t <= seq.size(); ++t) {
            const auto r2 = rc_at_most_2(snapshot(seq, t));
            if (r2.kind == Rc2Result::Kind::BudgetExceeded)
                break;
            if (r2.yes()) {
                rec.tau_R_exact = t;
                if (t == rec.tau_D && !rec.certificate_success) {
                    rec.certificate_success = true;
                    rec.method = "oracle";
                    rec.certificate = r2.witness;
                }
                break;
            }
        }
    }

    if (rec.tau_R_exact) {
        if (*rec.tau_R_exact < rec.tau_D)
            throw InvariantViolation("tau_R < tau_D");
        if (rec.method == "recolor" && *rec.tau_R_exact != rec.tau_D)
            throw InvariantViolation("recolor certificate at tau_D but oracle tau_R > tau_D");
        rec.verdict = *rec.tau_R_exact == rec.tau_D ? Verdict::ExactEqual : Verdict::ExactStrictlyGreater;
    } else {
        rec.verdict = rec.certificate_success ? Verdict::CertifiedEqual : Verdict::BoundOnly;
    }
    return rec;
}

CorollaryStats run_corollary_experiment(const ExperimentConfig& cfg)
{
    if (cfg.trials == 0)
        throw ConfigError("trials must be at least 1");
    if (cfg.c_values.empty())
        throw ConfigError("corollary experiment needs at least one c value");
    for (double c : cfg.c_values)
        if (!std::isfinite(c))
            throw ConfigError("c must be finite");

    using TrialRows = std::vector<CorollaryRecord>;
    auto rows = run_trials<TrialRows>(cfg, [&](std::size_t trial, std::uint64_t seed) {
        Rng rng(seed);
        const ProcessSequence seq = gen_weighted_process(cfg.n, rng);
        std::optional<TwoRoundOutput> built;
        TrialRows out;
        for (double c : cfg.c_values) {
            CorollaryRecord r;
            r.trial = trial;
            r.seed = seed;
            r.c = c;
            r.p = corollary_probability(cfg.n, c);
            const Graph g = threshold_graph(seq, r.p);
            r.edges = g.m();
            r.diameter_at_most_2 = has_diameter_at_most_2(g);
            if (trial < cfg.certify_subsample && r.diameter_at_most_2) {
                r.certify_attempted = true;
                if (!built) {
                    TwoRoundParams params = cfg.two_round;
                    params.n = cfg.n;
                    built = build_two_round(params, rng, &seq);
                }
                const bool nested = built->p_target <= r.p;
                const Graph& sub = nested ? built->g2 : g;
                const EdgeColoring col = nested ? built->coloring : restrict_coloring(g, built->coloring);
                auto res = recolor(g, sub, col, cfg.two_round.d);
                if (auto* ok = std::get_if<RecolorSuccess>(&res)) {
                    if (!verify_rc2_coloring(g, ok->coloring))
                        throw InvariantViolation("recolor reported success on a colouring that fails verification");
                    r.certified = true;
                } else {
                    r.failure_reason = to_string(std::get<RecolorFailure>(res).reason);
                }
            }
            out.push_back(std::move(r));
        }
        return out;
    });

    CorollaryStats stats;
    for (std::size_t j = 0; j < cfg.c_values.size(); ++j) {
        CorollaryPoint pt;
        pt.c = cfg.c_values[j];
        pt.p = corollary_probability(cfg.n, pt.c);
        pt.trials = cfg.trials;
        pt.predicted_limit = predicted_diameter2_limit(pt.c);
        for (const auto& trial : rows) {
            const auto& r = trial[j];
            pt.diameter2 += r.diameter_at_most_2 ? 1 : 0;
            pt.certify_attempted += r.certify_attempted ? 1 : 0;
            pt.certified += r.certified ? 1 : 0;
        }
        pt.frequency = static_cast<double>(pt.diameter2) / static_cast<double>(pt.trials);
        pt.ci = wilson_interval(pt.diameter2, pt.trials);
        stats.points.push_back(pt);
    }
    for (auto& trial : rows)
        for (auto& r : trial)
            stats.records.push_back(std::move(r));
    return stats;
}

KColoringStats run_random_k_coloring_experiment(const ExperimentConfig& cfg, std::size_t k)
{
    if (cfg.trials == 0)
        throw ConfigError("trials must be at least 1");
    if (k == 0 || k > max_search_colors)
        throw ConfigError("k must be in 1.." + std::to_string(max_search_colors));
    KColoringStats stats;
    stats.k = k;
    stats.p = cfg.p_override ? *cfg.p_override : corollary_probability(cfg.n, cfg.omega);
    if (!(stats.p >= 0.0 && stats.p <= 1.0))
        throw ConfigError("p must lie in [0, 1]");

    stats.records = run_trials<KColoringRecord>(cfg, [&](std::size_t trial, std::uint64_t seed) {
        Rng rng(seed);
        KColoringRecord r;
        r.trial = trial;
        r.seed = seed;
        r.p = stats.p;
        const Graph g = cfg.fixed_graph ? *cfg.fixed_graph : gen_gnp(cfg.n, stats.p, rng);
        r.edges = g.m();
        const EdgeColoring col = color_edges_random(g, k, rng);
        r.rainbow = is_rainbow_connected(g, col, k);
        return r;
    });
    for (const auto& r : stats.records)
        stats.rainbow += r.rainbow ? 1 : 0;
    stats.frequency = static_cast<double>(stats.rainbow) / static_cast<double>(cfg.trials);
    stats.ci = wilson_interval(stats.rainbow, cfg.trials);
    return stats;
}

HittingStats run_hitting_experiment(const ExperimentConfig& cfg)
{
    if (cfg.trials == 0)
        throw ConfigError("trials must be at least 1");
    HittingStats stats;
    stats.records = run_trials<CertificationRecord>(cfg, [&](std::size_t, std::uint64_t seed) {
        Rng rng(seed);
        auto rec = certify_tau_coincidence(cfg.n, cfg.two_round, rng, cfg.exact_cutoff);
        rec.seed = seed;
        return rec;
    });

    stats.tau_D_min = SIZE_MAX;
    double total = 0.0;
    for (const auto& r : stats.records) {
        stats.tau_D_min = std::min(stats.tau_D_min, r.tau_D);
        stats.tau_D_max = std::max(stats.tau_D_max, r.tau_D);
        total += static_cast<double>(r.tau_D);
        ++stats.verdicts[to_string(r.verdict)];
        if (!r.failure_reason.empty())
            ++stats.failures[r.failure_reason];
        stats.certified += r.certificate_success ? 1 : 0;
        stats.m_audit_passes += r.m_audit_passes ? 1 : 0;
        if (r.tau_R_exact) {
            ++stats.exact_trials;
            stats.exact_equal += *r.tau_R_exact == r.tau_D ? 1 : 0;
            stats.ordering_holds += r.tau_D <= *r.tau_R_exact ? 1 : 0;
        }
    }
    stats.tau_D_mean = total / static_cast<double>(stats.records.size());
    return stats;
}

} // namespace rainbow
