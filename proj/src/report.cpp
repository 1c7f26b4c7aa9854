#include "rainbow/report.hpp"

#include <sstream>

namespace rainbow {

namespace {

Json pair_json(VertexPair p)
{
    return Json::array({p.u, p.v});
}

Json condition_json(const ConditionVerdict& c)
{
    Json violations = Json::array();
    for (const VertexCount& v : c.violations)
        violations.push_back({{"vertex", v.vertex}, {"count", v.count}});
    return {{"passes", c.passes}, {"bound", c.bound}, {"max_count", c.max_count}, {"violations", violations}};
}

Json pass_json(const std::vector<PassEntry>& pass)
{
    Json out = Json::array();
    for (const PassEntry& e : pass) {
        Json flagged = Json::array();
        for (const Edge& f : e.flagged)
            flagged.push_back(pair_json(f));
        Json assigned = Json::array();
        for (const ColorAssignment& a : e.assignments)
            assigned.push_back({{"edge", pair_json(a.edge)},
                                {"previous", a.previous ? Json(*a.previous) : Json(nullptr)},
                                {"color", a.assigned}});
        out.push_back({{"pair", pair_json(e.pair)}, {"middle", e.middle}, {"flagged", flagged},
                       {"assignments", assigned}});
    }
    return out;
}

Json config_json(const std::string& kind, const ExperimentConfig& cfg)
{
    Json c = {{"experiment", kind}, {"n", cfg.n}, {"trials", cfg.trials}, {"master_seed", cfg.master_seed},
              {"seed_rule", "derive_seed(master, i) = mix64(mix64(master) ^ mix64(i + 1))"}};
    return c;
}

Json two_round_json(const TwoRoundParams& p)
{
    Json j = {{"eps", p.eps}, {"d", p.d}};
    if (p.p1_override)
        j["p1"] = *p.p1_override;
    if (p.p_target_override)
        j["p_target"] = *p.p_target_override;
    return j;
}

Json interval_json(const Interval& i)
{
    return Json::array({i.low, i.high});
}

std::string csv_bool(bool b)
{
    return b ? "1" : "0";
}

} // namespace

Json to_json(const MAuditReport& r)
{
    return {{"d", r.d},
            {"passes", r.passes()},
            {"condition_i", condition_json(r.condition_i)},
            {"condition_ii", condition_json(r.condition_ii)},
            {"condition_iii", condition_json(r.condition_iii)}};
}

Json to_json(const LemmaAudit& a)
{
    return {{"n", a.n},
            {"eps", a.eps},
            {"d", a.d},
            {"degree_window",
             {{"passes", a.degree_window_passes},
              {"low", a.degree_low},
              {"high", a.degree_high},
              {"min_degree", a.min_degree},
              {"max_degree", a.max_degree},
              {"violations", a.degree_violations}}},
            {"dangerous_per_vertex",
             {{"passes", a.dangerous_per_vertex_passes},
              {"bound", a.dangerous_bound},
              {"max", a.max_dangerous_per_vertex},
              {"violations", a.dangerous_violations}}},
            {"exclusive_fixes",
             {{"passes", a.exclusive_fixes_passes},
              {"bound", a.exclusive_bound},
              {"pairs_checked", a.pairs_checked},
              {"min", a.min_exclusive_fixes},
              {"violations", a.exclusive_violations}}}};
}

Json to_json(const RecolorTrace& t)
{
    Json leftover = Json::array();
    for (const Edge& e : t.leftover_assignments)
        leftover.push_back(pair_json(e));
    Json skipped = Json::array();
    for (const VertexPair& p : t.skipped_adjacent)
        skipped.push_back(pair_json(p));
    return {{"d", t.d},
            {"sparse_pass", pass_json(t.sparse_pass)},
            {"rich_pass", pass_json(t.rich_pass)},
            {"leftover_assignments", leftover},
            {"skipped_adjacent", skipped},
            {"flag_count", t.flag_count},
            {"flag_count_in_subgraph", t.flag_count_in_sub},
            {"max_flag_count", t.max_flag_count()},
            {"max_flag_count_in_subgraph", t.max_flag_count_in_sub()}};
}

Json to_json(const CertificationRecord& r)
{
    return {{"seed", r.seed},
            {"n", r.n},
            {"d", r.d},
            {"tau_D", r.tau_D},
            {"t_target", r.t_target},
            {"subgraph_is_g2", r.subgraph_is_g2},
            {"m_audit_passes", r.m_audit_passes},
            {"certificate", {{"success", r.certificate_success}, {"method", r.method},
                             {"failure_reason", r.failure_reason.empty() ? Json(nullptr) : Json(r.failure_reason)},
                             {"failure_pair", r.failure_pair ? pair_json(*r.failure_pair) : Json(nullptr)}}},
            {"max_flag_count", r.max_flag_count},
            {"max_flag_count_in_subgraph", r.max_flag_count_in_sub},
            {"tau_R_exact", r.tau_R_exact ? Json(*r.tau_R_exact) : Json(nullptr)},
            {"verdict", to_string(r.verdict)}};
}

Json fix_log_json(const TwoRoundOutput& out)
{
    Json log = Json::array();
    for (const FixLogEntry& e : out.fix_log)
        log.push_back({{"edge", pair_json(e.edge)},
                       {"color", e.color},
                       {"target", e.target ? pair_json(*e.target) : Json(nullptr)}});
    return log;
}

Json experiment_document(const std::string& kind, const ExperimentConfig& cfg, const CorollaryStats& s)
{
    Json config = config_json(kind, cfg);
    config["c_values"] = cfg.c_values;
    config["certify_subsample"] = cfg.certify_subsample;
    config["two_round"] = two_round_json(cfg.two_round);

    Json records = Json::array();
    for (const auto& r : s.records)
        records.push_back({{"trial", r.trial},
                           {"seed", r.seed},
                           {"c", r.c},
                           {"p", r.p},
                           {"edges", r.edges},
                           {"diameter_at_most_2", r.diameter_at_most_2},
                           {"certify_attempted", r.certify_attempted},
                           {"certified", r.certified},
                           {"failure_reason", r.failure_reason.empty() ? Json(nullptr) : Json(r.failure_reason)}});
    Json points = Json::array();
    for (const auto& p : s.points)
        points.push_back({{"c", p.c},
                          {"p", p.p},
                          {"trials", p.trials},
                          {"diameter_at_most_2", p.diameter2},
                          {"frequency", p.frequency},
                          {"ci95", interval_json(p.ci)},
                          {"predicted_limit", p.predicted_limit},
                          {"certify_attempted", p.certify_attempted},
                          {"certified", p.certified},
                          {"certified_rate", p.certify_attempted
                                                 ? Json(static_cast<double>(p.certified)
                                                        / static_cast<double>(p.certify_attempted))
                                                 : Json(nullptr)}});
    return {{"config", config}, {"records", records}, {"summary", {{"points", points}}},
            {"version", output_schema_version}};
}

Json experiment_document(const std::string& kind, const ExperimentConfig& cfg, const KColoringStats& s)
{
    Json config = config_json(kind, cfg);
    config["k"] = s.k;
    config["p"] = s.p;
    config["omega"] = cfg.omega;
    Json records = Json::array();
    for (const auto& r : s.records)
        records.push_back(
            {{"trial", r.trial}, {"seed", r.seed}, {"p", r.p}, {"edges", r.edges}, {"rainbow", r.rainbow}});
    return {{"config", config},
            {"records", records},
            {"summary", {{"rainbow", s.rainbow}, {"frequency", s.frequency}, {"ci95", interval_json(s.ci)}}},
            {"version", output_schema_version}};
}

Json experiment_document(const std::string& kind, const ExperimentConfig& cfg, const HittingStats& s)
{
    Json config = config_json(kind, cfg);
    config["two_round"] = two_round_json(cfg.two_round);
    config["exact_cutoff"] = cfg.exact_cutoff;
    Json records = Json::array();
    for (const auto& r : s.records)
        records.push_back(to_json(r));
    const auto total = static_cast<double>(s.records.size());
    Json summary = {{"tau_D", {{"min", s.tau_D_min}, {"max", s.tau_D_max}, {"mean", s.tau_D_mean}}},
                    {"verdicts", s.verdicts},
                    {"failures", s.failures},
                    {"certified", s.certified},
                    {"certified_fraction", static_cast<double>(s.certified) / total},
                    {"certified_equal_fraction",
                     static_cast<double>(s.verdicts.count("CertifiedEqual") ? s.verdicts.at("CertifiedEqual") : 0)
                         / total},
                    {"exact_trials", s.exact_trials},
                    {"exact_equal", s.exact_equal},
                    {"exact_equal_fraction",
                     s.exact_trials ? Json(static_cast<double>(s.exact_equal) / static_cast<double>(s.exact_trials))
                                    : Json(nullptr)},
                    {"ordering_holds", s.ordering_holds},
                    {"m_audit_passes", s.m_audit_passes}};
    return {{"config", config}, {"records", records}, {"summary", summary}, {"version", output_schema_version}};
}

std::string to_csv(const CorollaryStats& s)
{
    std::ostringstream out;
    out.precision(17);
    out << "trial,seed,c,p,edges,diameter_at_most_2,certify_attempted,certified,failure_reason\n";
    for (const auto& r : s.records)
        out << r.trial << ',' << r.seed << ',' << r.c << ',' << r.p << ',' << r.edges << ','
            << csv_bool(r.diameter_at_most_2) << ',' << csv_bool(r.certify_attempted) << ','
            << csv_bool(r.certified) << ',' << r.failure_reason << '\n';
    return out.str();
}

std::string to_csv(const KColoringStats& s)
{
    std::ostringstream out;
    out.precision(17);
    out << "trial,seed,p,edges,rainbow\n";
    for (const auto& r : s.records)
        out << r.trial << ',' << r.seed << ',' << r.p << ',' << r.edges << ',' << csv_bool(r.rainbow) << '\n';
    return out.str();
}

std::string to_csv(const HittingStats& s)
{
    std::ostringstream out;
    out << "seed,n,d,tau_D,t_target,subgraph_is_g2,m_audit_passes,certificate_success,method,failure_reason,"
           "max_flag_count,max_flag_count_in_subgraph,tau_R_exact,verdict\n";
    for (const auto& r : s.records)
        out << r.seed << ',' << r.n << ',' << r.d << ',' << r.tau_D << ',' << r.t_target << ','
            << csv_bool(r.subgraph_is_g2) << ',' << csv_bool(r.m_audit_passes) << ','
            << csv_bool(r.certificate_success) << ',' << r.method << ',' << r.failure_reason << ','
            << r.max_flag_count << ',' << r.max_flag_count_in_sub << ','
            << (r.tau_R_exact ? std::to_string(*r.tau_R_exact) : std::string()) << ',' << to_string(r.verdict)
            << '\n';
    return out.str();
}

} // namespace rainbow
