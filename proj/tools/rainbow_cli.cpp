#include "rainbow/coloring.hpp"
#include "rainbow/danger.hpp"
#include "rainbow/experiments.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/recolor.hpp"
#include "rainbow/report.hpp"
#include "rainbow/two_round.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace rainbow;

namespace {

constexpr int exit_config = 2;
constexpr int exit_invariant = 3;

struct Common {
    std::uint64_t seed = 1;
    std::size_t trials = 1;
    std::size_t n = 0;
    std::string out = "-";
    std::string format = "json";
    std::size_t threads = 1;
    bool timestamp = false;
};

void add_common(CLI::App* cmd, Common& c, bool need_n, const std::string& default_format = "json")
{
    c.format = default_format;
    cmd->add_option("--seed", c.seed, "master seed")->capture_default_str();
    cmd->add_option("--trials", c.trials, "number of trials")->capture_default_str()->check(CLI::PositiveNumber);
    auto* n = cmd->add_option("--n", c.n, "vertex count");
    if (need_n)
        n->required();
    cmd->add_option("--out", c.out, "output file, '-' for stdout")->capture_default_str();
    std::vector<std::string> formats{"json", "csv"};
    if (default_format == "text")
        formats.insert(formats.begin(), "text");
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember(formats))->capture_default_str();
    cmd->add_option("--threads", c.threads, "worker threads (results do not depend on it)")->capture_default_str();
    cmd->add_flag("--timestamp", c.timestamp, "add a wall-clock timestamp to JSON output");
}

void emit(const Common& c, const std::string& text)
{
    if (c.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f)
        throw ConfigError("cannot write " + c.out);
    f << text;
}

std::string dump(const Common& c, Json doc)
{
    if (c.timestamp) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        doc["timestamp"] = buf;
    }
    return doc.dump(2) + "\n";
}

Json simple_document(const std::string& kind, const Common& c, Json config, Json records, Json summary)
{
    config["experiment"] = kind;
    config["master_seed"] = c.seed;
    if (c.n)
        config["n"] = c.n;
    return {{"config", std::move(config)},
            {"records", std::move(records)},
            {"summary", std::move(summary)},
            {"version", output_schema_version}};
}

ExperimentConfig base_config(const Common& c)
{
    ExperimentConfig cfg;
    cfg.n = c.n;
    cfg.trials = c.trials;
    cfg.master_seed = c.seed;
    cfg.threads = std::max<std::size_t>(1, c.threads);
    return cfg;
}

struct TwoRoundOptions {
    double eps = default_round_eps;
    std::optional<double> p1;
    std::optional<double> p_target;
    std::size_t d = default_danger_threshold;
};

void add_two_round(CLI::App* cmd, TwoRoundOptions& o)
{
    cmd->add_option("--eps", o.eps, "round-1 epsilon")->capture_default_str();
    cmd->add_option("--p1", o.p1, "override round-1 probability");
    cmd->add_option("--p-target", o.p_target, "override target probability");
    cmd->add_option("--d", o.d, "danger threshold")->capture_default_str();
}

TwoRoundParams to_params(const TwoRoundOptions& o, std::size_t n)
{
    TwoRoundParams p;
    p.n = n;
    p.eps = o.eps;
    p.p1_override = o.p1;
    p.p_target_override = o.p_target;
    p.d = o.d;
    return p;
}

std::string edge_csv(const Graph& g)
{
    std::ostringstream s;
    s << "u,v\n";
    for (const Edge& e : g.edges())
        s << e.u << ',' << e.v << '\n';
    return s.str();
}

Json edges_json(const Graph& g)
{
    Json out = Json::array();
    for (const Edge& e : g.edges())
        out.push_back({e.u, e.v});
    return out;
}

std::string sibling(const std::string& out, const std::string& suffix)
{
    return (out == "-" ? std::string("rainbow") : out) + suffix;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rainbow connection laboratory: random graphs, two-round colourings, recolouring and experiments"};
    app.require_subcommand(1);

    // gen
    Common gen_c;
    double gen_p = 0.5;
    auto* gen = app.add_subcommand("gen", "sample G(n, p)");
    add_common(gen, gen_c, true, "text");
    gen->add_option("--p", gen_p, "edge probability")->required()->check(CLI::Range(0.0, 1.0));

    // process
    Common proc_c;
    auto* proc = app.add_subcommand("process", "sample a weighted random graph process");
    add_common(proc, proc_c, true, "text");

    // diam
    Common diam_c;
    std::string diam_graph;
    auto* diam = app.add_subcommand("diam", "diameter of a graph file");
    add_common(diam, diam_c, false, "text");
    diam->add_option("--graph", diam_graph, "graph file")->required();

    // rc
    Common rc_c;
    std::string rc_graph, rc_witness;
    bool rc_two = false;
    std::uint64_t rc_budget = OracleBudget{}.max_colorings;
    auto* rc = app.add_subcommand("rc", "exact rainbow connection number of a small graph");
    add_common(rc, rc_c, false, "text");
    rc->add_option("--graph", rc_graph, "graph file")->required();
    rc->add_flag("--at-most-2", rc_two, "only decide rc <= 2");
    rc->add_option("--witness", rc_witness, "witness colouring file (default: <out>.coloring)");
    rc->add_option("--budget", rc_budget, "search budget")->capture_default_str();

    // color2round
    Common c2_c;
    TwoRoundOptions c2_o;
    std::string c2_process;
    auto* c2 = app.add_subcommand("color2round", "two-round construction of a 2-coloured random graph");
    add_common(c2, c2_c, false);
    add_two_round(c2, c2_o);
    c2->add_option("--process", c2_process, "couple to this process file instead of sampling standalone");

    // recolor
    Common rec_c;
    std::string rec_graph, rec_sub, rec_col, rec_trace;
    std::size_t rec_d = default_danger_threshold;
    auto* rec = app.add_subcommand("recolor", "flag-and-recolour a subgraph colouring into a rainbow 2-colouring");
    add_common(rec, rec_c, false);
    rec->add_option("--graph", rec_graph, "graph file")->required();
    rec->add_option("--subgraph", rec_sub, "spanning subgraph file")->required();
    rec->add_option("--coloring", rec_col, "2-colouring of the subgraph")->required();
    rec->add_option("--d", rec_d, "danger threshold")->capture_default_str();
    rec->add_option("--trace", rec_trace, "write the recolouring trace as JSON");

    // certify
    Common cert_c;
    TwoRoundOptions cert_o;
    std::size_t cert_cutoff = 12;
    auto* cert = app.add_subcommand("certify", "tau_D = tau_R certification on one coupled process");
    add_common(cert, cert_c, true);
    add_two_round(cert, cert_o);
    cert->add_option("--exact-cutoff", cert_cutoff, "largest n for the exact tau_R search")->capture_default_str();

    // exp-corollary
    Common cor_c;
    TwoRoundOptions cor_o;
    std::vector<double> cor_cs{0.0};
    std::size_t cor_sub = 0;
    auto* cor = app.add_subcommand("exp-corollary", "empirical P(diam <= 2) at p = sqrt((2 log n + c)/n)");
    add_common(cor, cor_c, true);
    add_two_round(cor, cor_o);
    cor->add_option("--c", cor_cs, "c values")->capture_default_str();
    cor->add_option("--certify-subsample", cor_sub, "also certify rc = 2 on the first trials")->capture_default_str();

    // exp-hitting
    Common hit_c;
    TwoRoundOptions hit_o;
    std::size_t hit_cutoff = 12;
    std::string hit_certs;
    auto* hit = app.add_subcommand("exp-hitting", "hitting times tau_D and certification of tau_R = tau_D");
    add_common(hit, hit_c, true);
    add_two_round(hit, hit_o);
    hit->add_option("--exact-cutoff", hit_cutoff, "largest n for the exact tau_R search")->capture_default_str();
    hit->add_option("--certificates", hit_certs, "directory for per-trial graph and certificate files");

    // exp-kcoloring
    Common kc_c;
    std::size_t kc_k = 3;
    double kc_omega = 0.0;
    std::optional<double> kc_p;
    std::string kc_graph;
    auto* kc = app.add_subcommand("exp-kcoloring", "how often a uniformly random k-colouring is rainbow");
    add_common(kc, kc_c, false);
    kc->add_option("--k", kc_k, "colours")->capture_default_str();
    kc->add_option("--omega", kc_omega, "p = sqrt((2 log n + omega)/n)")->capture_default_str();
    kc->add_option("--p", kc_p, "explicit edge probability");
    kc->add_option("--graph", kc_graph, "colour this fixed graph every trial");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try {
        if (gen->parsed()) {
            Rng rng(gen_c.seed);
            const Graph g = gen_gnp(gen_c.n, gen_p, rng);
            if (gen_c.format == "text") {
                std::ostringstream s;
                write_graph(s, g);
                emit(gen_c, s.str());
            } else if (gen_c.format == "csv") {
                emit(gen_c, edge_csv(g));
            } else {
                emit(gen_c, dump(gen_c, simple_document("gen", gen_c, {{"p", gen_p}}, edges_json(g),
                                                        {{"m", g.m()}})));
            }
        } else if (proc->parsed()) {
            Rng rng(proc_c.seed);
            const ProcessSequence seq = gen_weighted_process(proc_c.n, rng);
            std::ostringstream s;
            if (proc_c.format == "text") {
                write_process(s, seq);
                emit(proc_c, s.str());
            } else if (proc_c.format == "csv") {
                s.precision(17);
                s << "u,v,weight\n";
                for (std::size_t i = 0; i < seq.size(); ++i)
                    s << seq.order()[i].u << ',' << seq.order()[i].v << ',' << seq.sorted_weight(i) << '\n';
                emit(proc_c, s.str());
            } else {
                Json rows = Json::array();
                for (std::size_t i = 0; i < seq.size(); ++i)
                    rows.push_back({{"edge", {seq.order()[i].u, seq.order()[i].v}}, {"weight", seq.sorted_weight(i)}});
                emit(proc_c, dump(proc_c, simple_document("process", proc_c, Json::object(), rows,
                                                          {{"edges", seq.size()}})));
            }
        } else if (diam->parsed()) {
            const Graph g = load_graph(diam_graph);
            const auto dv = diameter(g);
            const std::string text = dv ? std::to_string(*dv) : std::string("inf");
            if (diam_c.format == "text")
                emit(diam_c, text + "\n");
            else if (diam_c.format == "csv")
                emit(diam_c, "n,m,diameter\n" + std::to_string(g.n()) + "," + std::to_string(g.m()) + "," + text + "\n");
            else
                emit(diam_c, dump(diam_c, simple_document("diam", diam_c, {{"graph", diam_graph}}, Json::array(),
                                                          {{"n", g.n()},
                                                           {"m", g.m()},
                                                           {"diameter", dv ? Json(*dv) : Json("inf")}})));
        } else if (rc->parsed()) {
            const Graph g = load_graph(rc_graph);
            OracleBudget budget;
            budget.max_colorings = rc_budget;
            std::string value;
            std::optional<EdgeColoring> witness;
            if (rc_two) {
                auto r = rc_at_most_2(g, budget);
                value = r.kind == Rc2Result::Kind::Yes  ? "true"
                        : r.kind == Rc2Result::Kind::No ? "false"
                                                        : "budget_exceeded";
                witness = std::move(r.witness);
            } else {
                auto r = rc_exact(g, budget);
                value = r.kind == RcResult::Kind::Finite     ? std::to_string(r.value)
                        : r.kind == RcResult::Kind::Infinite ? "inf"
                                                             : "budget_exceeded";
                witness = std::move(r.witness);
            }
            std::string witness_path;
            if (witness) {
                witness_path = rc_witness.empty() ? sibling(rc_c.out, ".coloring") : rc_witness;
                save_coloring(witness_path, *witness);
            }
            if (rc_c.format == "text")
                emit(rc_c, value + "\n");
            else if (rc_c.format == "csv")
                emit(rc_c, "query,value,witness\n" + std::string(rc_two ? "rc<=2" : "rc") + "," + value + ","
                               + witness_path + "\n");
            else
                emit(rc_c, dump(rc_c, simple_document("rc", rc_c, {{"graph", rc_graph}, {"at_most_2", rc_two}},
                                                      Json::array(),
                                                      {{"value", value},
                                                       {"witness", witness ? Json(witness_path) : Json(nullptr)}})));
        } else if (c2->parsed()) {
            std::optional<ProcessSequence> seq;
            std::size_t n = c2_c.n;
            if (!c2_process.empty()) {
                std::ifstream in(c2_process);
                if (!in)
                    throw ConfigError("cannot open " + c2_process);
                seq = read_process(in);
                if (n && n != seq->n())
                    throw ConfigError("--n does not match the process file");
                n = seq->n();
            }
            if (!n)
                throw ConfigError("--n or --process is required");
            Rng rng(c2_c.seed);
            const TwoRoundOutput out = build_two_round(to_params(c2_o, n), rng, seq ? &*seq : nullptr);
            const std::string base = sibling(c2_c.out, "");
            save_graph(base + ".g1.graph", out.g1);
            save_graph(base + ".graph", out.g2);
            save_coloring(base + ".coloring", out.coloring);
            {
                std::ofstream f(base + ".fixlog.json");
                f << fix_log_json(out).dump(2) << '\n';
            }
            const MAuditReport audit = audit_property_M(out.g2, out.coloring, c2_o.d);
            Json summary = {{"p1", out.probabilities.p1},
                            {"p2", out.probabilities.p2},
                            {"p_target", out.p_target},
                            {"g1_edges", out.g1.m()},
                            {"g2_edges", out.g2.m()},
                            {"round2_edges", out.round2_edges.size()},
                            {"round1_dangerous", out.round1_dangerous.size()},
                            {"m_audit", to_json(audit)},
                            {"files",
                             {{"g1", base + ".g1.graph"},
                              {"g2", base + ".graph"},
                              {"coloring", base + ".coloring"},
                              {"fix_log", base + ".fixlog.json"}}}};
            if (c2_c.format == "csv") {
                std::ostringstream s;
                s << "n,p1,p2,p_target,g1_edges,g2_edges,round2_edges,round1_dangerous,m_audit_passes\n"
                  << n << ',' << out.probabilities.p1 << ',' << out.probabilities.p2 << ',' << out.p_target << ','
                  << out.g1.m() << ',' << out.g2.m() << ',' << out.round2_edges.size() << ','
                  << out.round1_dangerous.size() << ',' << (audit.passes() ? 1 : 0) << '\n';
                emit(c2_c, s.str());
            } else {
                c2_c.n = n;
                emit(c2_c, dump(c2_c, simple_document("color2round", c2_c, {{"eps", c2_o.eps}, {"d", c2_o.d}},
                                                      fix_log_json(out), summary)));
            }
        } else if (rec->parsed()) {
            const Graph g = load_graph(rec_graph);
            const Graph sub = load_graph(rec_sub);
            const EdgeColoring col = load_coloring(rec_col);
            auto result = recolor(g, sub, col, rec_d);
            Json summary;
            const RecolorTrace* trace = nullptr;
            if (auto* ok = std::get_if<RecolorSuccess>(&result)) {
                if (!verify_rc2_coloring(g, ok->coloring))
                    throw InvariantViolation("recolor reported success on a colouring that fails verification");
                const std::string path = sibling(rec_c.out, ".coloring");
                save_coloring(path, ok->coloring);
                trace = &ok->trace;
                summary = {{"success", true}, {"coloring", path}, {"verified", true}};
            } else {
                auto& fail = std::get<RecolorFailure>(result);
                trace = &fail.trace;
                summary = {{"success", false},
                           {"failure_reason", to_string(fail.reason)},
                           {"failure_pair", {fail.pair.u, fail.pair.v}}};
            }
            summary["max_flag_count"] = trace->max_flag_count();
            summary["max_flag_count_in_subgraph"] = trace->max_flag_count_in_sub();
            summary["m_audit"] = to_json(audit_property_M(sub, col, rec_d));
            if (!rec_trace.empty()) {
                std::ofstream f(rec_trace);
                f << to_json(*trace).dump(2) << '\n';
            }
            if (rec_c.format == "csv") {
                emit(rec_c, "success,failure_reason,max_flag_count,max_flag_count_in_subgraph\n"
                                + std::string(summary["success"].get<bool>() ? "1" : "0") + ","
                                + summary.value("failure_reason", std::string()) + ","
                                + std::to_string(trace->max_flag_count()) + ","
                                + std::to_string(trace->max_flag_count_in_sub()) + "\n");
            } else {
                emit(rec_c, dump(rec_c, simple_document("recolor", rec_c, {{"d", rec_d}}, Json::array(), summary)));
            }
        } else if (cert->parsed()) {
            Rng rng(cert_c.seed);
            CertificationRecord r = certify_tau_coincidence(cert_c.n, to_params(cert_o, cert_c.n), rng, cert_cutoff);
            r.seed = cert_c.seed;
            Json rj = to_json(r);
            if (r.certificate) {
                const std::string base = sibling(cert_c.out, "");
                save_graph(base + ".graph", r.graph);
                save_coloring(base + ".coloring", *r.certificate);
                rj["certificate"]["graph_file"] = base + ".graph";
                rj["certificate"]["coloring_file"] = base + ".coloring";
            }
            if (cert_c.format == "csv") {
                HittingStats one;
                one.records.push_back(std::move(r));
                emit(cert_c, to_csv(one));
            } else {
                emit(cert_c, dump(cert_c, simple_document("certify", cert_c,
                                                          {{"d", cert_o.d}, {"eps", cert_o.eps},
                                                           {"exact_cutoff", cert_cutoff}},
                                                          Json::array({rj}), {{"verdict", rj["verdict"]}})));
            }
        } else if (cor->parsed()) {
            ExperimentConfig cfg = base_config(cor_c);
            cfg.c_values = cor_cs;
            cfg.certify_subsample = cor_sub;
            cfg.two_round = to_params(cor_o, cor_c.n);
            const auto stats = run_corollary_experiment(cfg);
            emit(cor_c, cor_c.format == "csv" ? to_csv(stats)
                                              : dump(cor_c, experiment_document("corollary", cfg, stats)));
        } else if (hit->parsed()) {
            ExperimentConfig cfg = base_config(hit_c);
            cfg.two_round = to_params(hit_o, hit_c.n);
            cfg.exact_cutoff = hit_cutoff;
            const auto stats = run_hitting_experiment(cfg);
            if (!hit_certs.empty()) {
                std::filesystem::create_directories(hit_certs);
                for (std::size_t i = 0; i < stats.records.size(); ++i) {
                    const auto& r = stats.records[i];
                    if (!r.certificate)
                        continue;
                    const std::string base = hit_certs + "/trial" + std::to_string(i);
                    save_graph(base + ".graph", r.graph);
                    save_coloring(base + ".coloring", *r.certificate);
                }
            }
            emit(hit_c, hit_c.format == "csv" ? to_csv(stats)
                                              : dump(hit_c, experiment_document("hitting", cfg, stats)));
        } else if (kc->parsed()) {
            ExperimentConfig cfg = base_config(kc_c);
            cfg.omega = kc_omega;
            cfg.p_override = kc_p;
            if (!kc_graph.empty()) {
                cfg.fixed_graph = load_graph(kc_graph);
                cfg.n = cfg.fixed_graph->n();
            } else if (!kc_c.n) {
                throw ConfigError("--n or --graph is required");
            }
            const auto stats = run_random_k_coloring_experiment(cfg, kc_k);
            emit(kc_c, kc_c.format == "csv" ? to_csv(stats)
                                            : dump(kc_c, experiment_document("kcoloring", cfg, stats)));
        }
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return exit_invariant;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::logic_error& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return exit_invariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
    return 0;
}
