#include "support.hpp"

#include "rainbow/danger.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/recolor.hpp"
#include "rainbow/report.hpp"
#include "rainbow/two_round.hpp"

#include <doctest.h>

#include <set>

using namespace rainbow;
using support::coloring_from;

namespace {

/// Replays the trace: no edge is written after it was flagged, and every
/// flag is recorded once.
void check_write_once(const RecolorTrace& trace, const EdgeColoring& result)
{
    std::set<Edge> flagged;
    for (const auto* pass : {&trace.sparse_pass, &trace.rich_pass})
        for (const PassEntry& e : *pass) {
            for (const ColorAssignment& a : e.assignments)
                CHECK(flagged.count(a.edge) == 0);
            for (const Edge& f : e.flagged)
                CHECK(flagged.insert(f).second);
        }
    for (const Edge& e : trace.leftover_assignments)
        CHECK(flagged.count(e) == 0);
    CHECK(flagged.size() == result.flagged_count());
    for (const Edge& e : result.flagged_edges())
        CHECK(flagged.count(e) == 1);
}

/// Pairs with a rainbow 2-path in the subgraph above the threshold keep one in g.
void check_non_damage(const Graph& g, const Graph& sub, const EdgeColoring& col, const EdgeColoring& out,
                      std::size_t d)
{
    for (const PairStat& s : classify_pairs(sub, col, d).pairs) {
        if (s.is_dangerous || g.adjacent(s.pair.u, s.pair.v))
            continue;
        CHECK(rainbow_two_path_count(g, out, s.pair.u, s.pair.v) >= 1);
    }
}

} // namespace

TEST_CASE("verify_rc2_coloring examples")
{
    Rng rng(1);
    const Graph k3 = complete_graph(3);
    CHECK(verify_rc2_coloring(k3, color_edges_random(k3, 2, rng)));
    const Graph c4 = cycle_graph(4); // edges (0,1) (0,3) (1,2) (2,3)
    CHECK(verify_rc2_coloring(c4, coloring_from(c4, 2, {0, 1, 1, 0})));
    CHECK_FALSE(verify_rc2_coloring(c4, coloring_from(c4, 2, {0, 0, 0, 0})));
    CHECK(find_rc2_violation(c4, coloring_from(c4, 2, {0, 0, 0, 0})) == VertexPair(0, 2));
    CHECK_THROWS_AS(verify_rc2_coloring(k3, color_edges_random(k3, 3, rng)), ColoringError);
}

TEST_CASE("verify_rc2_coloring agrees with brute-force path search")
{
    Rng rng(2);
    for (int i = 0; i < 500; ++i) {
        const Graph g = gen_gnp(2 + uniform_below(rng, 8), 0.3 + 0.6 * uniform01(rng), rng);
        const EdgeColoring col = color_edges_random(g, 2, rng);
        bool ok = true;
        for (Vertex u = 0; u < g.n(); ++u)
            for (Vertex v = u + 1; v < g.n(); ++v)
                ok = ok && support::brute_rainbow_path(g, col, u, v, 2);
        CHECK(verify_rc2_coloring(g, col) == ok);
    }
}

TEST_CASE("complete graph: success, no flags, colouring unchanged")
{
    Rng rng(3);
    for (std::size_t n : {2u, 5u, 30u}) {
        const Graph k = complete_graph(n);
        const EdgeColoring col = color_edges_random(k, 2, rng);
        const auto res = recolor(k, k, col);
        REQUIRE(std::holds_alternative<RecolorSuccess>(res));
        const auto& ok = std::get<RecolorSuccess>(res);
        CHECK(ok.coloring.flagged_count() == 0);
        for (const Edge& e : k.edges())
            CHECK(ok.coloring.color(e) == col.color(e));
        CHECK(ok.trace.max_flag_count() == 0);
    }
}

TEST_CASE("all 16 colourings of C4 are repaired")
{
    const Graph c4 = cycle_graph(4);
    for (int code = 0; code < 16; ++code) {
        std::vector<Color> colors;
        for (int b = 0; b < 4; ++b)
            colors.push_back(static_cast<Color>(code >> b & 1));
        const EdgeColoring col = coloring_from(c4, 2, colors);
        const auto res = recolor(c4, c4, col);
        REQUIRE(std::holds_alternative<RecolorSuccess>(res));
        const auto& ok = std::get<RecolorSuccess>(res);
        CHECK(verify_rc2_coloring(c4, ok.coloring));
        check_write_once(ok.trace, ok.coloring);
        CHECK(ok.trace.sparse_pass.size() == 2);
        CHECK(ok.trace.sparse_pass[0].pair == VertexPair(0, 2));
        CHECK(ok.trace.sparse_pass[0].middle == 1);
    }
}

TEST_CASE("P4 fails with NoDiameter2Path on the endpoint pair")
{
    const Graph p4 = path_graph(4);
    for (int code = 0; code < 8; ++code) {
        const EdgeColoring col
            = coloring_from(p4, 2, {static_cast<Color>(code & 1), static_cast<Color>(code >> 1 & 1),
                                    static_cast<Color>(code >> 2 & 1)});
        const auto res = recolor(p4, p4, col);
        REQUIRE(std::holds_alternative<RecolorFailure>(res));
        const auto& fail = std::get<RecolorFailure>(res);
        CHECK(fail.reason == FailureReason::NoDiameter2Path);
        CHECK(fail.pair == VertexPair(0, 3));
    }
}

TEST_CASE("precondition violations are rejected")
{
    Rng rng(4);
    const Graph c4 = cycle_graph(4);
    const Graph p4 = path_graph(4);
    const EdgeColoring col = color_edges_random(c4, 2, rng);
    CHECK_THROWS_AS(recolor(p4, c4, col), ColoringError); // not a subgraph
    CHECK_THROWS_AS(recolor(c4, c4, color_edges_random(c4, 3, rng)), ColoringError);
    CHECK_THROWS_AS(recolor(c4, c4, EdgeColoring(4, 2)), UnassignedEdgeError);
    EdgeColoring extra = color_edges_random(p4, 2, rng);
    extra.assign({0, 3}, 0); // coloured edge outside the subgraph
    CHECK_THROWS_AS(recolor(c4, p4, extra), ColoringError);
}

TEST_CASE("sparse pass uses g-edges outside the subgraph")
{
    // Subgraph: empty on 3 vertices; g = P3. The pair (0,2) is sparse and
    // is joined in g through 1, so both g-edges get coloured and flagged.
    const Graph g = path_graph(3);
    const Graph sub(3);
    const auto res = recolor(g, sub, EdgeColoring(3, 2));
    REQUIRE(std::holds_alternative<RecolorSuccess>(res));
    const auto& ok = std::get<RecolorSuccess>(res);
    CHECK(ok.coloring.color({0, 1}) == Color{0});
    CHECK(ok.coloring.color({1, 2}) == Color{1});
    CHECK(ok.trace.max_flag_count() == 2);
    CHECK(ok.trace.max_flag_count_in_sub() == 0);
}

TEST_CASE("both path edges flagged: BothEdgesFlagged when no rainbow path remains")
{
    // Star with centre 0 and leaves 1,2,3: the three leaf pairs are sparse.
    // (1,2) flags 01, 02; (1,3) flags 03 opposite to 01; (2,3) then sees
    // both edges flagged with equal colours.
    const Graph st = support::star(3);
    const auto res = recolor(st, st, coloring_from(st, 2, {0, 0, 0}));
    REQUIRE(std::holds_alternative<RecolorFailure>(res));
    CHECK(std::get<RecolorFailure>(res).reason == FailureReason::BothEdgesFlagged);
    CHECK(std::get<RecolorFailure>(res).pair == VertexPair(2, 3));
}

TEST_CASE("rich pass needs an unflagged subgraph path")
{
    // K_{2,3} plus nothing else: pair (0,1) has three 2-paths via 2,3,4.
    // With d = 1, pairs among {2,3,4} (two 2-paths each) are rich, and
    // after a few of them all paths are flagged.
    const Graph g = make_graph(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
    const EdgeColoring col = coloring_from(g, 2, {0, 0, 0, 0, 0, 0});
    const auto res = recolor(g, g, col, 1);
    if (auto* fail = std::get_if<RecolorFailure>(&res)) {
        CHECK(fail->reason == FailureReason::NoUnflaggedPath);
    } else {
        CHECK(verify_rc2_coloring(g, std::get<RecolorSuccess>(res).coloring));
    }
}

TEST_CASE("soundness, write-once and non-damage on random inputs")
{
    Rng rng(5);
    std::size_t successes = 0;
    for (int i = 0; i < 400; ++i) {
        const std::size_t n = 4 + uniform_below(rng, 40);
        const Graph g = gen_gnp(n, 0.3 + 0.6 * uniform01(rng), rng);
        // Random spanning subgraph of g.
        GraphBuilder b(n);
        for (const Edge& e : g.edges())
            if (uniform01(rng) < 0.7)
                b.add_edge(e.u, e.v);
        const Graph sub = std::move(b).build();
        const EdgeColoring col = color_edges_random(sub, 2, rng);
        const std::size_t d = uniform_below(rng, 6);
        const auto res = recolor(g, sub, col, d);
        if (auto* ok = std::get_if<RecolorSuccess>(&res)) {
            ++successes;
            CHECK(verify_rc2_coloring(g, ok->coloring));
            check_write_once(ok->trace, ok->coloring);
            check_non_damage(g, sub, col, ok->coloring, d);
        } else {
            const auto& fail = std::get<RecolorFailure>(res);
            if (fail.reason == FailureReason::NoDiameter2Path)
                CHECK_FALSE(has_diameter_at_most_2(g));
        }
    }
    CHECK(successes > 50);
}

TEST_CASE("conditional totality and flag budget at d = 66 on dense graphs")
{
    Rng rng(6);
    std::size_t audited = 0, with_dangerous = 0;
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = 200;
        const Graph g = gen_gnp(n, 0.925 + 0.02 * uniform01(rng), rng);
        GraphBuilder b(n);
        for (const Edge& e : g.edges())
            if (uniform01(rng) < 0.995)
                b.add_edge(e.u, e.v);
        const Graph sub = std::move(b).build();
        const EdgeColoring col = color_edges_random(sub, 2, rng);
        const MAuditReport audit = audit_property_M(sub, col, 66);
        if (!audit.passes() || !has_diameter_at_most_2(g))
            continue;
        ++audited;
        with_dangerous += audit.condition_i.max_count > 0 ? 1 : 0;
        const auto res = recolor(g, sub, col, 66);
        REQUIRE(std::holds_alternative<RecolorSuccess>(res));
        const auto& ok = std::get<RecolorSuccess>(res);
        CHECK(verify_rc2_coloring(g, ok.coloring));
        CHECK(ok.trace.max_flag_count_in_sub() <= 33);
    }
    MESSAGE(audited << " passing audits, " << with_dangerous << " with dangerous pairs");
    CHECK(audited > 10);
    CHECK(with_dangerous > 0);
}

TEST_CASE("successful recolouring implies rc <= 2 by the oracle")
{
    Rng rng(7);
    std::size_t checked = 0;
    for (int i = 0; i < 300; ++i) {
        const std::size_t n = 4 + uniform_below(rng, 8); // 4..11
        const Graph g = gen_gnp(n, 0.4 + 0.5 * uniform01(rng), rng);
        GraphBuilder b(n);
        for (const Edge& e : g.edges())
            if (uniform01(rng) < 0.8)
                b.add_edge(e.u, e.v);
        const Graph sub = std::move(b).build();
        const auto res = recolor(g, sub, color_edges_random(sub, 2, rng), uniform_below(rng, 4));
        if (!std::holds_alternative<RecolorSuccess>(res))
            continue;
        ++checked;
        const auto r2 = rc_at_most_2(g);
        CHECK(r2.kind == Rc2Result::Kind::Yes);
    }
    CHECK(checked > 50);
}

TEST_CASE("trace JSON carries both passes and flag counts")
{
    const Graph c4 = cycle_graph(4);
    const auto res = recolor(c4, c4, coloring_from(c4, 2, {0, 0, 0, 0}));
    const Json j = to_json(std::get<RecolorSuccess>(res).trace);
    CHECK(j["sparse_pass"].size() == 2);
    CHECK(j["rich_pass"].empty());
    CHECK(j["sparse_pass"][0]["pair"] == Json::array({0, 2}));
    CHECK(j["max_flag_count"] == 2);
    CHECK(j.contains("flag_count_in_subgraph"));
}
