#include "rainbow/two_round.hpp"

#include <array>
#include <cmath>

namespace rainbow {

double default_p1(std::size_t n, double eps)
{
    const auto nd = static_cast<double>(n);
    return std::sqrt((1.0 + eps) * std::log(nd) / nd);
}

double default_p_target(std::size_t n)
{
    const auto nd = static_cast<double>(n);
    return std::sqrt(1.99 * std::log(nd) / nd);
}

double TwoRoundParams::p1() const
{
    return p1_override ? *p1_override : default_p1(n, eps);
}

double TwoRoundParams::p_target() const
{
    return p_target_override ? *p_target_override : default_p_target(n);
}

RoundProbabilities round_probabilities(double p1, double p_target)
{
    if (!(p1 >= 0.0 && p_target <= 1.0))
        throw TwoRoundError("round probabilities need 0 <= p1 and p_target <= 1");
    if (p1 > p_target)
        throw TwoRoundError("p1 = " + std::to_string(p1) + " exceeds p_target = " + std::to_string(p_target));
    if (p1 >= 1.0)
        return {p1, 0.0};
    return {p1, 1.0 - (1.0 - p_target) / (1.0 - p1)};
}

namespace {

struct ColorChoice {
    Color color = 0;
    std::optional<VertexPair> target;
};

/// Colour for a new edge: the one fixing more frozen-dangerous pairs.
std::optional<ColorChoice> choose_fix_color(const Graph& g1, const EdgeColoring& col1, const PairSet& dangerous,
                                            Edge e)
{
    std::array<std::size_t, 2> count{0, 0};
    std::array<std::optional<VertexPair>, 2> first;
    for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        auto ra = g1.row(a);
        auto db = dangerous.row(b);
        for (std::size_t i = 0; i < ra.size(); ++i) {
            Word both = ra[i] & db[i];
            while (both) {
                const auto u = static_cast<Vertex>(i * word_bits + static_cast<std::size_t>(std::countr_zero(both)));
                both &= both - 1;
                const Color need = static_cast<Color>(1 - *col1.color(u, a));
                ++count[need];
                const VertexPair p(u, b);
                if (!first[need] || p < *first[need])
                    first[need] = p;
            }
        }
    }
    if (count[0] == 0 && count[1] == 0)
        return std::nullopt;
    const Color c = count[1] > count[0] ? 1 : 0;
    return ColorChoice{c, first[c]};
}

} // namespace

TwoRoundOutput build_two_round(const TwoRoundParams& params, Rng& rng, const ProcessSequence* weights)
{
    const std::size_t n = params.n;
    if (n < 2)
        throw TwoRoundError("two-round construction needs n >= 2, got " + std::to_string(n));
    const double p1 = params.p1();
    const double pt = params.p_target();
    if (!(p1 >= 0.0 && pt < 1.0 && p1 <= pt))
        throw TwoRoundError("need 0 <= p1 <= p_target < 1, got p1 = " + std::to_string(p1)
                            + ", p_target = " + std::to_string(pt));
    if (weights && weights->n() != n)
        throw TwoRoundError("weights are for n = " + std::to_string(weights->n()) + ", params have n = "
                            + std::to_string(n));

    TwoRoundOutput out;
    out.probabilities = round_probabilities(p1, pt);
    out.p_target = pt;

    out.g1 = weights ? threshold_graph(*weights, p1) : gen_gnp(n, p1, rng);
    out.round1_coloring = color_edges_random(out.g1, 2, rng);
    const PairReport report = classify_pairs(out.g1, out.round1_coloring, params.d);
    out.round1_dangerous = report.dangerous_pairs();
    const PairSet dangerous = report.dangerous_set(n);

    GraphBuilder g2(out.g1);
    out.coloring = out.round1_coloring;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            if (out.g1.adjacent(u, v))
                continue;
            bool add = false;
            if (weights) {
                const double w = weights->weight(u, v);
                add = w > p1 && w <= pt;
            } else {
                add = uniform01(rng) < out.probabilities.p2;
            }
            if (!add)
                continue;
            const Edge e(u, v);
            g2.add_edge(u, v);
            out.round2_edges.push_back(e);
            if (auto choice = choose_fix_color(out.g1, out.round1_coloring, dangerous, e)) {
                out.coloring.assign(e, choice->color);
                out.fix_log.push_back({e, choice->color, choice->target});
            } else {
                const auto c = static_cast<Color>(uniform_below(rng, 2));
                out.coloring.assign(e, c);
                out.fix_log.push_back({e, c, std::nullopt});
            }
        }
    out.g2 = std::move(g2).build();
    return out;
}

} // namespace rainbow
