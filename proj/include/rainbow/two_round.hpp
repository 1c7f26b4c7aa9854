#pragma once

#include "rainbow/coloring.hpp"
#include "rainbow/danger.hpp"
#include "rainbow/graph.hpp"

#include <optional>
#include <vector>

namespace rainbow {

inline constexpr double default_round_eps = 0.01;

/// Parameters of the two-round construction. When the probability overrides
/// are unset, p1 = sqrt((1+eps) log n / n) and p_target = sqrt(1.99 log n / n).
struct TwoRoundParams {
    std::size_t n = 0;
    double eps = default_round_eps;
    std::optional<double> p1_override;
    std::optional<double> p_target_override;
    std::size_t d = default_danger_threshold;

    double p1() const;
    double p_target() const;
};

struct RoundProbabilities {
    double p1 = 0.0;
    double p2 = 0.0;
};

/// p2 with (1 - p_target) = (1 - p1)(1 - p2).
RoundProbabilities round_probabilities(double p1, double p_target);

/// Default p1 for (n, eps); p_target defaults to sqrt(1.99 log n / n).
double default_p1(std::size_t n, double eps);
double default_p_target(std::size_t n);

struct FixLogEntry {
    Edge edge;
    Color color = 0;
    std::optional<VertexPair> target;
};

struct TwoRoundOutput {
    Graph g1;
    Graph g2;
    EdgeColoring round1_coloring; // on g1
    EdgeColoring coloring;        // on g2, k = 2, complete
    std::vector<Edge> round2_edges;
    std::vector<FixLogEntry> fix_log;
    std::vector<VertexPair> round1_dangerous;
    RoundProbabilities probabilities;
    double p_target = 0.0;
};

class TwoRoundError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Round 1: G1 with a uniform 2-colouring. Round 2: new edges, each given
/// the colour that fixes more round-1 dangerous pairs (ties to 0), or a
/// random colour when it fixes none. With `weights`, G1 is the p1 threshold
/// graph and round 2 adds exactly the edges with p1 < weight <= p_target.
TwoRoundOutput build_two_round(const TwoRoundParams& params, Rng& rng, const ProcessSequence* weights = nullptr);

} // namespace rainbow
