#pragma once

#include "rainbow/coloring.hpp"
#include "rainbow/danger.hpp"
#include "rainbow/graph.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rainbow {

struct ColorAssignment {
    Edge edge;
    std::optional<Color> previous; // nullopt: was unassigned
    Color assigned = 0;
};

/// One processed pair: the chosen 2-path v - middle - w, the edges newly
/// flagged and every colour written.
struct PassEntry {
    VertexPair pair;
    Vertex middle = 0;
    std::vector<Edge> flagged;
    std::vector<ColorAssignment> assignments;
};

struct RecolorTrace {
    std::size_t d = default_danger_threshold;
    std::vector<PassEntry> sparse_pass;
    std::vector<PassEntry> rich_pass;
    std::vector<Edge> leftover_assignments;
    /// Pairs that needed processing but were adjacent in g.
    std::vector<VertexPair> skipped_adjacent;
    std::vector<std::size_t> flag_count;        // flagged edges at each vertex
    std::vector<std::size_t> flag_count_in_sub; // flagged edges of the subgraph at each vertex

    std::size_t max_flag_count() const;
    std::size_t max_flag_count_in_sub() const;
};

enum class FailureReason {
    NoDiameter2Path,  // a sparse pair has no 2-path in g
    BothEdgesFlagged, // every 2-path of a sparse pair is fully flagged
    NoUnflaggedPath,  // every subgraph 2-path of a rich pair touches a flagged edge
    DamagedPair,      // finished colouring leaves a pair without a rainbow path
};

std::string to_string(FailureReason r);

struct RecolorFailure {
    FailureReason reason;
    VertexPair pair;
    RecolorTrace trace;
};

struct RecolorSuccess {
    EdgeColoring coloring;
    RecolorTrace trace;
};

using RecolorResult = std::variant<RecolorSuccess, RecolorFailure>;

/// Turns a 2-colouring of the spanning subgraph `sub` into a 2-colouring of
/// g in which every pair is adjacent or joined by a rainbow 2-path.
/// Sub-dangerous pairs are processed sparse-first, then rich, in
/// lexicographic order; every edge written is flagged and never rewritten.
/// Throws ColoringError when the inputs break the preconditions.
RecolorResult recolor(const Graph& g, const Graph& sub, const EdgeColoring& coloring,
                      std::size_t d = default_danger_threshold);

/// Every pair adjacent or joined by a 2-path with two different colours.
bool verify_rc2_coloring(const Graph& g, const EdgeColoring& col);

/// First pair violating verify_rc2_coloring, if any.
std::optional<VertexPair> find_rc2_violation(const Graph& g, const EdgeColoring& col);

} // namespace rainbow
