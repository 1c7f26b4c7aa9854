#pragma once

#include "rainbow/coloring.hpp"
#include "rainbow/graph.hpp"

#include <cstddef>
#include <vector>

namespace rainbow {

inline constexpr std::size_t default_danger_threshold = 66;

/// Symmetric n x n membership matrix over unordered pairs.
class PairSet {
public:
    PairSet() = default;
    explicit PairSet(std::size_t n) : n_(n), words_(words_for(n)), bits_(n * words_for(n), 0) {}

    std::size_t n() const { return n_; }
    bool contains(Vertex a, Vertex b) const { return (bits_[a * words_ + b / word_bits] >> (b % word_bits)) & 1U; }
    bool contains(VertexPair p) const { return contains(p.u, p.v); }
    void insert(VertexPair p);
    std::span<const Word> row(Vertex v) const { return {bits_.data() + v * words_, words_}; }

private:
    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<Word> bits_;
};

struct PairStat {
    VertexPair pair;
    std::size_t two_path_count = 0;
    std::size_t rainbow_two_path_count = 0;
    bool is_dangerous = false;
    bool is_sparse = false;
};

/// Classification of every non-adjacent pair, in lexicographic order.
struct PairReport {
    std::size_t d = default_danger_threshold;
    std::vector<PairStat> pairs;

    std::vector<VertexPair> dangerous_pairs() const;
    std::vector<VertexPair> sparse_pairs() const;
    PairSet dangerous_set(std::size_t n) const;
};

PairReport classify_pairs(const Graph& g, const EdgeColoring& col, std::size_t d = default_danger_threshold);

struct VertexCount {
    Vertex vertex = 0;
    std::size_t count = 0;
};

struct ConditionVerdict {
    bool passes = true;
    std::size_t bound = 0;
    std::size_t max_count = 0;
    std::vector<VertexCount> violations;
};

/// Audit of one (graph, 2-colouring) candidate for property M.
struct MAuditReport {
    std::size_t d = default_danger_threshold;
    std::vector<std::size_t> dangerous_pair_membership;
    std::vector<std::size_t> adjacent_to_both_of_dangerous;
    std::vector<std::size_t> sparse_pair_membership;
    ConditionVerdict condition_i;   // <= 3 dangerous pairs per vertex
    ConditionVerdict condition_ii;  // adjacent to both ends of <= 15 dangerous pairs
    ConditionVerdict condition_iii; // <= 1 sparsely connected pair per vertex

    bool passes() const { return condition_i.passes && condition_ii.passes && condition_iii.passes; }
};

inline constexpr std::size_t m_dangerous_bound = 3;
inline constexpr std::size_t m_adjacent_bound = 15;
inline constexpr std::size_t m_sparse_bound = 1;

MAuditReport audit_property_M(const Graph& g, const EdgeColoring& col, std::size_t d = default_danger_threshold);

/// A missing edge whose addition in `required_color` adds a rainbow 2-path
/// to `target`.
struct Fix {
    Edge missing_edge;
    Color required_color = 0;
    VertexPair target;
    bool exclusive = false;

    auto operator<=>(const Fix&) const = default;
};

/// All fixes for a non-adjacent pair: (x, w) for x in Γ(v) and (v, y) for
/// y in Γ(w), each needing the colour opposite to the path's existing edge.
std::vector<Fix> find_fixes(const Graph& g, const EdgeColoring& col, VertexPair pair);

/// The fixes of `pair` that serve no dangerous pair other than `pair`.
std::vector<Fix> find_exclusive_fixes(const Graph& g, const EdgeColoring& col, VertexPair pair,
                                      const PairSet& dangerous);

/// Dangerous pairs (other than `except`) for which the non-edge `e` is a fix.
std::vector<VertexPair> pairs_served_by(const Graph& g, Edge e, const PairSet& dangerous, VertexPair except);

/// Finite-n check of the structural statements about the round-1 graph:
/// the degree window, the per-vertex dangerous-pair bound and the
/// exclusive-fix lower bound. Violations are data, not errors.
struct LemmaAudit {
    std::size_t n = 0;
    double eps = 0.0;
    std::size_t d = default_danger_threshold;

    double degree_low = 0.0;
    double degree_high = 0.0;
    std::size_t min_degree = 0;
    std::size_t max_degree = 0;
    std::size_t degree_violations = 0;
    bool degree_window_passes = true;

    double dangerous_bound = 0.0;
    std::size_t max_dangerous_per_vertex = 0;
    std::size_t dangerous_violations = 0;
    bool dangerous_per_vertex_passes = true;

    double exclusive_bound = 0.0;
    std::size_t pairs_checked = 0;
    std::size_t min_exclusive_fixes = 0;
    std::size_t exclusive_violations = 0;
    bool exclusive_fixes_passes = true;
};

LemmaAudit audit_whp_lemmas(const Graph& g1, const EdgeColoring& col, double eps,
                            std::size_t d = default_danger_threshold);

/// Number of exclusive fixes of every non-adjacent pair, aligned with
/// classify_pairs(g, col, d).pairs.
std::vector<std::size_t> exclusive_fix_counts(const Graph& g, const PairReport& report);

} // namespace rainbow
