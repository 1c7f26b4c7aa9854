#pragma once

#include "rainbow/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rainbow {

using Color = std::uint8_t;

inline constexpr std::size_t max_search_colors = 8;

class ColoringError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation needs a colour on an edge that has none.
class UnassignedEdgeError : public ColoringError {
public:
    explicit UnassignedEdgeError(Edge e)
        : ColoringError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") has no colour"), edge(e)
    {
    }
    Edge edge;
};

/// Partial edge colouring with k colours plus a set of flagged edges.
/// Flagged edges are always assigned; clearing a flagged edge is an error.
class EdgeColoring {
public:
    EdgeColoring() = default;
    EdgeColoring(std::size_t n, std::size_t k);

    std::size_t n() const { return n_; }
    std::size_t k() const { return k_; }

    std::optional<Color> color(Vertex a, Vertex b) const
    {
        const Color c = colors_[a * n_ + b];
        return c == unassigned ? std::nullopt : std::optional<Color>(c);
    }
    std::optional<Color> color(Edge e) const { return color(e.u, e.v); }
    bool is_assigned(Edge e) const { return colors_[e.u * n_ + e.v] != unassigned; }

    /// Colour of an edge that must be assigned.
    Color require(Edge e) const;

    void assign(Edge e, Color c);
    void clear(Edge e);

    bool is_flagged(Edge e) const { return (flags_[e.u * words_ + e.v / word_bits] >> (e.v % word_bits)) & 1U; }
    void flag(Edge e);

    std::size_t assigned_count() const { return assigned_; }
    std::size_t flagged_count() const { return flagged_; }

    /// Assigned edges in lexicographic order.
    std::vector<Edge> assigned_edges() const;
    std::vector<Edge> flagged_edges() const;

    bool operator==(const EdgeColoring&) const = default;

private:
    static constexpr Color unassigned = 0xFF;

    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::size_t words_ = 0;
    std::size_t assigned_ = 0;
    std::size_t flagged_ = 0;
    std::vector<Color> colors_;
    std::vector<Word> flags_;
};

/// Throws unless every assigned edge of `col` is an edge of `g` and the
/// vertex counts agree.
void check_domain(const Graph& g, const EdgeColoring& col);

/// Throws UnassignedEdgeError naming the first uncoloured edge of g.
void require_fully_assigned(const Graph& g, const EdgeColoring& col);

/// Per-colour adjacency rows: row(c, v) holds the neighbours x of v with
/// colour(vx) = c. Requires a full colouring of g.
class ColorSplit {
public:
    ColorSplit(const Graph& g, const EdgeColoring& col);

    std::size_t k() const { return k_; }
    std::span<const Word> row(Color c, Vertex v) const
    {
        return {bits_.data() + (static_cast<std::size_t>(c) * n_ + v) * words_, words_};
    }

private:
    std::size_t n_, k_, words_;
    std::vector<Word> bits_;
};

EdgeColoring color_edges_random(const Graph& g, std::size_t k, Rng& rng);

/// Number of z with vz, zw in E and colour(vz) != colour(zw).
std::size_t rainbow_two_path_count(const Graph& g, const EdgeColoring& col, Vertex v, Vertex w);

/// Two-colour fast path of the same count. Valid for k == 2 only.
inline std::size_t rainbow_two_path_count(const ColorSplit& split, Vertex v, Vertex w)
{
    return popcount_and(split.row(0, v), split.row(1, w)) + popcount_and(split.row(1, v), split.row(0, w));
}

/// True iff every pair of vertices is joined by a path of at most max_len
/// edges with pairwise distinct colours. k <= 8.
bool is_rainbow_connected(const Graph& g, const EdgeColoring& col, std::size_t max_len);

/// Text format: "n m k" then m lines "u v c" for the assigned edges.
void write_coloring(std::ostream& out, const EdgeColoring& col);
EdgeColoring read_coloring(std::istream& in);
EdgeColoring load_coloring(const std::string& path);
void save_coloring(const std::string& path, const EdgeColoring& col);

} // namespace rainbow
