#pragma once

#include "rainbow/rng.hpp"

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rainbow {

using Vertex = std::uint32_t;
using Word = std::uint64_t;

inline constexpr std::size_t word_bits = 64;

constexpr std::size_t words_for(std::size_t bits)
{
    return (bits + word_bits - 1) / word_bits;
}

/// Unordered vertex pair stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    constexpr Edge() = default;
    constexpr Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    constexpr auto operator<=>(const Edge&) const = default;
};

using VertexPair = Edge;

/// Position of {u, v} (u < v) in lexicographic order of all pairs on n vertices.
constexpr std::size_t pair_index(std::size_t n, Vertex u, Vertex v)
{
    if (u > v)
        std::swap(u, v);
    return static_cast<std::size_t>(u) * (2 * n - u - 1) / 2 + (v - u - 1);
}

constexpr std::size_t pair_count(std::size_t n)
{
    return n < 2 ? 0 : n * (n - 1) / 2;
}

template <typename F>
void for_each_bit(std::span<const Word> words, F&& f)
{
    for (std::size_t i = 0; i < words.size(); ++i) {
        Word w = words[i];
        while (w) {
            const auto bit = static_cast<std::size_t>(std::countr_zero(w));
            f(static_cast<Vertex>(i * word_bits + bit));
            w &= w - 1;
        }
    }
}

inline std::size_t popcount_and(std::span<const Word> a, std::span<const Word> b)
{
    std::size_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    return total;
}

inline bool intersects(std::span<const Word> a, std::span<const Word> b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & b[i])
            return true;
    return false;
}

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Simple undirected graph on vertices 0..n-1, adjacency held as n rows of
/// n-bit sets in one contiguous buffer. Immutable once built.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : n_(n), words_(words_for(n)), bits_(n * words_for(n), 0) {}

    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }
    std::size_t words_per_row() const { return words_; }

    std::span<const Word> row(Vertex v) const { return {bits_.data() + v * words_, words_}; }

    bool adjacent(Vertex a, Vertex b) const
    {
        return (bits_[a * words_ + b / word_bits] >> (b % word_bits)) & 1U;
    }

    std::size_t degree(Vertex v) const;
    std::vector<Vertex> neighbors(Vertex v) const;

    /// All edges in lexicographic order.
    std::vector<Edge> edges() const;

    bool operator==(const Graph& other) const = default;

private:
    friend class GraphBuilder;

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::size_t m_ = 0;
    std::vector<Word> bits_;
};

/// Mutable staging area; `build()` hands over an immutable Graph.
class GraphBuilder {
public:
    explicit GraphBuilder(std::size_t n) : g_(n) {}
    explicit GraphBuilder(Graph g) : g_(std::move(g)) {}

    std::size_t n() const { return g_.n_; }
    bool adjacent(Vertex a, Vertex b) const { return g_.adjacent(a, b); }

    /// Returns false when the edge was already present. Throws on a
    /// self-loop or an endpoint outside 0..n-1.
    bool add_edge(Vertex a, Vertex b);

    Graph build() &&;

private:
    void set_bit(Vertex a, Vertex b) { g_.bits_[a * g_.words_ + b / word_bits] |= Word{1} << (b % word_bits); }

    Graph g_;
};

Graph make_graph(std::size_t n, std::span<const Edge> edges);
Graph make_graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges);

Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);

/// True iff every edge of `sub` is an edge of `super` (same vertex count).
bool is_subgraph(const Graph& sub, const Graph& super);

/// Erdős–Rényi G(n, p): each of the C(n,2) pairs, in lexicographic order,
/// is kept when a fresh uniform draw is below p.
Graph gen_gnp(std::size_t n, double p, Rng& rng);

/// The coupled random graph process: every potential edge carries an
/// i.i.d. uniform weight, edges enter in ascending weight order.
class ProcessSequence {
public:
    ProcessSequence() = default;
    /// Weights indexed by pair_index; must be pairwise distinct.
    ProcessSequence(std::size_t n, std::vector<double> weights);

    std::size_t n() const { return n_; }
    std::size_t size() const { return order_.size(); }
    double weight(Vertex u, Vertex v) const { return weights_[pair_index(n_, u, v)]; }
    std::span<const double> weights() const { return weights_; }
    std::span<const Edge> order() const { return order_; }
    /// Weight of order()[i].
    double sorted_weight(std::size_t i) const { return weights_[pair_index(n_, order_[i].u, order_[i].v)]; }

    /// Number of edges with weight <= p.
    std::size_t count_at_most(double p) const;

    bool operator==(const ProcessSequence&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> weights_;
    std::vector<Edge> order_;
};

ProcessSequence gen_weighted_process(std::size_t n, Rng& rng);

/// Graph on the first t edges of the order. Throws when t > C(n,2).
Graph snapshot(const ProcessSequence& seq, std::size_t t);

/// Edges with weight <= p; equal to snapshot(seq, seq.count_at_most(p)).
Graph threshold_graph(const ProcessSequence& seq, double p);

/// Max shortest-path distance; nullopt when disconnected. 0 for n <= 1.
std::optional<std::size_t> diameter(const Graph& g);

/// Word-scan test for diam(g) <= 2: every pair adjacent or sharing a neighbour.
bool has_diameter_at_most_2(const Graph& g);

/// |Γ(v) ∩ Γ(w)|, the number of 2-paths joining v and w.
std::size_t common_neighbors(const Graph& g, Vertex v, Vertex w);

// Text formats. Graph: "n m" then m lines "u v" (u < v). Process: one
// "u v weight" line per potential edge, ascending weight, 17 significant digits.
void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);
void write_process(std::ostream& out, const ProcessSequence& seq);
ProcessSequence read_process(std::istream& in);

Graph load_graph(const std::string& path);
void save_graph(const std::string& path, const Graph& g);

} // namespace rainbow
