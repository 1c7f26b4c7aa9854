// Independent reference implementations used only by tests. They share no
// code with the library beyond the Graph/EdgeColoring containers.
#pragma once

#include "rainbow/coloring.hpp"
#include "rainbow/graph.hpp"

#include <optional>
#include <vector>

namespace support {

using rainbow::Color;
using rainbow::Edge;
using rainbow::EdgeColoring;
using rainbow::Graph;
using rainbow::Vertex;

/// Adjacency lists and an edge-index matrix built from Graph::adjacent only.
struct Plain {
    std::size_t n = 0;
    std::vector<std::vector<Vertex>> adj;
    explicit Plain(const Graph& g);
};

/// Is there a simple path s -> t of at most max_len edges whose colours are
/// pairwise distinct? Depth-first enumeration of simple paths.
bool brute_rainbow_path(const Graph& g, const EdgeColoring& col, Vertex s, Vertex t, std::size_t max_len);

/// Every pair joined by such a path.
bool brute_rainbow_connected(const Graph& g, const EdgeColoring& col, std::size_t max_len);

/// Smallest k for which some k-colouring of all edges is rainbow connected,
/// trying every colouring (no symmetry breaking). nullopt if disconnected
/// or no k <= max_k works.
std::optional<std::size_t> brute_rc(const Graph& g, std::size_t max_k);

/// BFS distances from scratch.
std::optional<std::size_t> brute_diameter(const Graph& g);

/// One representative of every connected graph on n vertices up to
/// isomorphism, 1 <= n <= 6, found by canonical relabelling.
std::vector<Graph> connected_catalog(std::size_t n);

Graph hypercube3();
Graph star(std::size_t leaves); // centre 0

/// Colouring of g from a list aligned with g.edges().
EdgeColoring coloring_from(const Graph& g, std::size_t k, const std::vector<Color>& colors);

/// Upper 0.99 quantile of chi-square with `df` degrees of freedom
/// (Wilson-Hilferty approximation).
double chi_square_99(std::size_t df);

} // namespace support
