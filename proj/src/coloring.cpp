#include "rainbow/coloring.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

namespace rainbow {

EdgeColoring::EdgeColoring(std::size_t n, std::size_t k)
    : n_(n), k_(k), words_(words_for(n)), colors_(n * n, unassigned), flags_(n * words_for(n), 0)
{
    if (k == 0 || k >= unassigned)
        throw ColoringError("colour count must be in 1..254, got " + std::to_string(k));
}

Color EdgeColoring::require(Edge e) const
{
    const auto c = color(e);
    if (!c)
        throw UnassignedEdgeError(e);
    return *c;
}

void EdgeColoring::assign(Edge e, Color c)
{
    if (e.u == e.v || e.v >= n_)
        throw ColoringError("cannot colour (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    if (c >= k_)
        throw ColoringError("colour " + std::to_string(c) + " outside 0.." + std::to_string(k_ - 1));
    Color& a = colors_[e.u * n_ + e.v];
    if (a == unassigned)
        ++assigned_;
    a = c;
    colors_[e.v * n_ + e.u] = c;
}

void EdgeColoring::clear(Edge e)
{
    if (is_flagged(e))
        throw ColoringError("cannot clear flagged edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    Color& a = colors_[e.u * n_ + e.v];
    if (a != unassigned)
        --assigned_;
    a = unassigned;
    colors_[e.v * n_ + e.u] = unassigned;
}

void EdgeColoring::flag(Edge e)
{
    if (!is_assigned(e))
        throw UnassignedEdgeError(e);
    if (is_flagged(e))
        return;
    flags_[e.u * words_ + e.v / word_bits] |= Word{1} << (e.v % word_bits);
    flags_[e.v * words_ + e.u / word_bits] |= Word{1} << (e.u % word_bits);
    ++flagged_;
}

std::vector<Edge> EdgeColoring::assigned_edges() const
{
    std::vector<Edge> out;
    out.reserve(assigned_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = u + 1; v < n_; ++v)
            if (colors_[u * n_ + v] != unassigned)
                out.emplace_back(u, v);
    return out;
}

std::vector<Edge> EdgeColoring::flagged_edges() const
{
    std::vector<Edge> out;
    for (Vertex u = 0; u < n_; ++u)
        for_each_bit(std::span<const Word>(flags_.data() + u * words_, words_), [&](Vertex v) {
            if (u < v)
                out.emplace_back(u, v);
        });
    return out;
}

void check_domain(const Graph& g, const EdgeColoring& col)
{
    if (g.n() != col.n())
        throw ColoringError("colouring has " + std::to_string(col.n()) + " vertices, graph has "
                            + std::to_string(g.n()));
    for (const Edge& e : col.assigned_edges())
        if (!g.adjacent(e.u, e.v))
            throw ColoringError("coloured pair (" + std::to_string(e.u) + "," + std::to_string(e.v)
                                + ") is not an edge");
}

void require_fully_assigned(const Graph& g, const EdgeColoring& col)
{
    if (g.n() != col.n())
        throw ColoringError("colouring has " + std::to_string(col.n()) + " vertices, graph has "
                            + std::to_string(g.n()));
    for (Vertex u = 0; u < g.n(); ++u)
        for_each_bit(g.row(u), [&](Vertex v) {
            if (u < v && !col.is_assigned({u, v}))
                throw UnassignedEdgeError({u, v});
        });
}

ColorSplit::ColorSplit(const Graph& g, const EdgeColoring& col)
    : n_(g.n()), k_(col.k()), words_(g.words_per_row()), bits_(col.k() * g.n() * g.words_per_row(), 0)
{
    require_fully_assigned(g, col);
    for (Vertex u = 0; u < n_; ++u)
        for_each_bit(g.row(u), [&](Vertex v) {
            const Color c = *col.color(u, v);
            bits_[(static_cast<std::size_t>(c) * n_ + u) * words_ + v / word_bits] |= Word{1} << (v % word_bits);
        });
}

EdgeColoring color_edges_random(const Graph& g, std::size_t k, Rng& rng)
{
    EdgeColoring col(g.n(), k);
    for (const Edge& e : g.edges())
        col.assign(e, static_cast<Color>(uniform_below(rng, k)));
    return col;
}

std::size_t rainbow_two_path_count(const Graph& g, const EdgeColoring& col, Vertex v, Vertex w)
{
    if (v == w)
        throw ColoringError("rainbow_two_path_count needs distinct vertices");
    std::size_t count = 0;
    auto rv = g.row(v);
    auto rw = g.row(w);
    for (std::size_t i = 0; i < rv.size(); ++i) {
        Word both = rv[i] & rw[i];
        while (both) {
            const auto z = static_cast<Vertex>(i * word_bits + static_cast<std::size_t>(std::countr_zero(both)));
            both &= both - 1;
            if (col.require({v, z}) != col.require({z, w}))
                ++count;
        }
    }
    return count;
}

bool is_rainbow_connected(const Graph& g, const EdgeColoring& col, std::size_t max_len)
{
    const std::size_t k = col.k();
    if (k > max_search_colors)
        throw ColoringError("rainbow search supports at most " + std::to_string(max_search_colors)
                            + " colours, got " + std::to_string(k));
    if (max_len == 0)
        throw ColoringError("max_len must be at least 1");
    const ColorSplit split(g, col);
    const std::size_t n = g.n();
    const std::size_t words = g.words_per_row();
    // A rainbow path uses each colour at most once.
    const std::size_t len = std::min(max_len, k);
    const std::size_t subsets = std::size_t{1} << k;

    std::vector<Word> reach(subsets * words);
    std::vector<Word> covered(words);
    auto reach_row = [&](std::size_t s) { return std::span<Word>(reach.data() + s * words, words); };
    auto set_bit = [](std::span<Word> bits, Vertex v) { bits[v / word_bits] |= Word{1} << (v % word_bits); };
    auto test_bit = [](std::span<const Word> bits, Vertex v) { return (bits[v / word_bits] >> (v % word_bits)) & 1U; };

    std::vector<std::vector<std::size_t>> by_size(k + 1);
    for (std::size_t s = 0; s < subsets; ++s)
        by_size[static_cast<std::size_t>(std::popcount(s))].push_back(s);

    for (Vertex s = 0; s < n; ++s) {
        std::fill(reach.begin(), reach.end(), 0);
        std::fill(covered.begin(), covered.end(), 0);
        set_bit(reach_row(0), s);
        set_bit(covered, s);

        auto all_covered = [&] {
            for (Vertex t = s + 1; t < n; ++t)
                if (!test_bit(covered, t))
                    return false;
            return true;
        };

        // Push layers 0..len-2 forward; the last colour is pulled per target.
        for (std::size_t layer = 0; layer + 1 < len && !all_covered(); ++layer) {
            for (std::size_t used : by_size[layer]) {
                auto from = reach_row(used);
                for_each_bit(std::span<const Word>(from), [&](Vertex x) {
                    for (std::size_t c = 0; c < k; ++c) {
                        if (used & (std::size_t{1} << c))
                            continue;
                        auto to = reach_row(used | (std::size_t{1} << c));
                        auto nx = split.row(static_cast<Color>(c), x);
                        for (std::size_t i = 0; i < words; ++i)
                            to[i] |= nx[i];
                    }
                });
            }
            for (std::size_t used : by_size[layer + 1]) {
                auto r = reach_row(used);
                for (std::size_t i = 0; i < words; ++i)
                    covered[i] |= r[i];
            }
        }

        for (Vertex t = s + 1; t < n; ++t) {
            if (test_bit(covered, t))
                continue;
            bool found = false;
            for (std::size_t used : by_size[len - 1]) {
                auto from = std::span<const Word>(reach_row(used));
                for (std::size_t c = 0; c < k && !found; ++c)
                    if (!(used & (std::size_t{1} << c)) && intersects(from, split.row(static_cast<Color>(c), t)))
                        found = true;
                if (found)
                    break;
            }
            if (!found)
                return false;
        }
    }
    return true;
}

void write_coloring(std::ostream& out, const EdgeColoring& col)
{
    const auto edges = col.assigned_edges();
    out << col.n() << ' ' << edges.size() << ' ' << col.k() << '\n';
    for (const Edge& e : edges)
        out << e.u << ' ' << e.v << ' ' << static_cast<unsigned>(*col.color(e)) << '\n';
}

EdgeColoring read_coloring(std::istream& in)
{
    std::size_t n = 0, m = 0, k = 0;
    if (!(in >> n >> m >> k))
        throw ColoringError("coloring file: expected header \"n m k\"");
    EdgeColoring col(n, k);
    for (std::size_t i = 0; i < m; ++i) {
        long long u = 0, v = 0, c = 0;
        if (!(in >> u >> v >> c))
            throw ColoringError("coloring file: expected " + std::to_string(m) + " rows, read " + std::to_string(i));
        if (u < 0 || v < 0 || u >= static_cast<long long>(n) || v >= static_cast<long long>(n) || u == v)
            throw ColoringError("coloring file: bad pair on row " + std::to_string(i + 1));
        if (c < 0 || c >= static_cast<long long>(k))
            throw ColoringError("coloring file: colour out of range on row " + std::to_string(i + 1));
        col.assign({static_cast<Vertex>(u), static_cast<Vertex>(v)}, static_cast<Color>(c));
    }
    return col;
}

EdgeColoring load_coloring(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ColoringError("cannot open " + path);
    return read_coloring(in);
}

void save_coloring(const std::string& path, const EdgeColoring& col)
{
    std::ofstream out(path);
    if (!out)
        throw ColoringError("cannot write " + path);
    write_coloring(out, col);
}

} // namespace rainbow
