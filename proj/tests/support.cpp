#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

namespace support {

Plain::Plain(const Graph& g) : n(g.n()), adj(g.n())
{
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v && g.adjacent(u, v))
                adj[u].push_back(v);
}

namespace {

bool dfs(const Plain& p, const EdgeColoring& col, Vertex at, Vertex t, std::size_t left, std::vector<bool>& seen,
         std::vector<bool>& used)
{
    if (at == t)
        return true;
    if (left == 0)
        return false;
    for (Vertex x : p.adj[at]) {
        if (seen[x])
            continue;
        const Color c = *col.color(at, x);
        if (used[c])
            continue;
        seen[x] = used[c] = true;
        const bool ok = dfs(p, col, x, t, left - 1, seen, used);
        seen[x] = used[c] = false;
        if (ok)
            return true;
    }
    return false;
}

} // namespace

bool brute_rainbow_path(const Graph& g, const EdgeColoring& col, Vertex s, Vertex t, std::size_t max_len)
{
    const Plain p(g);
    std::vector<bool> seen(g.n(), false), used(256, false);
    seen[s] = true;
    return dfs(p, col, s, t, max_len, seen, used);
}

bool brute_rainbow_connected(const Graph& g, const EdgeColoring& col, std::size_t max_len)
{
    const Plain p(g);
    for (Vertex s = 0; s < g.n(); ++s)
        for (Vertex t = s + 1; t < g.n(); ++t) {
            std::vector<bool> seen(g.n(), false), used(256, false);
            seen[s] = true;
            if (!dfs(p, col, s, t, max_len, seen, used))
                return false;
        }
    return true;
}

std::optional<std::size_t> brute_rc(const Graph& g, std::size_t max_k)
{
    if (g.n() <= 1)
        return 0;
    if (!brute_diameter(g))
        return std::nullopt;
    std::vector<Edge> edges;
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v)
            if (g.adjacent(u, v))
                edges.emplace_back(u, v);
    for (std::size_t k = 1; k <= max_k; ++k) {
        std::vector<Color> digits(edges.size(), 0);
        for (;;) {
            EdgeColoring col(g.n(), k);
            for (std::size_t i = 0; i < edges.size(); ++i)
                col.assign(edges[i], digits[i]);
            if (brute_rainbow_connected(g, col, edges.size()))
                return k;
            std::size_t i = 0;
            while (i < digits.size() && ++digits[i] == k)
                digits[i++] = 0;
            if (i == digits.size())
                break;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> brute_diameter(const Graph& g)
{
    const Plain p(g);
    std::size_t best = 0;
    for (Vertex s = 0; s < g.n(); ++s) {
        std::vector<std::size_t> dist(g.n(), SIZE_MAX);
        std::deque<Vertex> q{s};
        dist[s] = 0;
        while (!q.empty()) {
            const Vertex u = q.front();
            q.pop_front();
            for (Vertex x : p.adj[u])
                if (dist[x] == SIZE_MAX) {
                    dist[x] = dist[u] + 1;
                    q.push_back(x);
                }
        }
        for (std::size_t d : dist) {
            if (d == SIZE_MAX)
                return std::nullopt;
            best = std::max(best, d);
        }
    }
    return best;
}

std::vector<Graph> connected_catalog(std::size_t n)
{
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            pairs.emplace_back(u, v);
    std::vector<std::vector<std::size_t>> where(n, std::vector<std::size_t>(n, 0));
    for (std::size_t i = 0; i < pairs.size(); ++i)
        where[pairs[i].first][pairs[i].second] = where[pairs[i].second][pairs[i].first] = i;

    std::vector<std::vector<Vertex>> perms;
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    do
        perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    std::set<std::uint32_t> seen;
    std::vector<Graph> out;
    const std::uint32_t total = std::uint32_t{1} << pairs.size();
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        std::uint32_t canon = mask;
        for (const auto& pm : perms) {
            std::uint32_t image = 0;
            for (std::size_t i = 0; i < pairs.size(); ++i)
                if (mask >> i & 1U)
                    image |= std::uint32_t{1} << where[pm[pairs[i].first]][pm[pairs[i].second]];
            canon = std::min(canon, image);
            if (canon < mask)
                break; // not the minimal representative
        }
        if (canon != mask || !seen.insert(mask).second)
            continue;
        std::vector<Edge> edges;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (mask >> i & 1U)
                edges.emplace_back(pairs[i].first, pairs[i].second);
        Graph g = rainbow::make_graph(n, edges);
        if (brute_diameter(g))
            out.push_back(std::move(g));
    }
    return out;
}

Graph hypercube3()
{
    std::vector<Edge> edges;
    for (Vertex u = 0; u < 8; ++u)
        for (Vertex b = 1; b < 8; b <<= 1)
            if (!(u & b))
                edges.emplace_back(u, u | b);
    return rainbow::make_graph(8, edges);
}

Graph star(std::size_t leaves)
{
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= leaves; ++v)
        edges.emplace_back(0, v);
    return rainbow::make_graph(leaves + 1, edges);
}

EdgeColoring coloring_from(const Graph& g, std::size_t k, const std::vector<Color>& colors)
{
    EdgeColoring col(g.n(), k);
    const auto edges = g.edges();
    for (std::size_t i = 0; i < edges.size(); ++i)
        col.assign(edges[i], colors.at(i));
    return col;
}

double chi_square_99(std::size_t df)
{
    const double k = static_cast<double>(df);
    const double z = 2.3263478740408408; // standard normal 0.99 quantile
    const double a = 2.0 / (9.0 * k);
    return k * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

} // namespace support
