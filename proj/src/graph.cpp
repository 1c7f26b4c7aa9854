#include "rainbow/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>

namespace rainbow {

std::size_t Graph::degree(Vertex v) const
{
    std::size_t d = 0;
    for (Word w : row(v))
        d += static_cast<std::size_t>(std::popcount(w));
    return d;
}

std::vector<Vertex> Graph::neighbors(Vertex v) const
{
    std::vector<Vertex> out;
    for_each_bit(row(v), [&](Vertex x) { out.push_back(x); });
    return out;
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n_; ++u)
        for_each_bit(row(u), [&](Vertex v) {
            if (u < v)
                out.emplace_back(u, v);
        });
    return out;
}

bool GraphBuilder::add_edge(Vertex a, Vertex b)
{
    if (a >= g_.n_ || b >= g_.n_)
        throw GraphError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") has an endpoint outside 0.."
                         + std::to_string(g_.n_ == 0 ? 0 : g_.n_ - 1));
    if (a == b)
        throw GraphError("edge (" + std::to_string(a) + "," + std::to_string(b) + ") is a self-loop");
    if (g_.adjacent(a, b))
        return false;
    set_bit(a, b);
    set_bit(b, a);
    ++g_.m_;
    return true;
}

Graph GraphBuilder::build() &&
{
    return std::move(g_);
}

Graph make_graph(std::size_t n, std::span<const Edge> edges)
{
    GraphBuilder b(n);
    for (const Edge& e : edges)
        b.add_edge(e.u, e.v);
    return std::move(b).build();
}

Graph make_graph(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges)
{
    GraphBuilder b(n);
    for (auto [u, v] : edges)
        b.add_edge(u, v);
    return std::move(b).build();
}

Graph complete_graph(std::size_t n)
{
    GraphBuilder b(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            b.add_edge(u, v);
    return std::move(b).build();
}

Graph path_graph(std::size_t n)
{
    GraphBuilder b(n);
    for (Vertex u = 0; u + 1 < n; ++u)
        b.add_edge(u, u + 1);
    return std::move(b).build();
}

Graph cycle_graph(std::size_t n)
{
    GraphBuilder b(n);
    for (Vertex u = 0; u < n; ++u)
        b.add_edge(u, static_cast<Vertex>((u + 1) % n));
    return std::move(b).build();
}

bool is_subgraph(const Graph& sub, const Graph& super)
{
    if (sub.n() != super.n())
        return false;
    for (Vertex v = 0; v < sub.n(); ++v) {
        auto a = sub.row(v);
        auto b = super.row(v);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] & ~b[i])
                return false;
    }
    return true;
}

Graph gen_gnp(std::size_t n, double p, Rng& rng)
{
    GraphBuilder b(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (uniform01(rng) < p)
                b.add_edge(u, v);
    return std::move(b).build();
}

ProcessSequence::ProcessSequence(std::size_t n, std::vector<double> weights) : n_(n), weights_(std::move(weights))
{
    if (weights_.size() != pair_count(n))
        throw GraphError("process needs " + std::to_string(pair_count(n)) + " weights, got "
                         + std::to_string(weights_.size()));
    std::vector<std::size_t> idx(weights_.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return weights_[a] < weights_[b]; });
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (weights_[idx[i]] == weights_[idx[i - 1]])
            throw GraphError("process weights must be pairwise distinct");

    std::vector<Edge> by_index;
    by_index.reserve(weights_.size());
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            by_index.emplace_back(u, v);
    order_.reserve(idx.size());
    for (std::size_t i : idx)
        order_.push_back(by_index[i]);
}

std::size_t ProcessSequence::count_at_most(double p) const
{
    std::size_t lo = 0, hi = order_.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (sorted_weight(mid) <= p)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

ProcessSequence gen_weighted_process(std::size_t n, Rng& rng)
{
    const std::size_t count = pair_count(n);
    std::vector<double> weights(count);
    for (double& w : weights)
        w = uniform01(rng);

    std::vector<double> sorted = weights;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        // Bit-exact collision: fall back to a uniform random ranking.
        std::vector<std::size_t> rank(count);
        std::iota(rank.begin(), rank.end(), std::size_t{0});
        for (std::size_t i = count; i > 1; --i)
            std::swap(rank[i - 1], rank[uniform_below(rng, i)]);
        for (std::size_t i = 0; i < count; ++i)
            weights[i] = static_cast<double>(rank[i] + 1) / static_cast<double>(count + 1);
    }
    return ProcessSequence(n, std::move(weights));
}

Graph snapshot(const ProcessSequence& seq, std::size_t t)
{
    if (t > seq.size())
        throw GraphError("snapshot time " + std::to_string(t) + " exceeds C(n,2) = " + std::to_string(seq.size()));
    GraphBuilder b(seq.n());
    for (std::size_t i = 0; i < t; ++i)
        b.add_edge(seq.order()[i].u, seq.order()[i].v);
    return std::move(b).build();
}

Graph threshold_graph(const ProcessSequence& seq, double p)
{
    return snapshot(seq, seq.count_at_most(p));
}

std::optional<std::size_t> diameter(const Graph& g)
{
    const std::size_t n = g.n();
    std::size_t best = 0;
    std::vector<std::size_t> dist(n);
    for (Vertex s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), SIZE_MAX);
        dist[s] = 0;
        std::queue<Vertex> q;
        q.push(s);
        std::size_t seen = 1;
        while (!q.empty()) {
            const Vertex x = q.front();
            q.pop();
            for_each_bit(g.row(x), [&](Vertex y) {
                if (dist[y] == SIZE_MAX) {
                    dist[y] = dist[x] + 1;
                    best = std::max(best, dist[y]);
                    ++seen;
                    q.push(y);
                }
            });
        }
        if (seen != n)
            return std::nullopt;
    }
    return best;
}

bool has_diameter_at_most_2(const Graph& g)
{
    const std::size_t n = g.n();
    const std::size_t words = g.words_per_row();
    std::vector<Word> covered(words);
    const Word tail = (n % word_bits) ? (Word{1} << (n % word_bits)) - 1 : ~Word{0};
    for (Vertex u = 0; u < n; ++u) {
        auto r = g.row(u);
        std::copy(r.begin(), r.end(), covered.begin());
        covered[u / word_bits] |= Word{1} << (u % word_bits);
        for_each_bit(r, [&](Vertex x) {
            auto rx = g.row(x);
            for (std::size_t i = 0; i < words; ++i)
                covered[i] |= rx[i];
        });
        for (std::size_t i = 0; i < words; ++i) {
            const Word want = (i + 1 == words) ? tail : ~Word{0};
            if ((covered[i] & want) != want)
                return false;
        }
    }
    return true;
}

std::size_t common_neighbors(const Graph& g, Vertex v, Vertex w)
{
    if (v == w)
        throw GraphError("common_neighbors needs two distinct vertices, got " + std::to_string(v) + " twice");
    return popcount_and(g.row(v), g.row(w));
}

} // namespace rainbow
