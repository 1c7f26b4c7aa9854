#include "rainbow/recolor.hpp"

#include <algorithm>

namespace rainbow {

std::size_t RecolorTrace::max_flag_count() const
{
    return flag_count.empty() ? 0 : *std::max_element(flag_count.begin(), flag_count.end());
}

std::size_t RecolorTrace::max_flag_count_in_sub() const
{
    return flag_count_in_sub.empty() ? 0 : *std::max_element(flag_count_in_sub.begin(), flag_count_in_sub.end());
}

std::string to_string(FailureReason r)
{
    switch (r) {
    case FailureReason::NoDiameter2Path:
        return "NoDiameter2Path";
    case FailureReason::BothEdgesFlagged:
        return "BothEdgesFlagged";
    case FailureReason::NoUnflaggedPath:
        return "NoUnflaggedPath";
    case FailureReason::DamagedPair:
        return "DamagedPair";
    }
    return "Unknown";
}

std::optional<VertexPair> find_rc2_violation(const Graph& g, const EdgeColoring& col)
{
    if (col.k() != 2)
        throw ColoringError("rc <= 2 verification needs a 2-colouring, got k = " + std::to_string(col.k()));
    const ColorSplit split(g, col);
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v) {
            if (g.adjacent(u, v))
                continue;
            if (!intersects(split.row(0, u), split.row(1, v)) && !intersects(split.row(1, u), split.row(0, v)))
                return VertexPair(u, v);
        }
    return std::nullopt;
}

bool verify_rc2_coloring(const Graph& g, const EdgeColoring& col)
{
    return !find_rc2_violation(g, col).has_value();
}

namespace {

class Recolorer {
public:
    Recolorer(const Graph& g, const Graph& sub, EdgeColoring col) : g_(g), sub_(sub), col_(std::move(col)) {}

    std::size_t flags_on(Edge a, Edge b) const
    {
        return (col_.is_flagged(a) ? 1 : 0) + (col_.is_flagged(b) ? 1 : 0);
    }

    bool is_rainbow(Edge a, Edge b) const
    {
        const auto ca = col_.color(a), cb = col_.color(b);
        return ca && cb && *ca != *cb;
    }

    /// Sparse pass: any 2-path of g with the fewest flagged edges.
    std::optional<FailureReason> sparse(VertexPair pair, PassEntry& entry)
    {
        const Vertex v = pair.u, w = pair.v;
        std::optional<Vertex> best;
        std::size_t best_flags = 3;
        std::optional<Vertex> rainbow_fully_flagged;
        for_each_bit(g_.row(v), [&](Vertex z) {
            if (!g_.adjacent(z, w))
                return;
            const std::size_t f = flags_on({v, z}, {z, w});
            if (f < best_flags) {
                best_flags = f;
                best = z;
            }
            if (f == 2 && !rainbow_fully_flagged && is_rainbow({v, z}, {z, w}))
                rainbow_fully_flagged = z;
        });
        if (!best)
            return FailureReason::NoDiameter2Path;
        if (best_flags == 2) {
            if (!rainbow_fully_flagged)
                return FailureReason::BothEdgesFlagged;
            entry.middle = *rainbow_fully_flagged;
            return std::nullopt;
        }
        entry.middle = *best;
        make_rainbow(Edge(v, *best), Edge(*best, w), entry);
        return std::nullopt;
    }

    /// Rich pass: lowest middle vertex of a fully unflagged 2-path of the subgraph.
    std::optional<FailureReason> rich(VertexPair pair, PassEntry& entry)
    {
        const Vertex v = pair.u, w = pair.v;
        std::optional<Vertex> found;
        auto rv = sub_.row(v), rw = sub_.row(w);
        for (std::size_t i = 0; i < rv.size() && !found; ++i) {
            Word both = rv[i] & rw[i];
            while (both && !found) {
                const auto z = static_cast<Vertex>(i * word_bits + static_cast<std::size_t>(std::countr_zero(both)));
                both &= both - 1;
                if (flags_on({v, z}, {z, w}) == 0)
                    found = z;
            }
        }
        if (!found)
            return FailureReason::NoUnflaggedPath;
        entry.middle = *found;
        make_rainbow(Edge(v, *found), Edge(*found, w), entry);
        return std::nullopt;
    }

    void finish(RecolorTrace& trace)
    {
        for (const Edge& e : g_.edges())
            if (!col_.is_assigned(e)) {
                col_.assign(e, 0);
                trace.leftover_assignments.push_back(e);
            }
    }

    void count_flags(RecolorTrace& trace) const
    {
        trace.flag_count.assign(g_.n(), 0);
        trace.flag_count_in_sub.assign(g_.n(), 0);
        for (const Edge& e : col_.flagged_edges()) {
            ++trace.flag_count[e.u];
            ++trace.flag_count[e.v];
            if (sub_.adjacent(e.u, e.v)) {
                ++trace.flag_count_in_sub[e.u];
                ++trace.flag_count_in_sub[e.v];
            }
        }
    }

    EdgeColoring& coloring() { return col_; }

private:
    void write(Edge e, Color c, PassEntry& entry)
    {
        const auto prev = col_.color(e);
        if (prev && *prev == c)
            return;
        col_.assign(e, c);
        entry.assignments.push_back({e, prev, c});
    }

    void make_rainbow(Edge a, Edge b, PassEntry& entry)
    {
        const bool fa = col_.is_flagged(a), fb = col_.is_flagged(b);
        const auto ca = col_.color(a), cb = col_.color(b);
        if (fa && !fb) {
            write(b, static_cast<Color>(1 - *ca), entry);
        } else if (fb && !fa) {
            write(a, static_cast<Color>(1 - *cb), entry);
        } else if (!fa && !fb) {
            const Edge first = std::min(a, b), later = std::max(a, b);
            const auto cf = col_.color(first), cl = col_.color(later);
            if (cf && cl) {
                if (*cf == *cl)
                    write(later, static_cast<Color>(1 - *cf), entry);
            } else if (cf) {
                write(later, static_cast<Color>(1 - *cf), entry);
            } else if (cl) {
                write(first, static_cast<Color>(1 - *cl), entry);
            } else {
                write(first, 0, entry);
                write(later, 1, entry);
            }
        }
        for (const Edge& e : {a, b})
            if (!col_.is_flagged(e)) {
                col_.flag(e);
                entry.flagged.push_back(e);
            }
    }

    const Graph& g_;
    const Graph& sub_;
    EdgeColoring col_;
};

} // namespace

RecolorResult recolor(const Graph& g, const Graph& sub, const EdgeColoring& coloring, std::size_t d)
{
    if (!is_subgraph(sub, g))
        throw ColoringError("subgraph is not a spanning subgraph of the graph");
    if (coloring.k() != 2)
        throw ColoringError("recolor needs a 2-colouring, got k = " + std::to_string(coloring.k()));
    check_domain(sub, coloring);
    require_fully_assigned(sub, coloring);

    EdgeColoring start(g.n(), 2);
    for (const Edge& e : coloring.assigned_edges())
        start.assign(e, *coloring.color(e));

    const PairReport report = classify_pairs(sub, start, d);
    Recolorer r(g, sub, std::move(start));
    RecolorTrace trace;
    trace.d = d;

    auto fail = [&](FailureReason reason, VertexPair pair) -> RecolorResult {
        r.count_flags(trace);
        return RecolorFailure{reason, pair, std::move(trace)};
    };

    for (bool sparse_pass : {true, false})
        for (const PairStat& s : report.pairs) {
            if (!s.is_dangerous || s.is_sparse != sparse_pass)
                continue;
            if (g.adjacent(s.pair.u, s.pair.v)) {
                trace.skipped_adjacent.push_back(s.pair);
                continue;
            }
            PassEntry entry;
            entry.pair = s.pair;
            const auto failure = sparse_pass ? r.sparse(s.pair, entry) : r.rich(s.pair, entry);
            if (failure)
                return fail(*failure, s.pair);
            (sparse_pass ? trace.sparse_pass : trace.rich_pass).push_back(std::move(entry));
        }

    r.finish(trace);
    r.count_flags(trace);
    if (const auto bad = find_rc2_violation(g, r.coloring()))
        return RecolorFailure{FailureReason::DamagedPair, *bad, std::move(trace)};
    return RecolorSuccess{std::move(r.coloring()), std::move(trace)};
}

} // namespace rainbow
