#include "rainbow/danger.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace rainbow {

void PairSet::insert(VertexPair p)
{
    bits_[p.u * words_ + p.v / word_bits] |= Word{1} << (p.v % word_bits);
    bits_[p.v * words_ + p.u / word_bits] |= Word{1} << (p.u % word_bits);
}

std::vector<VertexPair> PairReport::dangerous_pairs() const
{
    std::vector<VertexPair> out;
    for (const PairStat& s : pairs)
        if (s.is_dangerous)
            out.push_back(s.pair);
    return out;
}

std::vector<VertexPair> PairReport::sparse_pairs() const
{
    std::vector<VertexPair> out;
    for (const PairStat& s : pairs)
        if (s.is_sparse)
            out.push_back(s.pair);
    return out;
}

PairSet PairReport::dangerous_set(std::size_t n) const
{
    PairSet set(n);
    for (const PairStat& s : pairs)
        if (s.is_dangerous)
            set.insert(s.pair);
    return set;
}

PairReport classify_pairs(const Graph& g, const EdgeColoring& col, std::size_t d)
{
    require_fully_assigned(g, col);
    PairReport report;
    report.d = d;
    const std::size_t n = g.n();
    std::optional<ColorSplit> split;
    if (col.k() == 2)
        split.emplace(g, col);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            if (g.adjacent(u, v))
                continue;
            PairStat s;
            s.pair = {u, v};
            s.two_path_count = popcount_and(g.row(u), g.row(v));
            s.rainbow_two_path_count
                = split ? rainbow_two_path_count(*split, u, v) : rainbow_two_path_count(g, col, u, v);
            s.is_dangerous = s.rainbow_two_path_count <= d;
            s.is_sparse = s.two_path_count <= d;
            report.pairs.push_back(s);
        }
    return report;
}

namespace {

ConditionVerdict verdict(const std::vector<std::size_t>& counts, std::size_t bound)
{
    ConditionVerdict out;
    out.bound = bound;
    for (Vertex v = 0; v < counts.size(); ++v) {
        out.max_count = std::max(out.max_count, counts[v]);
        if (counts[v] > bound)
            out.violations.push_back({v, counts[v]});
    }
    out.passes = out.violations.empty();
    return out;
}

} // namespace

MAuditReport audit_property_M(const Graph& g, const EdgeColoring& col, std::size_t d)
{
    if (col.k() != 2)
        throw ColoringError("property M is defined for 2-colourings, got k = " + std::to_string(col.k()));
    const PairReport pairs = classify_pairs(g, col, d);
    const std::size_t n = g.n();

    MAuditReport report;
    report.d = d;
    report.dangerous_pair_membership.assign(n, 0);
    report.adjacent_to_both_of_dangerous.assign(n, 0);
    report.sparse_pair_membership.assign(n, 0);
    for (const PairStat& s : pairs.pairs) {
        if (s.is_dangerous) {
            ++report.dangerous_pair_membership[s.pair.u];
            ++report.dangerous_pair_membership[s.pair.v];
            auto ru = g.row(s.pair.u);
            auto rv = g.row(s.pair.v);
            for (std::size_t i = 0; i < ru.size(); ++i) {
                Word both = ru[i] & rv[i];
                while (both) {
                    ++report.adjacent_to_both_of_dangerous[i * word_bits
                                                           + static_cast<std::size_t>(std::countr_zero(both))];
                    both &= both - 1;
                }
            }
        }
        if (s.is_sparse) {
            ++report.sparse_pair_membership[s.pair.u];
            ++report.sparse_pair_membership[s.pair.v];
        }
    }
    report.condition_i = verdict(report.dangerous_pair_membership, m_dangerous_bound);
    report.condition_ii = verdict(report.adjacent_to_both_of_dangerous, m_adjacent_bound);
    report.condition_iii = verdict(report.sparse_pair_membership, m_sparse_bound);
    return report;
}

std::vector<Fix> find_fixes(const Graph& g, const EdgeColoring& col, VertexPair pair)
{
    if (col.k() != 2)
        throw ColoringError("fixes are defined for 2-colourings, got k = " + std::to_string(col.k()));
    const Vertex v = pair.u, w = pair.v;
    if (v == w || g.adjacent(v, w))
        throw ColoringError("find_fixes needs a non-adjacent pair, got (" + std::to_string(v) + ","
                            + std::to_string(w) + ")");
    std::vector<Fix> out;
    // (x, w) with x in Γ(v), then (v, y) with y in Γ(w).
    for (auto [near, far] : {std::pair{v, w}, std::pair{w, v}})
        for_each_bit(g.row(near), [&, near = near, far = far](Vertex x) {
            if (x == far || g.adjacent(x, far))
                return;
            const Color c = col.require({near, x});
            out.push_back({Edge(x, far), static_cast<Color>(1 - c), pair, false});
        });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<VertexPair> pairs_served_by(const Graph& g, Edge e, const PairSet& dangerous, VertexPair except)
{
    std::vector<VertexPair> out;
    for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        // {u, b} with u in Γ(a) gains the path u - a - b.
        auto ra = g.row(a);
        auto db = dangerous.row(b);
        for (std::size_t i = 0; i < ra.size(); ++i) {
            Word both = ra[i] & db[i];
            while (both) {
                const auto u = static_cast<Vertex>(i * word_bits + static_cast<std::size_t>(std::countr_zero(both)));
                both &= both - 1;
                const VertexPair p(u, b);
                if (p != except)
                    out.push_back(p);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Fix> find_exclusive_fixes(const Graph& g, const EdgeColoring& col, VertexPair pair,
                                      const PairSet& dangerous)
{
    std::vector<Fix> out;
    for (Fix f : find_fixes(g, col, pair))
        if (pairs_served_by(g, f.missing_edge, dangerous, pair).empty()) {
            f.exclusive = true;
            out.push_back(f);
        }
    return out;
}

std::vector<std::size_t> exclusive_fix_counts(const Graph& g, const PairReport& report)
{
    const std::size_t n = g.n();
    const std::size_t words = g.words_per_row();
    const PairSet dangerous = report.dangerous_set(n);

    // served_once[b] / served_never[b]: vertices a for which the non-edge {a,b}
    // is a fix for exactly one / no dangerous pair.
    std::vector<Word> served_once(n * words, 0), served_never(n * words, 0);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) {
            if (g.adjacent(a, b))
                continue;
            const std::size_t s = popcount_and(g.row(a), dangerous.row(b)) + popcount_and(g.row(b), dangerous.row(a));
            if (s > 1)
                continue;
            auto& bits = s == 0 ? served_never : served_once;
            bits[a * words + b / word_bits] |= Word{1} << (b % word_bits);
            bits[b * words + a / word_bits] |= Word{1} << (a % word_bits);
        }
    auto row = [&](const std::vector<Word>& bits, Vertex v) { return std::span<const Word>(bits.data() + v * words, words); };

    std::vector<std::size_t> out;
    out.reserve(report.pairs.size());
    for (const PairStat& s : report.pairs) {
        // A fix (x, w) with x in Γ(v) is exclusive when the only dangerous
        // pair it serves is the target itself (or none, for a safe target).
        const auto& bits = s.is_dangerous ? served_once : served_never;
        out.push_back(popcount_and(g.row(s.pair.u), row(bits, s.pair.v))
                      + popcount_and(g.row(s.pair.v), row(bits, s.pair.u)));
    }
    return out;
}

LemmaAudit audit_whp_lemmas(const Graph& g1, const EdgeColoring& col, double eps, std::size_t d)
{
    LemmaAudit audit;
    const std::size_t n = g1.n();
    audit.n = n;
    audit.eps = eps;
    audit.d = d;
    const double nd = static_cast<double>(n);
    const double nlogn = n > 1 ? nd * std::log(nd) : 0.0;

    audit.degree_low = std::sqrt((1.0 + eps / 2.0) * nlogn);
    audit.degree_high = std::sqrt((1.0 + 2.0 * eps) * nlogn);
    audit.min_degree = n ? SIZE_MAX : 0;
    for (Vertex v = 0; v < n; ++v) {
        const std::size_t deg = g1.degree(v);
        audit.min_degree = std::min(audit.min_degree, deg);
        audit.max_degree = std::max(audit.max_degree, deg);
        const auto degd = static_cast<double>(deg);
        if (degd < audit.degree_low || degd > audit.degree_high)
            ++audit.degree_violations;
    }
    audit.degree_window_passes = audit.degree_violations == 0;

    const PairReport report = classify_pairs(g1, col, d);
    std::vector<std::size_t> membership(n, 0);
    for (const PairStat& s : report.pairs)
        if (s.is_dangerous) {
            ++membership[s.pair.u];
            ++membership[s.pair.v];
        }
    audit.dangerous_bound = std::pow(nd, 0.5 * (1.0 - eps / 4.0));
    for (std::size_t c : membership) {
        audit.max_dangerous_per_vertex = std::max(audit.max_dangerous_per_vertex, c);
        if (static_cast<double>(c) > audit.dangerous_bound)
            ++audit.dangerous_violations;
    }
    audit.dangerous_per_vertex_passes = audit.dangerous_violations == 0;

    audit.exclusive_bound = 2.0 * std::sqrt((1.0 + eps / 4.0) * nlogn);
    const auto counts = exclusive_fix_counts(g1, report);
    audit.pairs_checked = counts.size();
    audit.min_exclusive_fixes = counts.empty() ? 0 : *std::min_element(counts.begin(), counts.end());
    for (std::size_t c : counts)
        if (static_cast<double>(c) < audit.exclusive_bound)
            ++audit.exclusive_violations;
    audit.exclusive_fixes_passes = audit.exclusive_violations == 0;
    return audit;
}

} // namespace rainbow
