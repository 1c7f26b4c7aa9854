#include "rainbow/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace rainbow {

RcResult rc_exact(const Graph& g, const OracleBudget& budget)
{
    RcResult out;
    if (g.n() <= 1)
        return out; // no pairs to join: rc = 0
    const auto diam = diameter(g);
    if (!diam) {
        out.kind = RcResult::Kind::Infinite;
        return out;
    }
    const auto edges = g.edges();
    const std::size_t m = edges.size();
    std::uint64_t used = 0;

    // k = m always suffices on a connected graph, so the loop ends there.
    for (std::size_t k = std::max<std::size_t>(1, *diam); k <= m; ++k) {
        if (k > budget.max_k || k > max_search_colors) {
            out.kind = RcResult::Kind::BudgetExceeded;
            out.value = k;
            return out;
        }
        std::vector<Color> digits(m, 0);
        EdgeColoring col(g.n(), k);
        for (;;) {
            if (used >= budget.max_colorings) {
                out.kind = RcResult::Kind::BudgetExceeded;
                out.value = k;
                return out;
            }
            ++used;
            for (std::size_t i = 0; i < m; ++i)
                col.assign(edges[i], digits[i]);
            if (is_rainbow_connected(g, col, k)) {
                out.value = k;
                out.witness = std::move(col);
                return out;
            }
            // Odometer over edges 1..m-1; edge 0 keeps colour 0.
            std::size_t i = m;
            while (i > 1 && ++digits[i - 1] == k)
                digits[--i] = 0;
            if (i <= 1)
                break;
        }
    }
    out.kind = RcResult::Kind::BudgetExceeded;
    out.value = m + 1;
    return out;
}

namespace {

struct PathConstraint {
    std::vector<std::pair<std::size_t, std::size_t>> paths; // edge indices
};

class Rc2Search {
public:
    Rc2Search(std::size_t m, std::vector<PathConstraint> constraints, std::vector<std::size_t> order,
              std::uint64_t budget)
        : value_(m, -1), constraints_(std::move(constraints)), order_(std::move(order)), budget_(budget)
    {
    }

    enum class Outcome { Found, Exhausted, OutOfBudget };

    Outcome run() { return search(true); }

    const std::vector<int>& values() const { return value_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    // Returns false on conflict. Newly forced edges are pushed onto trail_.
    bool propagate()
    {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const PathConstraint& c : constraints_) {
                bool satisfied = false;
                std::size_t open = 0;
                std::pair<std::size_t, std::size_t> last{};
                for (const auto& p : c.paths) {
                    const int a = value_[p.first], b = value_[p.second];
                    if (a >= 0 && b >= 0) {
                        if (a != b) {
                            satisfied = true;
                            break;
                        }
                        continue;
                    }
                    ++open;
                    last = p;
                }
                if (satisfied)
                    continue;
                if (open == 0)
                    return false;
                if (open == 1) {
                    const int a = value_[last.first], b = value_[last.second];
                    if (a >= 0 && b < 0) {
                        set(last.second, 1 - a);
                        changed = true;
                    } else if (b >= 0 && a < 0) {
                        set(last.first, 1 - b);
                        changed = true;
                    }
                }
            }
        }
        return true;
    }

    void set(std::size_t e, int v)
    {
        value_[e] = v;
        trail_.push_back(e);
    }

    void undo_to(std::size_t mark)
    {
        while (trail_.size() > mark) {
            value_[trail_.back()] = -1;
            trail_.pop_back();
        }
    }

    Outcome search(bool root)
    {
        if (!propagate())
            return Outcome::Exhausted;
        auto it = std::find_if(order_.begin(), order_.end(), [&](std::size_t e) { return value_[e] < 0; });
        if (it == order_.end())
            return Outcome::Found;
        const std::size_t e = *it;
        // Swapping the two colours preserves validity: the first decision is fixed.
        for (int v : root ? std::vector<int>{0} : std::vector<int>{0, 1}) {
            if (nodes_ >= budget_)
                return Outcome::OutOfBudget;
            ++nodes_;
            const std::size_t mark = trail_.size();
            set(e, v);
            const Outcome o = search(false);
            if (o != Outcome::Exhausted)
                return o;
            undo_to(mark);
        }
        return Outcome::Exhausted;
    }

    std::vector<int> value_;
    std::vector<PathConstraint> constraints_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> trail_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
};

} // namespace

Rc2Result rc_at_most_2(const Graph& g, const OracleBudget& budget)
{
    Rc2Result out;
    const std::size_t n = g.n();
    if (!has_diameter_at_most_2(g)) {
        out.kind = Rc2Result::Kind::No;
        return out;
    }
    const auto edges = g.edges();
    std::vector<std::size_t> index(n * n, SIZE_MAX);
    for (std::size_t i = 0; i < edges.size(); ++i)
        index[edges[i].u * n + edges[i].v] = index[edges[i].v * n + edges[i].u] = i;

    std::vector<PathConstraint> constraints;
    std::vector<std::size_t> single(edges.size(), 0), touched(edges.size(), 0);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            if (g.adjacent(u, v))
                continue;
            PathConstraint c;
            auto ru = g.row(u), rv = g.row(v);
            for (std::size_t i = 0; i < ru.size(); ++i) {
                Word both = ru[i] & rv[i];
                while (both) {
                    const auto z = i * word_bits + static_cast<std::size_t>(std::countr_zero(both));
                    both &= both - 1;
                    c.paths.emplace_back(index[u * n + z], index[z * n + v]);
                }
            }
            for (const auto& [a, b] : c.paths) {
                ++touched[a];
                ++touched[b];
                if (c.paths.size() == 1) {
                    ++single[a];
                    ++single[b];
                }
            }
            constraints.push_back(std::move(c));
        }

    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (single[a] != single[b])
            return single[a] > single[b];
        return touched[a] > touched[b];
    });

    Rc2Search search(edges.size(), std::move(constraints), std::move(order), budget.max_colorings);
    const auto outcome = search.run();
    out.nodes = search.nodes();
    if (outcome == Rc2Search::Outcome::OutOfBudget) {
        out.kind = Rc2Result::Kind::BudgetExceeded;
    } else if (outcome == Rc2Search::Outcome::Found) {
        out.kind = Rc2Result::Kind::Yes;
        EdgeColoring col(n, 2);
        for (std::size_t i = 0; i < edges.size(); ++i)
            col.assign(edges[i], static_cast<Color>(search.values()[i]));
        out.witness = std::move(col);
    }
    return out;
}

} // namespace rainbow
