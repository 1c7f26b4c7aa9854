#pragma once

#include "rainbow/coloring.hpp"
#include "rainbow/graph.hpp"

#include <cstdint>
#include <optional>

namespace rainbow {

struct OracleBudget {
    std::uint64_t max_colorings = std::uint64_t{1} << 30;
    std::size_t max_k = max_search_colors;
};

struct RcResult {
    enum class Kind { Finite, Infinite, BudgetExceeded };

    Kind kind = Kind::Finite;
    /// rc for Finite; the k being searched when the budget ran out otherwise.
    std::size_t value = 0;
    /// A rainbow colouring with `value` colours, for Finite results.
    std::optional<EdgeColoring> witness;

    bool finite() const { return kind == Kind::Finite; }
};

/// Smallest k admitting a rainbow k-colouring, searching upward from
/// max(1, diam g). Exhaustive over k-colourings with the first edge fixed
/// to colour 0.
RcResult rc_exact(const Graph& g, const OracleBudget& budget = {});

struct Rc2Result {
    enum class Kind { Yes, No, BudgetExceeded };

    Kind kind = Kind::No;
    std::optional<EdgeColoring> witness;
    std::uint64_t nodes = 0;

    bool yes() const { return kind == Kind::Yes; }
};

/// Decides rc(g) <= 2 by backtracking over 2-colourings with unit
/// propagation on pairs whose constraint has one open 2-path left.
Rc2Result rc_at_most_2(const Graph& g, const OracleBudget& budget = {});

} // namespace rainbow
