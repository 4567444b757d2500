#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace gapclique {

/// Undirected graph on 0-indexed vertices with packed adjacency rows.
/// Host container for materialized product graphs and plain instances
/// handed to the exact solver.
class DenseGraph {
public:
    explicit DenseGraph(std::size_t n);

    std::size_t n() const noexcept { return n_; }
    std::size_t words_per_row() const noexcept { return words_; }

    void add_edge(std::size_t u, std::size_t v);
    bool adjacent(std::size_t u, std::size_t v) const;
    std::size_t degree(std::size_t v) const;
    std::size_t edge_count() const;

    const std::uint64_t* row(std::size_t v) const { return bits_.data() + v * words_; }

private:
    void check(std::size_t v) const;

    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

struct CliqueResult {
    std::size_t size = 0;
    std::vector<std::uint32_t> witness;  // sorted vertex ids
    std::uint64_t nodes_expanded = 0;
    // True when the search stopped at stop_above instead of proving
    // optimality; size is then a lower bound on the clique number.
    bool early_exit = false;
};

/// Exact maximum clique by branch and bound with greedy-coloring upper
/// bounds. With stop_above set, returns as soon as a clique larger than the
/// threshold is in hand, which is all a bound check needs.
CliqueResult max_clique(const DenseGraph& g, std::optional<std::size_t> stop_above = std::nullopt);

struct BoundCheck {
    bool exceeds = false;
    std::vector<std::uint32_t> witness;  // a clique of size > bound when exceeds
    std::uint64_t nodes_expanded = 0;
};

/// Decision form: is the clique number strictly greater than bound?
BoundCheck clique_exceeds(const DenseGraph& g, std::size_t bound);

/// True iff members are distinct, in range, and pairwise adjacent.
bool verify_clique(const DenseGraph& g, const std::vector<std::uint32_t>& members);

}  // namespace gapclique
