#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gapclique/field.hpp"
#include "gapclique/sidon.hpp"

namespace gapclique {

struct parse_error : std::runtime_error {
    parse_error(std::size_t at_line, const std::string& what)
        : std::runtime_error("line " + std::to_string(at_line) + ": " + what), line(at_line) {}
    std::size_t line;
};

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An uncolored graph, vertices 1..n. Thin input type for the multicolor
/// wrapper; edges are normalized to u < v and deduplicated on use.
struct PlainGraph {
    std::size_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

/// A k-colored graph in which every color class is an independent set, so
/// any clique picks at most one vertex per class. Vertices and colors are
/// 1-indexed. Immutable once constructed; the constructor enforces every
/// format invariant (partition into nonempty classes, no intra-class or
/// duplicate edges, ids in range).
class ColoredGraph {
public:
    ColoredGraph(std::size_t n, std::size_t k, std::vector<std::uint32_t> colors,
                 std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);

    /// Reads the text format:
    ///   p mccq <n> <m> <k>
    ///   c <vertex-id> <color>     (one line per vertex)
    ///   e <u> <v>                 (u < v)
    /// Lines starting with '#' and blank lines are skipped.
    static ColoredGraph parse(std::istream& in);
    static ColoredGraph parse_string(const std::string& text);

    /// Canonical text form: header, then c lines sorted by vertex id, then
    /// e lines sorted numerically. parse(serialize(g)) == g.
    std::string serialize() const;

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    std::uint32_t color(std::uint32_t v) const;
    bool adjacent(std::uint32_t u, std::uint32_t v) const;
    const std::vector<std::uint32_t>& color_class(std::uint32_t c) const;
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const noexcept {
        return edges_;
    }

    friend bool operator==(const ColoredGraph& a, const ColoredGraph& b) noexcept {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.colors_ == b.colors_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0, k_ = 0;
    std::vector<std::uint32_t> colors_;                            // [v-1] -> color of v
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;   // sorted, u < v
    std::vector<std::vector<std::uint32_t>> classes_;              // [c-1] -> vertices
    std::vector<std::vector<bool>> adj_;
};

/// Standard multicolor wrapper: k copies of V(G), copy (v, i) gets color i,
/// and (u, i) ~ (v, j) iff i != j and uv in E(G). The result has a
/// multicolored k-clique exactly when G has a k-clique. Copy (v, i) becomes
/// vertex (i-1)*n + v.
ColoredGraph multicolor_preprocess(const PlainGraph& g, std::size_t k);

/// Exhaustive search over color transversals, pruned by partial adjacency.
/// Returns one vertex per color, sorted by color, or nullopt.
std::optional<std::vector<std::uint32_t>> find_multicolored_clique(const ColoredGraph& g);

inline bool has_multicolored_clique(const ColoredGraph& g) {
    return find_multicolored_clique(g).has_value();
}

/// A colored graph whose vertices carry injective F_q^d labels forming a
/// t-term independent set. This is the input shape the product construction
/// consumes. from_parts re-verifies independence rather than trusting the
/// caller; the check costs C(n, min(t, n)) eliminations.
class LabeledGraph {
public:
    static LabeledGraph from_parts(ColoredGraph graph, std::vector<FVector> labels,
                                   std::uint32_t arity);

    const ColoredGraph& graph() const noexcept { return graph_; }
    const FVector& label(std::uint32_t v) const;
    /// Vertex with the given label, or nullopt.
    std::optional<std::uint32_t> vertex_of(const FVector& vec) const;

    std::uint32_t arity() const noexcept { return arity_; }
    std::size_t dim() const noexcept { return dim_; }
    FieldSpec spec() const noexcept { return spec_; }

private:
    LabeledGraph(ColoredGraph graph, std::vector<FVector> labels, std::uint32_t arity);

    ColoredGraph graph_;
    std::vector<FVector> labels_;  // [v-1] -> label of v
    std::uint32_t arity_;
    std::size_t dim_;
    FieldSpec spec_;
    std::unordered_map<std::string, std::uint32_t> index_;  // digit string -> vertex
};

enum class LabelMode {
    adaptive,    // smallest dimension the greedy scan succeeds at
    guaranteed,  // the dimension formula under which the greedy scan cannot fail
};

/// Labels the vertices of g with a fresh independent set over F_q.
LabeledGraph attach_labels(const ColoredGraph& g, FieldSpec spec, std::uint32_t t,
                           LabelMode mode = LabelMode::adaptive,
                           CandidateOrder order = CandidateOrder::lexicographic,
                           std::uint64_t seed = 0);

}  // namespace gapclique
