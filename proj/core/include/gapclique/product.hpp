#pragma once

#include <cstdint>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gapclique/clique_solver.hpp"
#include "gapclique/field.hpp"
#include "gapclique/graph.hpp"

namespace gapclique {

/// One vertex of the product graph: a column index r in F_q^k paired with
/// an encoding pi in F_q^d.
struct HNode {
    FVector r;
    FVector pi;

    friend bool operator==(const HNode& a, const HNode& b) { return a.r == b.r && a.pi == b.pi; }
};

enum class Variant {
    basic,     // vertex and edge tests only; hamming >= 3 always adjacent
    improved,  // clique tests up to hamming 4; hamming >= 5 always adjacent
};

/// Labeling arity each variant's decode uniqueness rests on.
constexpr std::uint32_t required_arity(Variant v) {
    return v == Variant::basic ? 4 : 8;
}

/// Which rule settled an adjacency query, plus the decoded source-graph
/// vertices when a test applied. `vertices` lists one decoded vertex per
/// differing column position, in ascending position order; it is empty when
/// the test failed or no decoding was involved.
struct Adjacency {
    enum class Kind {
        non_adjacent,     // same column; no rule grants an edge here
        vertex_test,      // columns differ in one position
        edge_test,        // columns differ in two positions
        clique_test,      // improved only: columns differ in three or four positions
        always_adjacent,  // differing positions exceed the variant's test range
    };

    bool adjacent = false;
    Kind kind = Kind::non_adjacent;
    std::vector<std::uint32_t> vertices;
};

/// The gap-producing self-reduction. Consumes a labeled k-colored graph G
/// and exposes the product graph H on node universe F_q^k x F_q^d as an
/// implicit adjacency oracle. If G has a multicolored k-clique, H has a
/// clique of size q^k; otherwise every clique of H has size at most
/// k*q^(k-1) (basic variant) or q^(k-1) (improved variant).
///
/// Immutable after construction. The adjacency oracle is safe for
/// unrestricted concurrent calls; the decode cache tolerates duplicated
/// work but never tears.
class ProductGraph {
public:
    /// Requires labeling arity >= 4 for basic, >= 8 for improved; the
    /// uniqueness of decoded vertex tuples rests on that independence.
    ProductGraph(LabeledGraph source, Variant variant);

    const LabeledGraph& source() const noexcept { return source_; }
    Variant variant() const noexcept { return variant_; }
    FieldSpec spec() const noexcept { return source_.spec(); }
    std::size_t k() const noexcept { return k_; }
    std::size_t d() const noexcept { return source_.dim(); }

    /// q^(k+d) when it fits in 64 bits, nullopt otherwise.
    std::optional<std::uint64_t> node_count() const;

    /// Bundles (r, pi) after validating shapes against this graph.
    HNode node(FVector r, FVector pi) const;

    /// Node with the given 1-based id in (r, pi) counting order. Requires
    /// the universe to fit in 64 bits.
    HNode node_at(std::uint64_t id) const;
    std::uint64_t id_of(const HNode& node) const;

    /// The adjacency oracle. Symmetric; a node is never adjacent to itself.
    Adjacency adjacency(const HNode& a, const HNode& b) const;
    bool adjacent(const HNode& a, const HNode& b) const;

    /// The unique vertices v_1..v_t with sum_j coeffs[j]*label(v_j) = delta
    /// and v_j in the color class positions[j], or nullopt. Positions are
    /// distinct 1-based colors, coefficients nonzero, t <= 4. Two distinct
    /// solutions would contradict the labeling's independence arity and
    /// raise std::logic_error.
    std::optional<std::vector<std::uint32_t>> decode_delta(
        const FVector& delta, const std::vector<std::uint32_t>& positions,
        const std::vector<FieldElem>& coeffs) const;

    /// The canonical q^k-clique of H for a multicolored k-clique of G:
    /// for every column r the node (r, sum_i r[i]*label(v_i)), in counting
    /// order of r. Throws validation_error unless the witness is one
    /// vertex per color, sorted by color, pairwise adjacent.
    std::vector<HNode> yes_clique(const std::vector<std::uint32_t>& witness) const;

private:
    Adjacency adjacency_basic(const HNode& a, const HNode& b) const;
    Adjacency adjacency_improved(const HNode& a, const HNode& b) const;
    void check_node(const HNode& n) const;

    LabeledGraph source_;
    Variant variant_;
    std::size_t k_;

    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<std::string, std::optional<std::vector<std::uint32_t>>> cache_;
};

/// An explicitly constructed product graph: every node of F_q^k x F_q^d
/// listed in counting order (1-based ids) plus the full adjacency matrix.
struct MaterializedProduct {
    FieldSpec spec;
    std::size_t k = 0;
    std::size_t d = 0;
    std::vector<HNode> nodes;  // nodes[i] has id i+1
    DenseGraph graph;          // on 0-based ids
};

inline constexpr std::uint64_t kDefaultNodeBudget = std::uint64_t{1} << 16;

/// Enumerates all q^(k+d) nodes and queries the oracle on every pair.
/// Refuses with validation_error when the universe exceeds the budget; the
/// message carries the computed size and points at adaptive labeling.
MaterializedProduct materialize(const ProductGraph& p,
                                std::uint64_t node_budget = kDefaultNodeBudget);

/// Text format for materialized product graphs:
///   p hprod <N> <M> <q> <k> <d>
///   v <id> <r-digits> <pi-digits>   (N lines, ids 1..N in counting order)
///   e <id1> <id2>                   (M lines, id1 < id2, sorted)
/// '#' lines and blank lines are comments.
void write_hprod(std::ostream& out, const MaterializedProduct& m);
std::string serialize_hprod(const MaterializedProduct& m);
MaterializedProduct parse_hprod(std::istream& in);
MaterializedProduct parse_hprod_string(const std::string& text);

/// Least direction i in [k] with no clique column in the i-neighborhood of
/// r: for basic, no r + a*e_i occupied; for improved, no occupied column
/// within hamming distance 2 whose difference from r touches i. Returns
/// nullopt when every direction is populated, which certifies that the
/// decode path below recovers a k-clique of G.
std::optional<std::uint32_t> blocked_direction(const ProductGraph& p,
                                               const std::vector<HNode>& clique, const FVector& r);

/// Recovers a multicolored k-clique of G from a clique of H that occupies
/// some column r with populated neighborhoods in all k directions. Returns
/// nullopt when no such center column exists (always the case at or below
/// the variant's soundness bound on No instances). A decoded set failing
/// clique verification raises std::logic_error, as that contradicts the
/// construction's soundness argument.
std::optional<std::vector<std::uint32_t>> decode_clique(const ProductGraph& p,
                                                        const std::vector<HNode>& clique);

/// Counting diagnostics behind the soundness bound. For each occupied
/// column r with blocked direction i_r, the escape set T_r = {r + a*e_{i_r}}
/// must avoid every occupied column, and each unoccupied column may be hit
/// by at most `bound` escape sets (k for basic, 1 for improved).
struct TrOverlap {
    std::size_t occupied = 0;       // columns the clique touches
    std::size_t centers = 0;        // occupied columns with no blocked direction
    std::size_t max_multiplicity = 0;
    std::size_t bound = 0;
    bool escapes_avoid_clique = true;
    bool within_bound = false;      // centers == 0 and both checks hold
};

TrOverlap t_r_overlap(const ProductGraph& p, const std::vector<HNode>& clique);

/// End-to-end check of the reduction's guarantees on one instance:
/// label G, build H, materialize, solve exactly, compare against the
/// variant's completeness and soundness thresholds.
struct GapReport {
    std::uint32_t q = 0;
    std::size_t k = 0;
    std::size_t d = 0;
    Variant variant = Variant::basic;
    bool has_k_clique = false;        // ground truth on G by exhaustive search
    std::size_t omega_h = 0;          // exact clique number of H
    std::uint64_t yes_size = 0;       // q^k
    std::uint64_t bound = 0;          // k*q^(k-1) or q^(k-1)
    bool r1_pass = false;             // has_k_clique implies omega_h >= q^k
    bool r2_pass = false;             // !has_k_clique implies omega_h <= bound
    double runtime_ms = 0.0;
};

GapReport gap_experiment(const ColoredGraph& g, FieldSpec spec, Variant variant,
                         std::uint64_t node_budget = kDefaultNodeBudget,
                         LabelMode mode = LabelMode::adaptive);

}  // namespace gapclique
