#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gapclique/field.hpp"

namespace gapclique {

// Work counters for the greedy constructor, used by cost assertions and
// surfaced in tool output.
struct SidonBuildStats {
    std::uint64_t candidates_scanned = 0;
    std::uint64_t span_tests = 0;

    SidonBuildStats& operator+=(const SidonBuildStats& o) {
        candidates_scanned += o.candidates_scanned;
        span_tests += o.span_tests;
        return *this;
    }
};

/// A set of vectors in F_q^dim in which every subset of at most `arity`
/// vectors is linearly independent. Produced by the constructors below or
/// assembled by hand and checked with verify_t_independent.
struct IndependentSet {
    std::vector<FVector> vectors;
    std::uint32_t arity = 0;
    std::size_t dim = 0;
};

struct IndependenceCheck {
    bool independent = false;
    // When !independent: 0-indexed positions of a dependent subset.
    std::vector<std::size_t> witness;
};

/// Checks that every subset of at most t vectors is linearly independent.
/// Enumerates subsets of size min(t, |S|), which is equivalent and cheaper;
/// cost is C(|S|, min(t, |S|)) rank computations.
IndependenceCheck verify_t_independent(const std::vector<FVector>& vectors, std::uint32_t t);

struct SidonViolation {
    FieldElem a, b;
    FVector x, y, x_alt, y_alt;  // a*x + b*y == a*x_alt + b*y_alt but {x,y} != {x_alt,y_alt}
};

/// Brute-force search for a witness against the linear Sidon property:
/// nonzero a, b and x != y, x' != y' with a*x + b*y = a*x' + b*y' although
/// {x,y} and {x',y'} differ as pairs. Returns std::nullopt when the set is
/// linear Sidon. Cost is O(q^2 * |S|^4 * dim).
std::optional<SidonViolation> linear_sidon_violation(const std::vector<FVector>& vectors);

/// Dimension at which the greedy construction is guaranteed to find n
/// vectors with every 4 of them independent: ceil(3*log_q(n) + 3).
/// Computed with exact integer arithmetic, no floating point.
std::size_t dimension_4term(std::size_t n, FieldSpec spec);

/// Guaranteed dimension for general arity t: ceil((2t-1)*log_q(n) + (2t-1)).
std::size_t dimension_tterm(std::size_t n, FieldSpec spec, std::uint32_t t);

/// The prescribed bound for the requested arity: the sharper 4-term formula
/// when t == 4, the general one otherwise.
std::size_t guaranteed_dimension(std::size_t n, FieldSpec spec, std::uint32_t t);

/// Smallest d with q^d >= n, and at least 1; starting point for the
/// adaptive search.
std::size_t min_dimension(std::size_t n, FieldSpec spec);

enum class CandidateOrder {
    lexicographic,  // counting order, coordinate 1 most significant
    seeded,         // uniformly shuffled enumeration of F_q^d
};

struct GreedyResult {
    bool success = false;
    IndependentSet set;               // complete on success, progress so far on failure
    std::size_t failed_at_step = 0;   // 0 on success, else |set|+1 when F_q^d ran out
    SidonBuildStats stats;
};

/// Greedy construction: scan F_q^d in the requested order and keep every
/// vector that no subset of at most t-1 kept vectors spans. The kept set is
/// t-term independent by construction. Candidates once rejected stay
/// rejected (spans only grow), so the scan is a single pass.
///
/// Seeded order materializes the enumeration and therefore requires
/// q^d <= 2^22; lexicographic order streams and has no such limit.
GreedyResult greedy_construct(std::size_t n, FieldSpec spec, std::uint32_t t, std::size_t d,
                              CandidateOrder order = CandidateOrder::lexicographic,
                              std::uint64_t seed = 0);

struct AdaptiveResult {
    IndependentSet set;
    std::size_t d = 0;
    SidonBuildStats stats;  // accumulated over all attempted dimensions
};

/// Smallest-dimension construction: try d = min_dimension(n, q) upward and
/// return the first greedy success. Termination is guaranteed at
/// guaranteed_dimension(n, q, t); failing there raises std::logic_error since it
/// would contradict the construction guarantee.
AdaptiveResult adaptive_construct(std::size_t n, FieldSpec spec, std::uint32_t t,
                                  CandidateOrder order = CandidateOrder::lexicographic,
                                  std::uint64_t seed = 0);

}  // namespace gapclique
