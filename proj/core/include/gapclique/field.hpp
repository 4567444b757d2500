#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gapclique {

// Thrown when two operands live over different fields.
struct spec_mismatch_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown on vector-length disagreements and out-of-range coordinate indices.
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct division_by_zero_error : std::domain_error {
    using std::domain_error::domain_error;
};

bool is_prime(std::uint32_t m) noexcept;

class FieldElem;

/// Order of a prime field F_q. Construction rejects non-primes, so a
/// FieldSpec in hand is always a valid field description.
class FieldSpec {
public:
    explicit FieldSpec(std::uint32_t q);

    std::uint32_t q() const noexcept { return q_; }

    /// Element with the given value, which must already lie in [0, q).
    FieldElem elem(std::uint32_t value) const;
    /// Element from an arbitrary integer, reduced mod q (negatives allowed).
    FieldElem reduce(std::int64_t value) const;

    friend bool operator==(FieldSpec a, FieldSpec b) noexcept { return a.q_ == b.q_; }
    friend bool operator!=(FieldSpec a, FieldSpec b) noexcept { return a.q_ != b.q_; }

private:
    std::uint32_t q_;
};

/// Scalar in F_q. Carries its FieldSpec; mixing fields throws rather than
/// silently coercing.
class FieldElem {
public:
    FieldElem(std::uint32_t value, FieldSpec spec);

    std::uint32_t value() const noexcept { return value_; }
    FieldSpec spec() const noexcept { return spec_; }
    bool is_zero() const noexcept { return value_ == 0; }

    FieldElem operator-() const;
    FieldElem inv() const;  // throws division_by_zero_error on 0

    friend FieldElem operator+(FieldElem a, FieldElem b);
    friend FieldElem operator-(FieldElem a, FieldElem b);
    friend FieldElem operator*(FieldElem a, FieldElem b);

    friend bool operator==(FieldElem a, FieldElem b) noexcept {
        return a.spec_ == b.spec_ && a.value_ == b.value_;
    }
    friend bool operator!=(FieldElem a, FieldElem b) noexcept { return !(a == b); }

private:
    std::uint32_t value_;
    FieldSpec spec_;
};

/// Vector over F_q. Coordinate access is 1-indexed to match the usual
/// algebraic convention; raw storage (coords()) is a plain 0-indexed array.
class FVector {
public:
    FVector(std::vector<std::uint32_t> coords, FieldSpec spec);

    static FVector zero(std::size_t dim, FieldSpec spec);
    /// Unit vector e_i (1-indexed), i in [1, dim].
    static FVector unit(std::size_t i, std::size_t dim, FieldSpec spec);

    std::size_t dim() const noexcept { return coords_.size(); }
    FieldSpec spec() const noexcept { return spec_; }
    bool is_zero() const noexcept;

    std::uint32_t at(std::size_t i) const;      // 1-indexed
    FieldElem elem(std::size_t i) const;        // 1-indexed
    void set(std::size_t i, FieldElem v);       // 1-indexed
    void set(std::size_t i, std::uint32_t v);   // 1-indexed, value must be < q

    const std::vector<std::uint32_t>& coords() const noexcept { return coords_; }

    FVector operator-() const;
    friend FVector operator+(const FVector& a, const FVector& b);
    friend FVector operator-(const FVector& a, const FVector& b);
    friend FVector operator*(FieldElem s, const FVector& v);

    friend bool operator==(const FVector& a, const FVector& b) noexcept {
        return a.spec_ == b.spec_ && a.coords_ == b.coords_;
    }
    friend bool operator!=(const FVector& a, const FVector& b) noexcept { return !(a == b); }
    /// Lexicographic with coordinate 1 most significant; only meaningful
    /// between vectors of equal spec and dimension.
    std::strong_ordering operator<=>(const FVector& other) const noexcept;

    /// Base-q digit string, coordinate 1 first (so (2,0,1) over F_3 is "201").
    /// Fields with q > 10 use dot-separated decimal coordinates instead.
    std::string to_digits() const;
    static FVector from_digits(std::string_view digits, std::size_t dim, FieldSpec spec);

    /// Counting-order rank of the vector, digits read as a base-q numeral.
    /// Throws std::overflow_error when the rank itself exceeds 2^64 - 1.
    std::uint64_t index() const;
    static FVector from_index(std::uint64_t index, std::size_t dim, FieldSpec spec);

    /// Advance to the successor in counting order (last coordinate fastest).
    /// Returns false when wrapping from the all-(q-1) vector back to zero.
    bool increment() noexcept;

private:
    std::vector<std::uint32_t> coords_;
    FieldSpec spec_;
};

/// Positions (1-indexed, ascending) where the two vectors disagree.
std::vector<std::size_t> diff(const FVector& a, const FVector& b);
/// Hamming distance, |diff(a, b)|.
std::size_t hamming(const FVector& a, const FVector& b);

}  // namespace gapclique
