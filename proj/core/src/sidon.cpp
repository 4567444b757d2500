#include "gapclique/sidon.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace gapclique {

namespace {

// Row-echelon accumulator over F_q. Rows are kept pivot-normalized so
// membership tests are straight reductions.
class RowBasis {
public:
    RowBasis(FieldSpec spec, std::size_t dim) : spec_(spec), dim_(dim) {}

    std::size_t rank() const { return rows_.size(); }

    // Reduce w against the current rows; true iff it lands on zero.
    bool contains(const FVector& w) const {
        std::vector<std::uint32_t> v = w.coords();
        reduce(v);
        return std::all_of(v.begin(), v.end(), [](std::uint32_t c) { return c == 0; });
    }

    // Add w to the basis. Returns false (leaving the basis unchanged) when w
    // is already in the span.
    bool add(const FVector& w) {
        std::vector<std::uint32_t> v = w.coords();
        reduce(v);
        std::size_t p = 0;
        while (p < dim_ && v[p] == 0) ++p;
        if (p == dim_) return false;
        // normalize the pivot to 1
        std::uint64_t inv = spec_.elem(v[p]).inv().value();
        for (auto& c : v) c = static_cast<std::uint32_t>(inv * c % spec_.q());
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

private:
    void reduce(std::vector<std::uint32_t>& v) const {
        std::uint64_t q = spec_.q();
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            std::uint64_t f = v[pivots_[r]];
            if (f == 0) continue;
            std::uint64_t neg = q - f;
            for (std::size_t j = pivots_[r]; j < dim_; ++j) {
                v[j] = static_cast<std::uint32_t>((v[j] + neg * rows_[r][j]) % q);
            }
        }
    }

    FieldSpec spec_;
    std::size_t dim_;
    std::vector<std::vector<std::uint32_t>> rows_;
    std::vector<std::size_t> pivots_;
};

void require_uniform(const std::vector<FVector>& vectors) {
    for (std::size_t i = 1; i < vectors.size(); ++i) {
        if (vectors[i].spec() != vectors[0].spec()) {
            throw spec_mismatch_error("vectors mix field orders");
        }
        if (vectors[i].dim() != vectors[0].dim()) {
            throw dimension_error("vectors mix dimensions");
        }
    }
}

// Visit all size-m index subsets of [0, n); f returns false to stop early.
template <typename F>
bool for_each_combination(std::size_t n, std::size_t m, F&& f) {
    if (m > n) return true;
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    if (m == 0) return f(idx);
    while (true) {
        if (!f(idx)) return false;
        // advance to the next combination
        std::size_t i = m;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - m) break;
            if (i == 0) return true;
        }
        ++idx[i];
        for (std::size_t j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Exact comparison helpers for the dimension formulas. Numbers are
// little-endian base-2^32 limb vectors; sizes stay tiny (n, q < 2^32 and
// exponents a few hundred at most).
using BigU = std::vector<std::uint64_t>;

void big_mul_small(BigU& a, std::uint64_t s) {
    std::uint64_t carry = 0;
    for (auto& limb : a) {
        std::uint64_t p = limb * s + carry;  // limb, s < 2^32 so this fits
        limb = p & 0xffffffffu;
        carry = p >> 32;
    }
    while (carry) {
        a.push_back(carry & 0xffffffffu);
        carry >>= 32;
    }
}

BigU big_pow(std::uint64_t base, std::size_t exp) {
    BigU out{1};
    for (std::size_t i = 0; i < exp; ++i) big_mul_small(out, base);
    return out;
}

int big_cmp(const BigU& a, const BigU& b) {
    std::size_t na = a.size(), nb = b.size();
    while (na > 0 && a[na - 1] == 0) --na;
    while (nb > 0 && b[nb - 1] == 0) --nb;
    if (na != nb) return na < nb ? -1 : 1;
    for (std::size_t i = na; i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

// Smallest e with q^e >= target.
std::size_t smallest_power_at_least(std::uint64_t q, const BigU& target) {
    BigU p{1};
    std::size_t e = 0;
    while (big_cmp(p, target) < 0) {
        big_mul_small(p, q);
        ++e;
    }
    return e;
}

std::size_t dimension_for_constant(std::size_t n, FieldSpec spec, std::size_t c) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    // smallest integer d >= c*log_q(n) + c, i.e. d = c + min{e : q^e >= n^c}
    return c + smallest_power_at_least(spec.q(), big_pow(n, c));
}

}  // namespace

IndependenceCheck verify_t_independent(const std::vector<FVector>& vectors, std::uint32_t t) {
    if (t < 1) throw std::invalid_argument("independence arity must be at least 1");
    require_uniform(vectors);
    std::size_t n = vectors.size();
    if (n == 0) return {true, {}};
    std::size_t dim = vectors[0].dim();
    FieldSpec spec = vectors[0].spec();

    // A dependent subset of size <= t extends to one of size exactly
    // min(t, n), so checking that size alone is enough.
    std::size_t m = std::min<std::size_t>(t, n);
    IndependenceCheck out{true, {}};
    for_each_combination(n, m, [&](const std::vector<std::size_t>& idx) {
        RowBasis basis(spec, dim);
        for (std::size_t i : idx) {
            if (!basis.add(vectors[i])) {
                out.independent = false;
                out.witness = idx;
                return false;
            }
        }
        return true;
    });
    return out;
}

std::optional<SidonViolation> linear_sidon_violation(const std::vector<FVector>& vectors) {
    require_uniform(vectors);
    std::size_t n = vectors.size();
    if (n == 0) return std::nullopt;
    FieldSpec spec = vectors[0].spec();

    auto same_pair = [&](std::size_t x, std::size_t y, std::size_t x2, std::size_t y2) {
        // multiset equality on vector values
        return (vectors[x] == vectors[x2] && vectors[y] == vectors[y2]) ||
               (vectors[x] == vectors[y2] && vectors[y] == vectors[x2]);
    };

    for (std::uint32_t av = 1; av < spec.q(); ++av) {
        FieldElem a = spec.elem(av);
        for (std::uint32_t bv = 1; bv < spec.q(); ++bv) {
            FieldElem b = spec.elem(bv);
            for (std::size_t x = 0; x < n; ++x) {
                for (std::size_t y = 0; y < n; ++y) {
                    if (vectors[x] == vectors[y]) continue;
                    FVector lhs = a * vectors[x] + b * vectors[y];
                    for (std::size_t x2 = 0; x2 < n; ++x2) {
                        for (std::size_t y2 = 0; y2 < n; ++y2) {
                            if (vectors[x2] == vectors[y2]) continue;
                            if (same_pair(x, y, x2, y2)) continue;
                            if (lhs == a * vectors[x2] + b * vectors[y2]) {
                                return SidonViolation{a, b, vectors[x], vectors[y],
                                                      vectors[x2], vectors[y2]};
                            }
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::size_t dimension_4term(std::size_t n, FieldSpec spec) {
    return dimension_for_constant(n, spec, 3);
}

std::size_t dimension_tterm(std::size_t n, FieldSpec spec, std::uint32_t t) {
    if (t < 1) throw std::invalid_argument("independence arity must be at least 1");
    return dimension_for_constant(n, spec, 2 * static_cast<std::size_t>(t) - 1);
}

std::size_t guaranteed_dimension(std::size_t n, FieldSpec spec, std::uint32_t t) {
    return t == 4 ? dimension_4term(n, spec) : dimension_tterm(n, spec, t);
}

std::size_t min_dimension(std::size_t n, FieldSpec spec) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    return std::max<std::size_t>(1, smallest_power_at_least(spec.q(), BigU{n}));
}

namespace {

// Echelon forms of every size-min(t-1, |found|) subset of the kept vectors.
// A candidate passes iff no form reduces it to zero. Note the empty form (at
// |found| == 0) rejects exactly the zero vector, which must never be kept.
std::vector<RowBasis> build_checkers(const std::vector<FVector>& found, std::uint32_t t,
                                     FieldSpec spec, std::size_t d) {
    std::size_t m = std::min<std::size_t>(t - 1, found.size());
    std::vector<RowBasis> checkers;
    for_each_combination(found.size(), m, [&](const std::vector<std::size_t>& idx) {
        RowBasis basis(spec, d);
        for (std::size_t i : idx) basis.add(found[i]);
        checkers.push_back(std::move(basis));
        return true;
    });
    return checkers;
}

}  // namespace

GreedyResult greedy_construct(std::size_t n, FieldSpec spec, std::uint32_t t, std::size_t d,
                              CandidateOrder order, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    if (t < 1) throw std::invalid_argument("independence arity must be at least 1");
    if (d < 1) throw std::invalid_argument("need dimension >= 1");

    GreedyResult res;
    std::vector<FVector>& found = res.set.vectors;
    res.set.arity = t;
    res.set.dim = d;
    std::vector<RowBasis> checkers = build_checkers(found, t, spec, d);

    auto consider = [&](const FVector& w) {
        ++res.stats.candidates_scanned;
        for (const RowBasis& basis : checkers) {
            ++res.stats.span_tests;
            if (basis.contains(w)) return false;
        }
        // The span tests cover this for t >= 2; with t == 1 they only reject
        // zero, so keep the output duplicate-free explicitly.
        if (std::find(found.begin(), found.end(), w) != found.end()) return false;
        found.push_back(w);
        if (found.size() < n) checkers = build_checkers(found, t, spec, d);
        return true;
    };

    if (order == CandidateOrder::lexicographic) {
        FVector cur = FVector::zero(d, spec);
        do {
            if (consider(cur) && found.size() == n) break;
        } while (cur.increment());
    } else {
        // Shuffled enumeration needs the whole space in memory; refuse
        // spaces that make that unreasonable.
        const std::uint64_t kSeededCap = 1ull << 22;
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < d; ++i) {
            total *= spec.q();
            if (total > kSeededCap) {
                throw std::invalid_argument(
                    "seeded order needs q^d <= 2^22; use lexicographic order instead");
            }
        }
        std::vector<std::uint64_t> perm(total);
        std::iota(perm.begin(), perm.end(), 0);
        std::mt19937_64 rng(seed);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::uint64_t idx : perm) {
            if (consider(FVector::from_index(idx, d, spec)) && found.size() == n) break;
        }
    }

    if (found.size() == n) {
        res.success = true;
    } else {
        res.failed_at_step = found.size() + 1;
    }
    return res;
}

AdaptiveResult adaptive_construct(std::size_t n, FieldSpec spec, std::uint32_t t,
                                  CandidateOrder order, std::uint64_t seed) {
    std::size_t lo = min_dimension(n, spec);
    std::size_t hi = guaranteed_dimension(n, spec, t);
    AdaptiveResult res;
    for (std::size_t d = lo; d <= hi; ++d) {
        GreedyResult g = greedy_construct(n, spec, t, d, order, seed);
        res.stats += g.stats;
        if (g.success) {
            res.set = std::move(g.set);
            res.d = d;
            return res;
        }
    }
    throw std::logic_error("greedy construction failed at its guaranteed dimension");
}

}  // namespace gapclique
