#include "gapclique/clique_solver.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gapclique {

DenseGraph::DenseGraph(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

void DenseGraph::check(std::size_t v) const {
    if (v >= n_) {
        throw std::out_of_range("vertex " + std::to_string(v) + " out of range, n = " +
                                std::to_string(n_));
    }
}

void DenseGraph::add_edge(std::size_t u, std::size_t v) {
    check(u);
    check(v);
    if (u == v) throw std::invalid_argument("self loop at vertex " + std::to_string(u));
    bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
    bits_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
}

bool DenseGraph::adjacent(std::size_t u, std::size_t v) const {
    check(u);
    check(v);
    return (bits_[u * words_ + v / 64] >> (v % 64)) & 1;
}

std::size_t DenseGraph::degree(std::size_t v) const {
    check(v);
    std::size_t total = 0;
    for (std::size_t w = 0; w < words_; ++w) total += std::popcount(bits_[v * words_ + w]);
    return total;
}

std::size_t DenseGraph::edge_count() const {
    std::size_t twice = 0;
    for (std::size_t v = 0; v < n_; ++v) twice += degree(v);
    return twice / 2;
}

namespace {

// Branch and bound in the style of Tomita's MCQ: vertices are renumbered by
// descending degree, candidate sets live in packed bitsets, and a greedy
// sequential coloring of each candidate set gives the pruning bound.
class MaxCliqueSearch {
public:
    MaxCliqueSearch(const DenseGraph& g, std::optional<std::size_t> stop_above)
        : n_(g.n()), words_(g.words_per_row()), stop_above_(stop_above) {
        order_.resize(n_);
        std::iota(order_.begin(), order_.end(), 0u);
        std::stable_sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
            return g.degree(a) > g.degree(b);
        });
        // Adjacency rebuilt in search order so candidate sets are plain masks.
        adj_.assign(n_ * words_, 0);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (i != j && g.adjacent(order_[i], order_[j])) {
                    adj_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
                }
            }
        }
    }

    CliqueResult run() {
        CliqueResult result;
        if (n_ > 0) {
            std::vector<std::uint64_t> all(words_, 0);
            for (std::size_t v = 0; v < n_; ++v) all[v / 64] |= std::uint64_t{1} << (v % 64);
            current_.reserve(n_);
            expand(all);
        }
        result.size = best_.size();
        result.witness.reserve(best_.size());
        for (std::uint32_t v : best_) result.witness.push_back(order_[v]);
        std::sort(result.witness.begin(), result.witness.end());
        result.nodes_expanded = nodes_;
        result.early_exit = done_;
        return result;
    }

private:
    void expand(std::vector<std::uint64_t> cands) {
        std::vector<std::uint32_t> va;
        std::vector<std::size_t> color;
        number_sort(cands, va, color);
        for (std::size_t idx = va.size(); idx-- > 0;) {
            if (current_.size() + color[idx] <= best_.size()) return;  // colors ascend
            std::uint32_t v = va[idx];
            ++nodes_;
            current_.push_back(v);
            std::vector<std::uint64_t> next(words_);
            bool any = false;
            for (std::size_t w = 0; w < words_; ++w) {
                next[w] = cands[w] & adj_[v * words_ + w];
                any |= next[w] != 0;
            }
            if (any) {
                expand(std::move(next));
            } else if (current_.size() > best_.size()) {
                best_ = current_;
                if (stop_above_ && best_.size() > *stop_above_) done_ = true;
            }
            current_.pop_back();
            if (done_) return;
            cands[v / 64] &= ~(std::uint64_t{1} << (v % 64));
        }
    }

    // Greedy sequential coloring; emits candidates ordered by color class so
    // the expansion loop can walk them from the back and cut a whole suffix.
    void number_sort(const std::vector<std::uint64_t>& cands, std::vector<std::uint32_t>& va,
                     std::vector<std::size_t>& color) {
        std::vector<std::uint64_t> uncolored = cands;
        std::vector<std::uint64_t> cls(words_);
        std::size_t k = 1;
        while (true) {
            bool empty = true;
            for (std::uint64_t w : uncolored) empty &= w == 0;
            if (empty) break;
            cls = uncolored;
            while (true) {
                std::uint32_t v = first_bit(cls);
                if (v == kNone) break;
                clear_bit(uncolored, v);
                clear_bit(cls, v);
                for (std::size_t w = 0; w < words_; ++w) cls[w] &= ~adj_[v * words_ + w];
                va.push_back(v);
                color.push_back(k);
            }
            ++k;
        }
    }

    static constexpr std::uint32_t kNone = UINT32_MAX;

    std::uint32_t first_bit(const std::vector<std::uint64_t>& bits) const {
        for (std::size_t w = 0; w < words_; ++w) {
            if (bits[w]) return static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits[w]));
        }
        return kNone;
    }

    static void clear_bit(std::vector<std::uint64_t>& bits, std::uint32_t v) {
        bits[v / 64] &= ~(std::uint64_t{1} << (v % 64));
    }

    std::size_t n_;
    std::size_t words_;
    std::optional<std::size_t> stop_above_;
    std::vector<std::uint32_t> order_;
    std::vector<std::uint64_t> adj_;
    std::vector<std::uint32_t> current_;
    std::vector<std::uint32_t> best_;
    std::uint64_t nodes_ = 0;
    bool done_ = false;
};

}  // namespace

CliqueResult max_clique(const DenseGraph& g, std::optional<std::size_t> stop_above) {
    return MaxCliqueSearch(g, stop_above).run();
}

BoundCheck clique_exceeds(const DenseGraph& g, std::size_t bound) {
    CliqueResult r = max_clique(g, bound);
    BoundCheck check;
    check.nodes_expanded = r.nodes_expanded;
    check.exceeds = r.size > bound;
    if (check.exceeds) check.witness = std::move(r.witness);
    return check;
}

bool verify_clique(const DenseGraph& g, const std::vector<std::uint32_t>& members) {
    for (std::uint32_t v : members) {
        if (v >= g.n()) return false;
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (members[i] == members[j]) return false;
            if (!g.adjacent(members[i], members[j])) return false;
        }
    }
    return true;
}

}  // namespace gapclique
