#include "gapclique/product.hpp"

#include <algorithm>
#include <chrono>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace gapclique {

namespace {

// q^e, or nullopt when the product leaves 64 bits.
std::optional<std::uint64_t> checked_pow(std::uint64_t q, std::size_t e) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (out > UINT64_MAX / q) return std::nullopt;
        out *= q;
    }
    return out;
}

const char* variant_name(Variant v) {
    return v == Variant::basic ? "basic" : "improved";
}

}  // namespace

ProductGraph::ProductGraph(LabeledGraph source, Variant variant)
    : source_(std::move(source)), variant_(variant), k_(source_.graph().k()) {
    if (source_.arity() < required_arity(variant)) {
        throw validation_error(std::string("the ") + variant_name(variant) +
                               " variant needs a labeling of independence arity >= " +
                               std::to_string(required_arity(variant)) + ", got " +
                               std::to_string(source_.arity()));
    }
}

std::optional<std::uint64_t> ProductGraph::node_count() const {
    return checked_pow(spec().q(), k_ + d());
}

HNode ProductGraph::node(FVector r, FVector pi) const {
    HNode n{std::move(r), std::move(pi)};
    check_node(n);
    return n;
}

void ProductGraph::check_node(const HNode& n) const {
    if (n.r.spec() != spec() || n.pi.spec() != spec()) {
        throw spec_mismatch_error("node is over F_" + std::to_string(n.r.spec().q()) +
                                  ", this product graph is over F_" + std::to_string(spec().q()));
    }
    if (n.r.dim() != k_ || n.pi.dim() != d()) {
        throw dimension_error("node shape (" + std::to_string(n.r.dim()) + ", " +
                              std::to_string(n.pi.dim()) + ") does not match (k, d) = (" +
                              std::to_string(k_) + ", " + std::to_string(d()) + ")");
    }
}

HNode ProductGraph::node_at(std::uint64_t id) const {
    auto total = node_count();
    if (!total) throw std::overflow_error("node universe exceeds 2^64, no flat ids");
    if (id < 1 || id > *total) {
        throw std::out_of_range("node id " + std::to_string(id) + " outside [1, " +
                                std::to_string(*total) + "]");
    }
    std::uint64_t cols = *checked_pow(spec().q(), d());
    return HNode{FVector::from_index((id - 1) / cols, k_, spec()),
                 FVector::from_index((id - 1) % cols, d(), spec())};
}

std::uint64_t ProductGraph::id_of(const HNode& n) const {
    check_node(n);
    auto total = node_count();
    if (!total) throw std::overflow_error("node universe exceeds 2^64, no flat ids");
    std::uint64_t cols = *checked_pow(spec().q(), d());
    return n.r.index() * cols + n.pi.index() + 1;
}

bool ProductGraph::adjacent(const HNode& a, const HNode& b) const {
    return adjacency(a, b).adjacent;
}

Adjacency ProductGraph::adjacency(const HNode& a, const HNode& b) const {
    check_node(a);
    check_node(b);
    return variant_ == Variant::basic ? adjacency_basic(a, b) : adjacency_improved(a, b);
}

Adjacency ProductGraph::adjacency_basic(const HNode& a, const HNode& b) const {
    Adjacency res;
    std::vector<std::size_t> positions = diff(a.r, b.r);
    if (positions.empty()) return res;  // same column, never an edge

    const ColoredGraph& g = source_.graph();
    if (positions.size() == 1) {
        // b.r = a.r + coef*e_i; an edge iff b.pi - a.pi is coef times the
        // label of a color-i vertex
        res.kind = Adjacency::Kind::vertex_test;
        std::size_t i = positions[0];
        FieldElem coef = b.r.elem(i) - a.r.elem(i);
        FVector candidate = coef.inv() * (b.pi - a.pi);
        std::optional<std::uint32_t> v = source_.vertex_of(candidate);
        if (v && g.color(*v) == i) {
            res.adjacent = true;
            res.vertices = {*v};
        }
        return res;
    }
    if (positions.size() == 2) {
        res.kind = Adjacency::Kind::edge_test;
        std::vector<std::uint32_t> pos(positions.begin(), positions.end());
        std::vector<FieldElem> coeffs{b.r.elem(pos[0]) - a.r.elem(pos[0]),
                                      b.r.elem(pos[1]) - a.r.elem(pos[1])};
        auto tuple = decode_delta(b.pi - a.pi, pos, coeffs);
        if (tuple && g.adjacent((*tuple)[0], (*tuple)[1])) {
            res.adjacent = true;
            res.vertices = *tuple;
        }
        return res;
    }
    res.kind = Adjacency::Kind::always_adjacent;
    res.adjacent = true;
    return res;
}

Adjacency ProductGraph::adjacency_improved(const HNode& a, const HNode& b) const {
    Adjacency res;
    std::vector<std::size_t> positions = diff(a.r, b.r);
    std::size_t t = positions.size();
    if (t == 0) return res;
    if (t >= 5) {
        res.kind = Adjacency::Kind::always_adjacent;
        res.adjacent = true;
        return res;
    }

    res.kind = t == 1   ? Adjacency::Kind::vertex_test
               : t == 2 ? Adjacency::Kind::edge_test
                        : Adjacency::Kind::clique_test;
    std::vector<std::uint32_t> pos(positions.begin(), positions.end());
    std::vector<FieldElem> coeffs;
    coeffs.reserve(t);
    for (std::uint32_t i : pos) coeffs.push_back(a.r.elem(i) - b.r.elem(i));
    auto tuple = decode_delta(a.pi - b.pi, pos, coeffs);
    if (!tuple) return res;

    const ColoredGraph& g = source_.graph();
    for (std::size_t x = 0; x < t; ++x) {
        for (std::size_t y = x + 1; y < t; ++y) {
            if (!g.adjacent((*tuple)[x], (*tuple)[y])) return res;
        }
    }
    res.adjacent = true;
    res.vertices = *tuple;
    return res;
}

std::optional<std::vector<std::uint32_t>> ProductGraph::decode_delta(
    const FVector& delta, const std::vector<std::uint32_t>& positions,
    const std::vector<FieldElem>& coeffs) const {
    std::size_t t = positions.size();
    if (t < 1 || t > 4) {
        throw std::invalid_argument("decode handles 1 to 4 positions, got " + std::to_string(t));
    }
    if (coeffs.size() != t) {
        throw std::invalid_argument("got " + std::to_string(coeffs.size()) + " coefficients for " +
                                    std::to_string(t) + " positions");
    }
    if (delta.spec() != spec() || delta.dim() != d()) {
        throw dimension_error("delta must live in F_q^d");
    }
    for (std::size_t j = 0; j < t; ++j) {
        if (positions[j] < 1 || positions[j] > k_) {
            throw std::invalid_argument("position " + std::to_string(positions[j]) +
                                        " outside [1, " + std::to_string(k_) + "]");
        }
        if (coeffs[j].spec() != spec() || coeffs[j].is_zero()) {
            throw std::invalid_argument("decode coefficients must be nonzero field elements");
        }
        for (std::size_t l = j + 1; l < t; ++l) {
            if (positions[j] == positions[l]) {
                throw std::invalid_argument("decode positions must be distinct");
            }
        }
    }

    std::string key = delta.to_digits();
    key += '|';
    for (std::size_t j = 0; j < t; ++j) {
        key += std::to_string(positions[j]);
        key += ',';
        key += std::to_string(coeffs[j].value());
        key += ';';
    }
    {
        std::lock_guard<std::mutex> hold(cache_mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }

    // Enumerate the first t-1 color classes; the last vertex is forced, so
    // look its label up directly.
    const ColoredGraph& g = source_.graph();
    std::vector<std::vector<std::uint32_t>> solutions;
    std::vector<std::uint32_t> tuple(t);
    auto close_tuple = [&](const FVector& remainder) {
        FVector target = coeffs[t - 1].inv() * remainder;
        std::optional<std::uint32_t> v = source_.vertex_of(target);
        if (v && g.color(*v) == positions[t - 1]) {
            tuple[t - 1] = *v;
            solutions.push_back(tuple);
        }
    };
    if (t == 1) {
        close_tuple(delta);
    } else {
        // depth-first over tuple prefixes, carrying the unexplained remainder
        std::vector<const std::vector<std::uint32_t>*> classes;
        for (std::size_t j = 0; j + 1 < t; ++j) classes.push_back(&g.color_class(positions[j]));
        std::vector<std::size_t> at(t - 1, 0);
        std::vector<FVector> remainder(t, delta);
        std::size_t depth = 0;
        while (true) {
            if (at[depth] == classes[depth]->size()) {
                if (depth == 0) break;
                --depth;
                ++at[depth];
                continue;
            }
            std::uint32_t v = (*classes[depth])[at[depth]];
            tuple[depth] = v;
            remainder[depth + 1] = remainder[depth] - coeffs[depth] * source_.label(v);
            if (depth + 2 == t) {
                close_tuple(remainder[depth + 1]);
                ++at[depth];
            } else {
                ++depth;
                at[depth] = 0;
            }
        }
    }
    if (solutions.size() > 1) {
        throw std::logic_error(
            "two distinct decodings for one delta; the labeling is not independent at the "
            "arity this variant requires");
    }

    std::optional<std::vector<std::uint32_t>> result;
    if (!solutions.empty()) result = std::move(solutions.front());
    {
        std::lock_guard<std::mutex> hold(cache_mutex_);
        cache_.emplace(key, result);
    }
    return result;
}

std::vector<HNode> ProductGraph::yes_clique(const std::vector<std::uint32_t>& witness) const {
    const ColoredGraph& g = source_.graph();
    if (witness.size() != k_) {
        throw validation_error("witness has " + std::to_string(witness.size()) +
                               " vertices, need one per color, k = " + std::to_string(k_));
    }
    for (std::size_t i = 1; i <= k_; ++i) {
        std::uint32_t v = witness[i - 1];
        if (v < 1 || v > g.n()) {
            throw validation_error("witness vertex " + std::to_string(v) + " out of range");
        }
        if (g.color(v) != i) {
            throw validation_error("witness position " + std::to_string(i) + " holds vertex " +
                                   std::to_string(v) + " of color " + std::to_string(g.color(v)) +
                                   "; list one vertex per color, in color order");
        }
    }
    for (std::size_t i = 0; i < k_; ++i) {
        for (std::size_t j = i + 1; j < k_; ++j) {
            if (!g.adjacent(witness[i], witness[j])) {
                throw validation_error("witness vertices " + std::to_string(witness[i]) + " and " +
                                       std::to_string(witness[j]) + " are not adjacent");
            }
        }
    }

    auto size = checked_pow(spec().q(), k_);
    if (!size || *size > (std::uint64_t{1} << 26)) {
        throw std::invalid_argument("a yes-clique here would have q^k > 2^26 nodes");
    }
    std::vector<FVector> labels;
    labels.reserve(k_);
    for (std::uint32_t v : witness) labels.push_back(source_.label(v));

    std::vector<HNode> out;
    out.reserve(*size);
    FVector r = FVector::zero(k_, spec());
    do {
        FVector pi = FVector::zero(d(), spec());
        for (std::size_t i = 1; i <= k_; ++i) {
            if (r.at(i) != 0) pi = pi + r.elem(i) * labels[i - 1];
        }
        out.push_back(HNode{r, std::move(pi)});
    } while (r.increment());
    return out;
}

MaterializedProduct materialize(const ProductGraph& p, std::uint64_t node_budget) {
    auto count = p.node_count();
    std::string size_text = "q^(k+d) = " + std::to_string(p.spec().q()) + "^" +
                            std::to_string(p.k() + p.d());
    if (count) {
        size_text += " = " + std::to_string(*count);
    } else {
        size_text += " (beyond 2^64)";
    }
    if (!count || *count > node_budget) {
        throw validation_error("refusing to materialize " + size_text +
                               " nodes, budget is " + std::to_string(node_budget) +
                               "; adaptive labeling shrinks d for small instances");
    }

    std::size_t n = static_cast<std::size_t>(*count);
    std::vector<HNode> nodes;
    nodes.reserve(n);
    FVector r = FVector::zero(p.k(), p.spec());
    do {
        FVector pi = FVector::zero(p.d(), p.spec());
        do {
            nodes.push_back(HNode{r, pi});
        } while (pi.increment());
    } while (r.increment());

    DenseGraph g(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (p.adjacent(nodes[u], nodes[v])) g.add_edge(u, v);
        }
    }
    return MaterializedProduct{p.spec(), p.k(), p.d(), std::move(nodes), std::move(g)};
}

void write_hprod(std::ostream& out, const MaterializedProduct& m) {
    std::size_t n = m.nodes.size();
    out << "p hprod " << n << ' ' << m.graph.edge_count() << ' ' << m.spec.q() << ' ' << m.k
        << ' ' << m.d << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << "v " << (i + 1) << ' ' << m.nodes[i].r.to_digits() << ' '
            << m.nodes[i].pi.to_digits() << '\n';
    }
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (m.graph.adjacent(u, v)) out << "e " << (u + 1) << ' ' << (v + 1) << '\n';
        }
    }
}

std::string serialize_hprod(const MaterializedProduct& m) {
    std::ostringstream out;
    write_hprod(out, m);
    return out.str();
}

MaterializedProduct parse_hprod(std::istream& in) {
    std::size_t n = 0, m = 0, k = 0, d = 0;
    std::uint32_t q = 0;
    bool seen_header = false;
    std::optional<FieldSpec> spec;
    std::vector<std::optional<HNode>> nodes;
    std::optional<DenseGraph> graph;
    std::size_t edges_seen = 0;
    std::size_t lineno = 0;
    std::string line;

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;

        if (tag == "p") {
            std::string fmt;
            if (seen_header) throw parse_error(lineno, "duplicate p line");
            if (!(ls >> fmt >> n >> m >> q >> k >> d) || fmt != "hprod") {
                throw parse_error(lineno, "expected 'p hprod <N> <M> <q> <k> <d>'");
            }
            if (k < 1 || d < 1) throw parse_error(lineno, "need k >= 1 and d >= 1");
            try {
                spec.emplace(q);
            } catch (const std::invalid_argument& e) {
                throw parse_error(lineno, e.what());
            }
            auto expect = checked_pow(q, k + d);
            if (!expect || *expect != n) {
                throw parse_error(lineno, "node count " + std::to_string(n) +
                                              " is not q^(k+d) = " + std::to_string(q) + "^" +
                                              std::to_string(k + d));
            }
            seen_header = true;
            nodes.assign(n, std::nullopt);
            graph.emplace(n);
        } else if (tag == "v") {
            if (!seen_header) throw parse_error(lineno, "v line before p line");
            std::uint64_t id = 0;
            std::string r_digits, pi_digits;
            if (!(ls >> id >> r_digits >> pi_digits)) {
                throw parse_error(lineno, "expected 'v <id> <r-digits> <pi-digits>'");
            }
            if (id < 1 || id > n) {
                throw parse_error(lineno, "node id " + std::to_string(id) + " out of range");
            }
            if (nodes[id - 1]) throw parse_error(lineno, "node " + std::to_string(id) + " listed twice");
            try {
                HNode node{FVector::from_digits(r_digits, k, *spec),
                           FVector::from_digits(pi_digits, d, *spec)};
                std::uint64_t cols = *checked_pow(q, d);
                if (node.r.index() * cols + node.pi.index() + 1 != id) {
                    throw parse_error(lineno, "node " + std::to_string(id) +
                                                  " is out of counting order for (" + r_digits +
                                                  ", " + pi_digits + ")");
                }
                nodes[id - 1] = std::move(node);
            } catch (const std::invalid_argument& e) {
                throw parse_error(lineno, e.what());
            }
        } else if (tag == "e") {
            if (!seen_header) throw parse_error(lineno, "e line before p line");
            std::uint64_t u = 0, v = 0;
            if (!(ls >> u >> v)) throw parse_error(lineno, "expected 'e <id1> <id2>'");
            if (u < 1 || v < 1 || u > n || v > n) {
                throw parse_error(lineno, "edge endpoint out of range");
            }
            if (u >= v) throw parse_error(lineno, "edges must have id1 < id2");
            if (graph->adjacent(u - 1, v - 1)) {
                throw parse_error(lineno, "duplicate edge (" + std::to_string(u) + ", " +
                                              std::to_string(v) + ")");
            }
            graph->add_edge(u - 1, v - 1);
            ++edges_seen;
        } else {
            throw parse_error(lineno, "unknown line tag '" + tag + "'");
        }
    }

    if (!seen_header) throw parse_error(lineno, "missing p line");
    if (edges_seen != m) {
        throw parse_error(lineno, "header promises " + std::to_string(m) + " edges, file has " +
                                      std::to_string(edges_seen));
    }
    std::vector<HNode> filled;
    filled.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!nodes[i]) {
            throw parse_error(lineno, "node " + std::to_string(i + 1) + " has no v line");
        }
        filled.push_back(std::move(*nodes[i]));
    }
    return MaterializedProduct{*spec, k, d, std::move(filled), std::move(*graph)};
}

MaterializedProduct parse_hprod_string(const std::string& text) {
    std::istringstream in(text);
    return parse_hprod(in);
}

namespace {

// Occupied columns of a clique, keyed by digit string for set membership.
std::unordered_set<std::string> column_set(const std::vector<HNode>& clique) {
    std::unordered_set<std::string> out;
    for (const HNode& node : clique) out.insert(node.r.to_digits());
    return out;
}

// Walks the variant's neighborhood of r through direction i and reports the
// first occupied column, if any. The basic neighborhood is {r + a*e_i}; the
// improved one adds every column at hamming distance 2 whose difference
// touches i.
std::optional<FVector> occupied_neighbor(const ProductGraph& p,
                                         const std::unordered_set<std::string>& occupied,
                                         const FVector& r, std::size_t i) {
    std::uint32_t q = p.spec().q();
    for (std::uint32_t a = 1; a < q; ++a) {
        FVector r2 = r;
        r2.set(i, r.elem(i) + p.spec().elem(a));
        if (occupied.count(r2.to_digits())) return r2;
    }
    if (p.variant() == Variant::improved) {
        for (std::size_t j = 1; j <= p.k(); ++j) {
            if (j == i) continue;
            for (std::uint32_t a = 1; a < q; ++a) {
                for (std::uint32_t b = 1; b < q; ++b) {
                    FVector r2 = r;
                    r2.set(i, r.elem(i) + p.spec().elem(a));
                    r2.set(j, r.elem(j) + p.spec().elem(b));
                    if (occupied.count(r2.to_digits())) return r2;
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<std::uint32_t> blocked_in(const ProductGraph& p,
                                        const std::unordered_set<std::string>& occupied,
                                        const FVector& r) {
    for (std::size_t i = 1; i <= p.k(); ++i) {
        if (!occupied_neighbor(p, occupied, r, i)) return static_cast<std::uint32_t>(i);
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::uint32_t> blocked_direction(const ProductGraph& p,
                                               const std::vector<HNode>& clique,
                                               const FVector& r) {
    if (r.spec() != p.spec() || r.dim() != p.k()) {
        throw dimension_error("column index must live in F_q^k");
    }
    return blocked_in(p, column_set(clique), r);
}

std::optional<std::vector<std::uint32_t>> decode_clique(const ProductGraph& p,
                                                        const std::vector<HNode>& clique) {
    for (std::size_t x = 0; x < clique.size(); ++x) {
        for (std::size_t y = x + 1; y < clique.size(); ++y) {
            if (!p.adjacent(clique[x], clique[y])) {
                throw validation_error("input nodes are not pairwise adjacent");
            }
        }
    }
    // Pairwise adjacency rules out two nodes in one column, so this map is
    // injective on the clique.
    std::unordered_map<std::string, const HNode*> by_column;
    std::unordered_set<std::string> occupied;
    for (const HNode& node : clique) {
        std::string key = node.r.to_digits();
        by_column.emplace(key, &node);
        occupied.insert(std::move(key));
    }

    const ColoredGraph& g = p.source().graph();
    for (const HNode& center : clique) {
        if (blocked_in(p, occupied, center.r)) continue;
        // every direction has an occupied neighbor; harvest one decoded
        // vertex per color from the center's adjacencies
        std::vector<std::uint32_t> found(p.k(), 0);
        for (std::size_t i = 1; i <= p.k(); ++i) {
            FVector r2 = *occupied_neighbor(p, occupied, center.r, i);
            const HNode& partner = *by_column.at(r2.to_digits());
            Adjacency adj = p.adjacency(center, partner);
            if (!adj.adjacent) {
                throw std::logic_error("clique members fail the adjacency oracle mid-decode");
            }
            for (std::uint32_t v : adj.vertices) {
                if (g.color(v) == i) found[i - 1] = v;
            }
            if (found[i - 1] == 0) {
                throw std::logic_error("vertex test against direction " + std::to_string(i) +
                                       " decoded no color-" + std::to_string(i) + " vertex");
            }
        }
        for (std::size_t x = 1; x <= p.k(); ++x) {
            for (std::size_t y = x + 1; y <= p.k(); ++y) {
                if (!g.adjacent(found[x - 1], found[y - 1])) {
                    throw std::logic_error(
                        "decoded vertices are not a clique; this contradicts the soundness "
                        "argument, the labeling or oracle is defective");
                }
            }
        }
        return found;
    }
    return std::nullopt;
}

TrOverlap t_r_overlap(const ProductGraph& p, const std::vector<HNode>& clique) {
    std::unordered_set<std::string> occupied = column_set(clique);
    TrOverlap report;
    report.occupied = occupied.size();
    report.bound = p.variant() == Variant::basic ? p.k() : 1;

    std::unordered_map<std::string, std::size_t> hits;
    std::unordered_set<std::string> seen_columns;
    for (const HNode& node : clique) {
        std::string key = node.r.to_digits();
        if (!seen_columns.insert(key).second) continue;
        auto dir = blocked_in(p, occupied, node.r);
        if (!dir) {
            ++report.centers;
            continue;
        }
        for (std::uint32_t a = 1; a < p.spec().q(); ++a) {
            FVector escape = node.r;
            escape.set(*dir, node.r.elem(*dir) + p.spec().elem(a));
            std::string ek = escape.to_digits();
            if (occupied.count(ek)) {
                report.escapes_avoid_clique = false;
            } else {
                ++hits[ek];
            }
        }
    }
    for (const auto& entry : hits) {
        report.max_multiplicity = std::max(report.max_multiplicity, entry.second);
    }
    report.within_bound = report.centers == 0 && report.escapes_avoid_clique &&
                          report.max_multiplicity <= report.bound;
    return report;
}

GapReport gap_experiment(const ColoredGraph& g, FieldSpec spec, Variant variant,
                         std::uint64_t node_budget, LabelMode mode) {
    auto start = std::chrono::steady_clock::now();
    GapReport report;
    report.q = spec.q();
    report.k = g.k();
    report.variant = variant;
    report.has_k_clique = has_multicolored_clique(g);

    LabeledGraph labeled = attach_labels(g, spec, required_arity(variant), mode);
    report.d = labeled.dim();
    ProductGraph product(std::move(labeled), variant);
    MaterializedProduct mat = materialize(product, node_budget);
    report.omega_h = max_clique(mat.graph).size;

    report.yes_size = *checked_pow(spec.q(), g.k());
    std::uint64_t column_bound = *checked_pow(spec.q(), g.k() - 1);
    report.bound = variant == Variant::basic ? g.k() * column_bound : column_bound;
    report.r1_pass = !report.has_k_clique || report.omega_h >= report.yes_size;
    report.r2_pass = report.has_k_clique || report.omega_h <= report.bound;
    report.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

}  // namespace gapclique
