#include "gapclique/graph.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace gapclique {

ColoredGraph::ColoredGraph(std::size_t n, std::size_t k, std::vector<std::uint32_t> colors,
                           std::vector<std::pair<std::uint32_t, std::uint32_t>> edges)
    : n_(n), k_(k), colors_(std::move(colors)), edges_(std::move(edges)) {
    if (k_ < 1) throw validation_error("need at least one color");
    if (colors_.size() != n_) {
        throw validation_error("got " + std::to_string(colors_.size()) + " colors for " +
                               std::to_string(n_) + " vertices");
    }
    classes_.resize(k_);
    for (std::size_t v = 0; v < n_; ++v) {
        std::uint32_t c = colors_[v];
        if (c < 1 || c > k_) {
            throw validation_error("vertex " + std::to_string(v + 1) + " has color " +
                                   std::to_string(c) + ", valid range is [1, " +
                                   std::to_string(k_) + "]");
        }
        classes_[c - 1].push_back(static_cast<std::uint32_t>(v + 1));
    }
    for (std::size_t c = 0; c < k_; ++c) {
        if (classes_[c].empty()) {
            // an empty class makes a k-clique impossible; treat as malformed
            // rather than as a silent No instance
            throw validation_error("color class " + std::to_string(c + 1) + " is empty");
        }
    }

    adj_.assign(n_, std::vector<bool>(n_, false));
    for (auto& [u, v] : edges_) {
        if (u < 1 || u > n_ || v < 1 || v > n_) {
            throw validation_error("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                   ") out of range");
        }
        if (u >= v) {
            throw validation_error("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                   ") not in u < v form");
        }
        if (colors_[u - 1] == colors_[v - 1]) {
            throw validation_error("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                   ") joins two vertices of color " +
                                   std::to_string(colors_[u - 1]));
        }
        if (adj_[u - 1][v - 1]) {
            throw validation_error("duplicate edge (" + std::to_string(u) + ", " +
                                   std::to_string(v) + ")");
        }
        adj_[u - 1][v - 1] = adj_[v - 1][u - 1] = true;
    }
    std::sort(edges_.begin(), edges_.end());
}

ColoredGraph ColoredGraph::parse(std::istream& in) {
    std::size_t n = 0, m = 0, k = 0;
    bool seen_header = false;
    std::vector<std::optional<std::uint32_t>> colors;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
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
            if (!(ls >> fmt >> n >> m >> k) || fmt != "mccq") {
                throw parse_error(lineno, "expected 'p mccq <n> <m> <k>'");
            }
            seen_header = true;
            colors.assign(n, std::nullopt);
        } else if (tag == "c") {
            if (!seen_header) throw parse_error(lineno, "c line before p line");
            std::uint32_t v = 0, c = 0;
            if (!(ls >> v >> c)) throw parse_error(lineno, "expected 'c <vertex-id> <color>'");
            if (v < 1 || v > n) throw parse_error(lineno, "vertex id " + std::to_string(v) + " out of range");
            if (colors[v - 1]) throw parse_error(lineno, "vertex " + std::to_string(v) + " colored twice");
            colors[v - 1] = c;
        } else if (tag == "e") {
            if (!seen_header) throw parse_error(lineno, "e line before p line");
            std::uint32_t u = 0, v = 0;
            if (!(ls >> u >> v)) throw parse_error(lineno, "expected 'e <u> <v>'");
            edges.emplace_back(u, v);
        } else {
            throw parse_error(lineno, "unknown line tag '" + tag + "'");
        }
    }

    if (!seen_header) throw parse_error(lineno, "missing p line");
    if (edges.size() != m) {
        throw parse_error(lineno, "header promises " + std::to_string(m) + " edges, file has " +
                                      std::to_string(edges.size()));
    }
    std::vector<std::uint32_t> filled(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (!colors[v]) {
            throw parse_error(lineno, "vertex " + std::to_string(v + 1) + " has no color line");
        }
        filled[v] = *colors[v];
    }
    return ColoredGraph(n, k, std::move(filled), std::move(edges));
}

ColoredGraph ColoredGraph::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

std::string ColoredGraph::serialize() const {
    std::ostringstream out;
    out << "p mccq " << n_ << ' ' << edges_.size() << ' ' << k_ << '\n';
    for (std::size_t v = 0; v < n_; ++v) {
        out << "c " << v + 1 << ' ' << colors_[v] << '\n';
    }
    for (auto& [u, v] : edges_) {
        out << "e " << u << ' ' << v << '\n';
    }
    return out.str();
}

std::uint32_t ColoredGraph::color(std::uint32_t v) const {
    if (v < 1 || v > n_) throw std::out_of_range("vertex id " + std::to_string(v));
    return colors_[v - 1];
}

bool ColoredGraph::adjacent(std::uint32_t u, std::uint32_t v) const {
    if (u < 1 || u > n_ || v < 1 || v > n_) {
        throw std::out_of_range("vertex pair (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    return adj_[u - 1][v - 1];
}

const std::vector<std::uint32_t>& ColoredGraph::color_class(std::uint32_t c) const {
    if (c < 1 || c > k_) throw std::out_of_range("color " + std::to_string(c));
    return classes_[c - 1];
}

ColoredGraph multicolor_preprocess(const PlainGraph& g, std::size_t k) {
    if (k < 1) throw validation_error("need at least one color");
    if (g.n < 1) throw validation_error("need at least one vertex");
    std::size_t n = g.n;

    // normalize and deduplicate the input edges
    std::vector<std::pair<std::uint32_t, std::uint32_t>> base;
    base.reserve(g.edges.size());
    for (auto [u, v] : g.edges) {
        if (u < 1 || u > n || v < 1 || v > n) {
            throw validation_error("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                   ") out of range");
        }
        if (u == v) throw validation_error("self loop at vertex " + std::to_string(u));
        base.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());

    std::vector<std::uint32_t> colors(n * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t v = 0; v < n; ++v) {
            colors[i * n + v] = static_cast<std::uint32_t>(i + 1);
        }
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            for (auto [u, v] : base) {
                // both copy orders: (u in class i, v in class j) and vice versa
                edges.emplace_back(static_cast<std::uint32_t>(i * n + u),
                                   static_cast<std::uint32_t>(j * n + v));
                edges.emplace_back(static_cast<std::uint32_t>(i * n + v),
                                   static_cast<std::uint32_t>(j * n + u));
            }
        }
    }
    return ColoredGraph(n * k, k, std::move(colors), std::move(edges));
}

namespace {

bool extend_transversal(const ColoredGraph& g, std::vector<std::uint32_t>& picked,
                        std::size_t next_color) {
    if (next_color > g.k()) return true;
    for (std::uint32_t v : g.color_class(static_cast<std::uint32_t>(next_color))) {
        bool ok = true;
        for (std::uint32_t u : picked) {
            if (!g.adjacent(u, v)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        picked.push_back(v);
        if (extend_transversal(g, picked, next_color + 1)) return true;
        picked.pop_back();
    }
    return false;
}

}  // namespace

std::optional<std::vector<std::uint32_t>> find_multicolored_clique(const ColoredGraph& g) {
    std::vector<std::uint32_t> picked;
    picked.reserve(g.k());
    if (extend_transversal(g, picked, 1)) return picked;
    return std::nullopt;
}

LabeledGraph::LabeledGraph(ColoredGraph graph, std::vector<FVector> labels, std::uint32_t arity)
    : graph_(std::move(graph)),
      labels_(std::move(labels)),
      arity_(arity),
      dim_(labels_.empty() ? 0 : labels_[0].dim()),
      spec_(labels_.empty() ? FieldSpec(2) : labels_[0].spec()) {
    for (std::size_t v = 0; v < labels_.size(); ++v) {
        auto [it, fresh] = index_.emplace(labels_[v].to_digits(), static_cast<std::uint32_t>(v + 1));
        if (!fresh) {
            throw validation_error("vertices " + std::to_string(it->second) + " and " +
                                   std::to_string(v + 1) + " share a label");
        }
    }
}

LabeledGraph LabeledGraph::from_parts(ColoredGraph graph, std::vector<FVector> labels,
                                      std::uint32_t arity) {
    if (labels.size() != graph.n()) {
        throw validation_error("got " + std::to_string(labels.size()) + " labels for " +
                               std::to_string(graph.n()) + " vertices");
    }
    IndependenceCheck check = verify_t_independent(labels, arity);
    if (!check.independent) {
        std::string which;
        for (std::size_t i : check.witness) {
            which += (which.empty() ? "" : ", ") + std::to_string(i + 1);
        }
        throw validation_error("labels of vertices {" + which + "} are linearly dependent");
    }
    return LabeledGraph(std::move(graph), std::move(labels), arity);
}

const FVector& LabeledGraph::label(std::uint32_t v) const {
    if (v < 1 || v > labels_.size()) throw std::out_of_range("vertex id " + std::to_string(v));
    return labels_[v - 1];
}

std::optional<std::uint32_t> LabeledGraph::vertex_of(const FVector& vec) const {
    auto it = index_.find(vec.to_digits());
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

LabeledGraph attach_labels(const ColoredGraph& g, FieldSpec spec, std::uint32_t t, LabelMode mode,
                           CandidateOrder order, std::uint64_t seed) {
    std::vector<FVector> labels;
    if (mode == LabelMode::adaptive) {
        AdaptiveResult r = adaptive_construct(g.n(), spec, t, order, seed);
        labels = std::move(r.set.vectors);
    } else {
        std::size_t d = guaranteed_dimension(g.n(), spec, t);
        GreedyResult r = greedy_construct(g.n(), spec, t, d, order, seed);
        if (!r.success) {
            // the formula guarantees success; reaching this is a library bug
            throw std::logic_error("greedy construction failed at its guaranteed dimension");
        }
        labels = std::move(r.set.vectors);
    }
    return LabeledGraph::from_parts(g, std::move(labels), t);
}

}  // namespace gapclique
