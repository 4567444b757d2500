#include "gapclique/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <random>
#include <semaphore>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace gapclique {

namespace {

using nlohmann::json;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t attempt) {
    return seed + 0x9E3779B97F4A7C15ull * (attempt + 1);
}

// Coin flips by raw threshold comparison, identical across standard
// libraries; std::bernoulli_distribution is not pinned down that way.
// For 0 < p < 1 the product p * 2^64 stays below 2^64 in double arithmetic,
// so the cast is safe; the endpoints are handled explicitly.
struct Coin {
    explicit Coin(double p) {
        if (p <= 0.0) {
            never = true;
        } else if (p >= 1.0) {
            threshold = UINT64_MAX;
        } else {
            threshold = static_cast<std::uint64_t>(p * 0x1p64);
        }
    }
    bool flip(std::mt19937_64& rng) const { return !never && rng() <= threshold; }
    std::uint64_t threshold = 0;
    bool never = false;
};

std::vector<std::uint32_t> block_colors(std::size_t n, std::size_t k) {
    std::vector<std::uint32_t> colors(n);
    std::size_t base = n / k, extra = n % k, v = 0;
    for (std::size_t c = 1; c <= k; ++c) {
        std::size_t len = base + (c <= extra ? 1 : 0);
        for (std::size_t i = 0; i < len; ++i) colors[v++] = static_cast<std::uint32_t>(c);
    }
    return colors;
}

ColoredGraph random_colored(std::size_t n, std::size_t k, double p, std::uint64_t seed,
                            bool plant_witness) {
    std::vector<std::uint32_t> colors = block_colors(n, k);
    std::vector<std::uint32_t> first_of_class(k + 1, 0);
    for (std::size_t v = n; v >= 1; --v) first_of_class[colors[v - 1]] = static_cast<std::uint32_t>(v);

    std::mt19937_64 rng(seed);
    Coin coin(p);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t u = 1; u <= n; ++u) {
        for (std::uint32_t v = u + 1; v <= n; ++v) {
            if (colors[u - 1] == colors[v - 1]) continue;
            bool planted = plant_witness && u == first_of_class[colors[u - 1]] &&
                           v == first_of_class[colors[v - 1]];
            // the coin is flipped for every eligible pair so that planting
            // does not shift later pairs' randomness
            bool random_edge = coin.flip(rng);
            if (planted || random_edge) edges.emplace_back(u, v);
        }
    }
    return ColoredGraph(n, k, std::move(colors), std::move(edges));
}

std::uint64_t pow_u64(std::uint64_t base, std::size_t e) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (out > UINT64_MAX / base) return UINT64_MAX;
        out *= base;
    }
    return out;
}

}  // namespace

std::string to_string(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::planted_yes: return "planted-yes";
        case InstanceKind::no_instance: return "no-instance";
        case InstanceKind::random_instance: return "random";
    }
    throw std::logic_error("unreachable");
}

InstanceKind instance_kind_from_string(const std::string& text) {
    if (text == "planted-yes") return InstanceKind::planted_yes;
    if (text == "no-instance") return InstanceKind::no_instance;
    if (text == "random") return InstanceKind::random_instance;
    throw validation_error("unknown instance kind '" + text +
                           "', expected planted-yes, no-instance, or random");
}

std::string to_string(Variant v) {
    return v == Variant::basic ? "basic" : "improved";
}

Variant variant_from_string(const std::string& text) {
    if (text == "basic") return Variant::basic;
    if (text == "improved") return Variant::improved;
    throw validation_error("unknown variant '" + text + "', expected basic or improved");
}

std::string to_string(LabelMode m) {
    return m == LabelMode::adaptive ? "adaptive" : "guaranteed";
}

LabelMode label_mode_from_string(const std::string& text) {
    if (text == "adaptive") return LabelMode::adaptive;
    if (text == "guaranteed") return LabelMode::guaranteed;
    throw validation_error("unknown label mode '" + text + "', expected adaptive or guaranteed");
}

ColoredGraph generate_instance(const GeneratorConfig& cfg) {
    if (cfg.k < 1) throw validation_error("need k >= 1");
    if (cfg.n < cfg.k) {
        throw validation_error("need n >= k, got n = " + std::to_string(cfg.n) +
                               ", k = " + std::to_string(cfg.k));
    }
    if (cfg.edge_probability < 0.0 || cfg.edge_probability > 1.0) {
        throw validation_error("edge probability outside [0, 1]");
    }

    switch (cfg.kind) {
        case InstanceKind::planted_yes:
            return random_colored(cfg.n, cfg.k, cfg.edge_probability, cfg.seed, true);
        case InstanceKind::random_instance:
            return random_colored(cfg.n, cfg.k, cfg.edge_probability, cfg.seed, false);
        case InstanceKind::no_instance: break;
    }

    if (cfg.k == 1) {
        throw validation_error(
            "no-instance is impossible for k = 1: any vertex is a 1-clique");
    }
    // Rejection sampling. The edge probability halves every 8 attempts and
    // hits 0 near the end of the budget, where an edgeless graph settles it.
    constexpr std::uint64_t kAttempts = 64;
    for (std::uint64_t attempt = 0; attempt < kAttempts; ++attempt) {
        double p = attempt >= 56 ? 0.0 : cfg.edge_probability / static_cast<double>(1ull << (attempt / 8));
        ColoredGraph g = random_colored(cfg.n, cfg.k, p, mix_seed(cfg.seed, attempt), false);
        if (!has_multicolored_clique(g)) return g;
    }
    throw std::runtime_error("no-instance sampling exhausted its retry budget");
}

ColoredGraph generate_instance(InstanceKind kind, std::size_t n, std::size_t k,
                               std::uint64_t seed, double edge_probability) {
    return generate_instance(GeneratorConfig{kind, n, k, seed, edge_probability});
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* key) {
                return item.key() == key;
            }) == allowed.end()) {
            throw validation_error("unknown key '" + item.key() + "' in " + where);
        }
    }
}

}  // namespace

SuiteConfig SuiteConfig::from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw validation_error(std::string("suite config is not valid JSON: ") + e.what());
    }
    try {
        if (!root.is_object()) throw validation_error("suite config must be a JSON object");
        reject_unknown_keys(root, {"q", "variant", "mode", "budget", "instances"},
                            "suite config");

        SuiteConfig cfg;
        cfg.spec = FieldSpec(root.at("q").get<std::uint32_t>());
        cfg.variant = variant_from_string(root.at("variant").get<std::string>());
        if (root.contains("mode")) {
            cfg.mode = label_mode_from_string(root["mode"].get<std::string>());
        }
        if (root.contains("budget")) cfg.node_budget = root["budget"].get<std::uint64_t>();

        for (const json& entry : root.at("instances")) {
            if (!entry.is_object()) throw validation_error("instance entries must be objects");
            SuiteInstance inst;
            inst.name = entry.at("name").get<std::string>();
            if (inst.name.empty()) throw validation_error("instance names must be nonempty");
            if (entry.contains("file")) {
                reject_unknown_keys(entry, {"name", "file"}, "instance '" + inst.name + "'");
                inst.file = entry["file"].get<std::string>();
            } else {
                reject_unknown_keys(entry, {"name", "kind", "n", "k", "seed", "p"},
                                    "instance '" + inst.name + "'");
                GeneratorConfig gen;
                gen.kind = instance_kind_from_string(entry.at("kind").get<std::string>());
                gen.n = entry.at("n").get<std::size_t>();
                gen.k = entry.at("k").get<std::size_t>();
                gen.seed = entry.at("seed").get<std::uint64_t>();
                if (entry.contains("p")) gen.edge_probability = entry["p"].get<double>();
                inst.generator = gen;
            }
            cfg.instances.push_back(std::move(inst));
        }
        return cfg;
    } catch (const json::exception& e) {
        throw validation_error(std::string("suite config shape: ") + e.what());
    }
}

namespace {

InstanceOutcome run_one(const SuiteConfig& config, const SuiteInstance& inst) {
    InstanceOutcome outcome;
    outcome.name = inst.name;
    try {
        std::optional<ColoredGraph> g;
        if (inst.file) {
            std::ifstream in(*inst.file);
            if (!in) throw validation_error("cannot open instance file " + *inst.file);
            g = ColoredGraph::parse(in);
        } else if (inst.generator) {
            g = generate_instance(*inst.generator);
        } else {
            throw validation_error("instance entry has neither generator nor file");
        }
        outcome.n = g->n();
        outcome.report =
            gap_experiment(*g, config.spec, config.variant, config.node_budget, config.mode);
    } catch (const std::exception& e) {
        outcome.error = e.what();
    }
    return outcome;
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& config) {
    SuiteReport report;
    report.q = config.spec.q();
    report.variant = config.variant;

    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::counting_semaphore<64> slots(std::min(workers, 64u));
    std::vector<std::future<InstanceOutcome>> jobs;
    jobs.reserve(config.instances.size());
    for (const SuiteInstance& inst : config.instances) {
        jobs.push_back(std::async(std::launch::async, [&config, &inst, &slots] {
            slots.acquire();
            InstanceOutcome outcome = run_one(config, inst);
            slots.release();
            return outcome;
        }));
    }
    for (auto& job : jobs) report.outcomes.push_back(job.get());

    for (const InstanceOutcome& outcome : report.outcomes) {
        if (!outcome.report) {
            ++report.errored;
            continue;
        }
        if (outcome.report->r1_pass) ++report.r1_passed;
        if (outcome.report->r2_pass) ++report.r2_passed;
    }
    std::size_t ok = report.outcomes.size() - report.errored;
    report.all_pass =
        report.errored == 0 && report.r1_passed == ok && report.r2_passed == ok;

    // Yes/No outcomes matched at equal (n, k) witness the multiplicative gap.
    for (const InstanceOutcome& yes : report.outcomes) {
        if (!yes.report || !yes.report->has_k_clique) continue;
        for (const InstanceOutcome& no : report.outcomes) {
            if (!no.report || no.report->has_k_clique) continue;
            if (yes.n != no.n || yes.report->k != no.report->k) continue;
            GapPair pair;
            pair.yes_name = yes.name;
            pair.no_name = no.name;
            pair.omega_yes = yes.report->omega_h;
            pair.omega_no = no.report->omega_h;
            pair.ratio = static_cast<double>(pair.omega_yes) /
                         static_cast<double>(std::max<std::size_t>(pair.omega_no, 1));
            pair.meets_gap = pair.omega_yes >= report.q * pair.omega_no;
            report.pairs.push_back(std::move(pair));
        }
    }

    // Qualitative runtime growth: least-squares slope on log-log axes.
    std::vector<std::pair<double, double>> points;
    for (const InstanceOutcome& outcome : report.outcomes) {
        if (!outcome.report) continue;
        double x = static_cast<double>(outcome.n) +
                   static_cast<double>(pow_u64(outcome.report->q, outcome.report->k));
        double y = std::max(outcome.report->runtime_ms, 1e-6);
        points.emplace_back(std::log(x), std::log(y));
    }
    std::size_t distinct = 0;
    std::sort(points.begin(), points.end());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i == 0 || points[i].first != points[i - 1].first) ++distinct;
    }
    if (distinct >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto& [x, y] : points) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double m = static_cast<double>(points.size());
        report.log_log_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    }
    return report;
}

std::string SuiteReport::to_json() const {
    json root;
    root["q"] = q;
    root["variant"] = gapclique::to_string(variant);
    root["all_pass"] = all_pass;
    root["summary"] = {{"total", outcomes.size()},
                       {"r1_passed", r1_passed},
                       {"r2_passed", r2_passed},
                       {"errored", errored}};

    root["instances"] = json::array();
    for (const InstanceOutcome& outcome : outcomes) {
        json entry;
        entry["instance"] = outcome.name;
        if (outcome.report) {
            const GapReport& r = *outcome.report;
            entry["n"] = outcome.n;
            entry["q"] = r.q;
            entry["k"] = r.k;
            entry["d"] = r.d;
            entry["variant"] = gapclique::to_string(r.variant);
            entry["has_k_clique"] = r.has_k_clique;
            entry["omega_H"] = r.omega_h;
            entry["yes_size"] = r.yes_size;
            entry["bound"] = r.bound;
            entry["r1_pass"] = r.r1_pass;
            entry["r2_pass"] = r.r2_pass;
            entry["runtime_ms"] = r.runtime_ms;
        } else {
            entry["error"] = outcome.error;
        }
        root["instances"].push_back(std::move(entry));
    }

    root["gap_pairs"] = json::array();
    for (const GapPair& pair : pairs) {
        root["gap_pairs"].push_back({{"yes", pair.yes_name},
                                     {"no", pair.no_name},
                                     {"omega_yes", pair.omega_yes},
                                     {"omega_no", pair.omega_no},
                                     {"ratio", pair.ratio},
                                     {"meets_gap", pair.meets_gap}});
    }

    json scaling;
    scaling["note"] =
        "log-log slope of runtime against |V(G)| + q^k; a qualitative polynomial-growth "
        "indicator, not an asymptotic claim";
    if (log_log_slope) {
        scaling["log_log_slope"] = *log_log_slope;
    } else {
        scaling["log_log_slope"] = nullptr;
    }
    root["runtime_scaling"] = std::move(scaling);
    return root.dump(2) + "\n";
}

}  // namespace gapclique
