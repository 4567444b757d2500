#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gapclique/graph.hpp"
#include "gapclique/product.hpp"

namespace gapclique {

enum class InstanceKind {
    planted_yes,      // embeds a multicolored k-clique, then random edges
    no_instance,      // rejection-sampled until no k-clique exists
    random_instance,  // unconditioned random inter-color edges
};

std::string to_string(InstanceKind kind);
InstanceKind instance_kind_from_string(const std::string& text);

std::string to_string(Variant v);
Variant variant_from_string(const std::string& text);

std::string to_string(LabelMode m);
LabelMode label_mode_from_string(const std::string& text);

struct GeneratorConfig {
    InstanceKind kind = InstanceKind::random_instance;
    std::size_t n = 0;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    double edge_probability = 0.5;
};

/// Random k-colored instance on contiguous, near-equal color blocks:
/// vertices 1..n split into k runs, longer runs first. Deterministic in the
/// config alone. For no-instance, rejection sampling retries with the edge
/// probability halved every few attempts, reaching 0 (edgeless is always a
/// No instance for k >= 2); k = 1 has no No instances and is refused.
ColoredGraph generate_instance(const GeneratorConfig& cfg);
ColoredGraph generate_instance(InstanceKind kind, std::size_t n, std::size_t k,
                               std::uint64_t seed, double edge_probability = 0.5);

/// One suite entry: either a generator spec or an mccq file path.
struct SuiteInstance {
    std::string name;
    std::optional<GeneratorConfig> generator;
    std::optional<std::string> file;
};

struct SuiteConfig {
    FieldSpec spec{2};
    Variant variant = Variant::improved;
    LabelMode mode = LabelMode::adaptive;
    std::uint64_t node_budget = kDefaultNodeBudget;
    std::vector<SuiteInstance> instances;

    /// Schema:
    ///   {
    ///     "q": 2,
    ///     "variant": "basic" | "improved",
    ///     "mode": "adaptive" | "guaranteed",      optional
    ///     "budget": 65536,                        optional
    ///     "instances": [
    ///       {"name": ..., "kind": "planted-yes" | "no-instance" | "random",
    ///        "n": 6, "k": 3, "seed": 1, "p": 0.5},
    ///       {"name": ..., "file": "instance.mccq"}
    ///     ]
    ///   }
    /// Unknown keys are rejected, as silent typos would invalidate reports.
    static SuiteConfig from_json(const std::string& text);
};

struct InstanceOutcome {
    std::string name;
    std::size_t n = 0;                // |V(G)|, 0 when the instance never loaded
    std::optional<GapReport> report;  // absent when the run failed
    std::string error;                // failure description, empty on success
};

/// Yes/No outcomes matched at equal (n, k); the reduction promises the
/// observed clique numbers stay a factor q apart.
struct GapPair {
    std::string yes_name;
    std::string no_name;
    std::size_t omega_yes = 0;
    std::size_t omega_no = 0;
    double ratio = 0.0;  // omega_yes / max(omega_no, 1)
    bool meets_gap = false;
};

struct SuiteReport {
    std::uint32_t q = 0;
    Variant variant = Variant::improved;
    std::vector<InstanceOutcome> outcomes;  // in config order
    std::vector<GapPair> pairs;
    std::size_t r1_passed = 0;
    std::size_t r2_passed = 0;
    std::size_t errored = 0;
    bool all_pass = false;  // no errors and every R1/R2 verdict holds

    /// Log-log slope of runtime against |V(G)| + q^k, when at least two
    /// distinct sizes ran. A qualitative polynomial-growth indicator only.
    std::optional<double> log_log_slope;

    std::string to_json() const;
};

/// Runs every instance through gap_experiment, concurrently; failures are
/// recorded per instance and do not stop the suite. Results are ordered by
/// the config regardless of scheduling.
SuiteReport run_suite(const SuiteConfig& config);

}  // namespace gapclique
