#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include <gapclique/clique_solver.hpp>
#include <gapclique/harness.hpp>
#include <gapclique/product.hpp>
#include <gapclique/sidon.hpp>

using namespace gapclique;

namespace {

void bm_field_mul_inv(benchmark::State& state) {
    FieldSpec spec(static_cast<std::uint32_t>(state.range(0)));
    std::vector<FieldElem> elems;
    for (std::uint32_t v = 1; v < spec.q(); ++v) elems.push_back(spec.elem(v));
    std::size_t i = 0;
    for (auto _ : state) {
        FieldElem a = elems[i % elems.size()];
        FieldElem b = elems[(i * 7 + 1) % elems.size()];
        benchmark::DoNotOptimize(a * b);
        benchmark::DoNotOptimize(a.inv());
        ++i;
    }
}
BENCHMARK(bm_field_mul_inv)->Arg(2)->Arg(3)->Arg(101);

void bm_vector_axpy(benchmark::State& state) {
    FieldSpec spec(3);
    std::size_t dim = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    std::vector<std::uint32_t> ca(dim), cb(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        ca[i] = rng() % 3;
        cb[i] = rng() % 3;
    }
    FVector a(ca, spec), b(cb, spec);
    FieldElem c = spec.elem(2);
    for (auto _ : state) benchmark::DoNotOptimize(a + c * b);
}
BENCHMARK(bm_vector_axpy)->Arg(8)->Arg(32);

void bm_greedy_construct(benchmark::State& state) {
    FieldSpec spec(2);
    std::size_t n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(adaptive_construct(n, spec, 4));
}
BENCHMARK(bm_greedy_construct)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

// Steady-state oracle throughput: random node pairs against a product graph
// whose decode cache is warm after the first sweep.
void bm_adjacency_oracle(benchmark::State& state) {
    ColoredGraph g = generate_instance(InstanceKind::planted_yes, 6, 3, 1, 0.4);
    LabeledGraph labeled = attach_labels(g, FieldSpec(2), 8);
    ProductGraph product(std::move(labeled), Variant::improved);

    std::uint64_t count = *product.node_count();
    std::vector<std::pair<HNode, HNode>> pairs;
    std::mt19937_64 rng(7);
    for (int i = 0; i < 4096; ++i) {
        pairs.emplace_back(product.node_at(1 + rng() % count),
                           product.node_at(1 + rng() % count));
    }
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& [a, b] = pairs[i++ % pairs.size()];
        benchmark::DoNotOptimize(product.adjacent(a, b));
    }
}
BENCHMARK(bm_adjacency_oracle);

void bm_materialize(benchmark::State& state) {
    ColoredGraph g = generate_instance(InstanceKind::planted_yes, 6, 3, 1, 0.4);
    Variant variant = state.range(0) == 0 ? Variant::basic : Variant::improved;
    LabeledGraph labeled = attach_labels(g, FieldSpec(2), required_arity(variant));
    ProductGraph product(std::move(labeled), variant);
    for (auto _ : state) benchmark::DoNotOptimize(materialize(product, 1 << 12));
    state.SetLabel(to_string(variant));
}
BENCHMARK(bm_materialize)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void bm_solve_product(benchmark::State& state) {
    ColoredGraph g = generate_instance(InstanceKind::no_instance, 6, 3, 2, 0.5);
    Variant variant = state.range(0) == 0 ? Variant::basic : Variant::improved;
    LabeledGraph labeled = attach_labels(g, FieldSpec(2), required_arity(variant));
    ProductGraph product(std::move(labeled), variant);
    MaterializedProduct mat = materialize(product, 1 << 12);
    for (auto _ : state) benchmark::DoNotOptimize(max_clique(mat.graph));
    state.SetLabel(to_string(variant));
}
BENCHMARK(bm_solve_product)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
