// Serial reference vs OpenMP kernels on a synthetic graph of about 1e5
// elements. Run: build/bench/tantra_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "tantra/graph.hpp"
#include "tantra/kernels.hpp"
#include "tantra/metrics.hpp"
#include "tantra/query.hpp"
#include "tantra/validator.hpp"

namespace {

using namespace tantra;

constexpr std::size_t kElements = 100000;

// Random perspectives; one element in 50 carries a numeric property.
const TantraGraph& synthetic_graph() {
  static const TantraGraph g = [] {
    TantraGraph g;
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> aspect(0, kAspectCount - 1);
    std::uniform_int_distribution<int> level(0, kPerspectiveCount - 1);
    std::vector<ElementId> ids;
    ids.reserve(kElements);
    for (std::size_t i = 0; i < kElements; ++i) {
      const auto a = static_cast<Aspect>(aspect(rng));
      Element e = g.new_element(a, "node " + std::to_string(i), "bench");
      if (i % 50 == 0) e.set_property("weight", static_cast<double>(i));
      PromotionPayload p;
      p.definition = "synthetic";
      p.logical_attrs = {{"i", Literal{static_cast<double>(i)}}};
      p.schema_config = SchemaConfig{{"Node"}, {}};
      p.final_id = e.id();
      const int to = level(rng);
      for (int l = 1; l <= to; ++l) e = promote(e, static_cast<Perspective>(l), p);
      ids.push_back(g.insert_element(std::move(e)));
    }
    std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
    for (std::size_t i = 0; i < kElements; ++i) {
      Relationship r;
      r.rel_type = i % 3 == 0 ? "FINANCED_BY" : "LINKS";
      r.source = ids[pick(rng)];
      r.target = ids[pick(rng)];
      g.insert_relationship(std::move(r));
    }
    return g;
  }();
  return g;
}

const std::vector<const Element*>& snapshot() {
  static const std::vector<const Element*> v = [] {
    std::vector<const Element*> out;
    for (const auto& [id, e] : synthetic_graph().elements()) out.push_back(&e);
    return out;
  }();
  return v;
}

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_Coverage(benchmark::State& state) {
  const auto& els = snapshot();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::coverage(mode(state), els));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(els.size()));
}

void BM_NumericOnNonWhy(benchmark::State& state) {
  const auto& els = snapshot();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::numeric_on_non_why(mode(state), els));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(els.size()));
}

void BM_Incomplete(benchmark::State& state) {
  const auto& els = snapshot();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::incomplete(mode(state), els));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(els.size()));
}

void BM_Validate(benchmark::State& state) {
  const auto& g = synthetic_graph();
  const auto policy = SchemaPolicy::default_policy();
  for (auto _ : state) benchmark::DoNotOptimize(validate(g, policy, mode(state)));
}

void BM_Match(benchmark::State& state) {
  const auto& g = synthetic_graph();
  const Query q = parse_query("MATCH (a:Who)-[:LINKS]->(b:What) RETURN a, b");
  for (auto _ : state) benchmark::DoNotOptimize(match_all(g, q, mode(state)));
}

void BM_Separation(benchmark::State& state) {
  const auto& g = synthetic_graph();
  const auto a = GroupSelector::parse("aspect:Who");
  const auto b = GroupSelector::parse("*");
  for (auto _ : state) {
    benchmark::DoNotOptimize(separation_score(g, SeparationKind::Capability, a, b,
                                              MetricsConfig::default_config(), mode(state)));
  }
}

// Arg 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_Coverage)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_NumericOnNonWhy)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Incomplete)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Validate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Match)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Separation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
