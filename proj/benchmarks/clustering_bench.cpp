#include <benchmark/benchmark.h>

#include "workbench/clustering.hpp"
#include "workbench/features.hpp"
#include "workbench/fixtures.hpp"
#include "workbench/rng.hpp"

using namespace workbench;

namespace {

Points random_points(std::size_t count, std::size_t dims, std::uint64_t seed) {
  Rng rng(seed);
  Points points(count, std::vector<double>(dims));
  for (auto& p : points)
    for (double& v : p) v = rng.real01();
  return points;
}

const FeatureTable& fixture_table() {
  static const FeatureTable table = [] {
    std::vector<std::pair<std::string, std::string>> sources;
    for (const GeneratedFile& file : generate_fixtures(default_fixture_spec()))
      sources.emplace_back(file.name, file.text);
    return extract_corpus(parse_corpus(sources), {});
  }();
  return table;
}

}  // namespace

static void BM_KMeansPP(benchmark::State& state) {
  const Points points = random_points(static_cast<std::size_t>(state.range(0)), 24, 7);
  for (auto _ : state) {
    Partition p = kmeans(points, 15, KMeansInit::PlusPlus, 3);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_KMeansPP)->Arg(120)->Arg(500);

static void BM_GmmDiag(benchmark::State& state) {
  const Points points = random_points(static_cast<std::size_t>(state.range(0)), 24, 7);
  for (auto _ : state) {
    GmmResult r = gmm_em(points, 8, CovarianceKind::Diagonal, 3);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_GmmDiag)->Arg(120);

static void BM_FarthestFirst(benchmark::State& state) {
  const Points points = random_points(static_cast<std::size_t>(state.range(0)), 24, 7);
  for (auto _ : state) {
    Partition p = farthest_first(points, 15, 3);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_FarthestFirst)->Arg(120)->Arg(500);

static void BM_RunRepeatedOnFixture(benchmark::State& state) {
  ClusterParams params;
  params.runs = static_cast<std::size_t>(state.range(0));
  params.master_seed = 42;
  for (auto _ : state) {
    ClusterReport report = run_repeated(fixture_table(), params);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_RunRepeatedOnFixture)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_ExtractFixtureCorpus(benchmark::State& state) {
  std::vector<std::pair<std::string, std::string>> sources;
  for (const GeneratedFile& file : generate_fixtures(default_fixture_spec()))
    sources.emplace_back(file.name, file.text);
  const Corpus corpus = parse_corpus(sources);
  for (auto _ : state) {
    FeatureTable table = extract_corpus(corpus, {});
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_ExtractFixtureCorpus);
