#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "workbench/features.hpp"

namespace workbench {

// The five clustering back ends. kmeans-pp / kmeans-random differ only
// in initialization; gmm-full / gmm-diag only in covariance structure.
enum class AlgorithmKind { KMeansPP, KMeansRandom, GmmFull, GmmDiag, FarthestFirst };

const char* algorithm_name(AlgorithmKind kind) noexcept;
AlgorithmKind algorithm_from_name(const std::string& name);  // JsonFormatError on unknown

struct ClusterParams {
  AlgorithmKind algorithm = AlgorithmKind::KMeansPP;
  int granularity = 3;  // 1..5
  std::size_t runs = 200;
  std::uint64_t master_seed = 0;
  double freq_threshold = 0.6;
  double prox_threshold = 0.5;
  std::size_t max_iterations = 100;
  double tolerance = 1e-6;
  double covariance_floor = 1e-6;
  std::size_t jobs = 1;  // execution knob only; never serialized, never changes output
};

using Points = std::vector<std::vector<double>>;

struct Partition {
  std::vector<std::size_t> assignment;  // point index -> compact cluster id
  std::size_t cluster_count = 0;
  std::vector<double> per_cluster_proximity;
};

// Cluster count for a library of L lemmas at granularity g:
// max(1, floor(L / (11 - g))). Reproduces the published pairs
// (720, g=1..5) -> 72, 80, 90, 102, 120.
std::size_t granularity_to_n(std::size_t corpus_size, int granularity);

enum class KMeansInit { PlusPlus, Random };

// Lloyd iterations to an assignment fixpoint. Ties go to the lowest
// cluster id; an emptied cluster is reseeded with the point farthest
// from the center nearest its stale centroid. objective_trace, when
// given, receives the within-cluster sum of squares per iteration.
Partition kmeans(const Points& points, std::size_t n, KMeansInit init, std::uint64_t seed,
                 std::size_t max_iterations = 100, std::vector<double>* objective_trace = nullptr);

enum class CovarianceKind { Full, Diagonal };

struct GmmResult {
  Partition partition;
  std::vector<double> log_likelihoods;  // one entry per EM iteration
};

// EM on a Gaussian mixture initialized from a kmeans++ run. Covariances
// are floored per dimension; components whose weight underflows are
// dropped and ids compacted. Stops when the log-likelihood improvement
// falls below tolerance or after max_iterations.
GmmResult gmm_em(const Points& points, std::size_t n, CovarianceKind covariance,
                 std::uint64_t seed, std::size_t max_iterations = 100, double tolerance = 1e-6,
                 double covariance_floor = 1e-6);

// First center uniform by seed, then repeatedly the point maximizing
// the distance to its nearest chosen center (ties to lowest index).
Partition farthest_first(const Points& points, std::size_t n, std::uint64_t seed);

// 1 / (1 + mean pairwise Euclidean distance); singletons score 1.
double proximity(const std::vector<std::size_t>& member_indices, const Points& points);

struct ReportCluster {
  std::vector<std::string> lemmas;  // canonically sorted
  double frequency = 0.0;
  double proximity = 0.0;
};

struct ClusterReport {
  ClusterParams params;
  std::size_t cluster_count = 0;  // resolved from granularity
  std::vector<std::string> corpus_lemmas;
  std::vector<ReportCluster> clusters;
};

// Runs the configured algorithm params.runs times with seeds derived
// from params.master_seed, tallies exact lemma-set frequencies, keeps
// sets passing both thresholds, sorted by (frequency desc, proximity
// desc, lemma set). Independent runs may execute on params.jobs threads
// without changing a single output byte.
ClusterReport run_repeated(const FeatureTable& table, const ClusterParams& params);

struct Suggestion {
  std::vector<std::string> lemmas;  // cluster members minus the query
  double frequency = 0.0;
  double proximity = 0.0;
};

// All report clusters containing `lemma`, in report order. Throws
// UnknownLemma if the lemma is not in the report's corpus.
std::vector<Suggestion> suggest(const ClusterReport& report, const std::string& lemma);

// Report JSON with frequency/proximity rounded to 3 decimals; the
// serialization is byte-stable for identical reports.
std::string report_to_json(const ClusterReport& report);
ClusterReport report_from_json(const std::string& text);

}  // namespace workbench
