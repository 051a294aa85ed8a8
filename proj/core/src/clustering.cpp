#include "workbench/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "workbench/error.hpp"
#include "workbench/rng.hpp"

namespace workbench {

const char* algorithm_name(AlgorithmKind kind) noexcept {
  switch (kind) {
    case AlgorithmKind::KMeansPP: return "kmeans-pp";
    case AlgorithmKind::KMeansRandom: return "kmeans-random";
    case AlgorithmKind::GmmFull: return "gmm-full";
    case AlgorithmKind::GmmDiag: return "gmm-diag";
    case AlgorithmKind::FarthestFirst: return "farthest-first";
  }
  return "kmeans-pp";
}

AlgorithmKind algorithm_from_name(const std::string& name) {
  for (AlgorithmKind k :
       {AlgorithmKind::KMeansPP, AlgorithmKind::KMeansRandom, AlgorithmKind::GmmFull,
        AlgorithmKind::GmmDiag, AlgorithmKind::FarthestFirst})
    if (name == algorithm_name(k)) return k;
  fail(Errc::JsonFormatError, "unknown algorithm '" + name + "'");
}

std::size_t granularity_to_n(std::size_t corpus_size, int granularity) {
  if (granularity < 1 || granularity > 5)
    fail(Errc::BadGranularity,
         "granularity " + std::to_string(granularity) + " is outside 1..5");
  if (corpus_size == 0) fail(Errc::TooFewPoints, "empty corpus");
  const std::size_t n = corpus_size / static_cast<std::size_t>(11 - granularity);
  return std::max<std::size_t>(1, n);
}

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void check_cluster_count(std::size_t n, std::size_t point_count) {
  if (n > point_count)
    fail(Errc::TooFewPoints, std::to_string(point_count) + " points cannot fill " +
                                 std::to_string(n) + " clusters");
}

std::vector<std::vector<std::size_t>> members_by_cluster(const std::vector<std::size_t>& assignment,
                                                         std::size_t n) {
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < assignment.size(); ++i) members[assignment[i]].push_back(i);
  return members;
}

// Drop empty ids, renumber survivors in ascending order, attach
// proximities. Shared final step of every back end.
Partition finish_partition(std::vector<std::size_t> assignment, std::size_t n,
                           const Points& points) {
  std::vector<std::size_t> remap(n, static_cast<std::size_t>(-1));
  std::size_t next = 0;
  const auto members = members_by_cluster(assignment, n);
  for (std::size_t c = 0; c < n; ++c)
    if (!members[c].empty()) remap[c] = next++;
  for (std::size_t& a : assignment) a = remap[a];

  Partition partition;
  partition.assignment = std::move(assignment);
  partition.cluster_count = next;
  partition.per_cluster_proximity.reserve(next);
  for (std::size_t c = 0; c < n; ++c)
    if (!members[c].empty()) partition.per_cluster_proximity.push_back(proximity(members[c], points));
  return partition;
}

std::vector<std::vector<double>> init_centers(const Points& points, std::size_t n,
                                              KMeansInit init, Rng& rng) {
  const std::size_t count = points.size();
  std::vector<std::vector<double>> centers;
  centers.reserve(n);
  if (init == KMeansInit::Random) {
    for (std::size_t idx : rng.sample_without_replacement(count, n)) centers.push_back(points[idx]);
    return centers;
  }
  centers.push_back(points[rng.below(count)]);
  std::vector<double> best(count, 0.0);
  while (centers.size() < n) {
    for (std::size_t i = 0; i < count; ++i) {
      double d = squared_distance(points[i], centers.front());
      for (std::size_t c = 1; c < centers.size(); ++c)
        d = std::min(d, squared_distance(points[i], centers[c]));
      best[i] = d;
    }
    centers.push_back(points[rng.pick_weighted(best)]);
  }
  return centers;
}

}  // namespace

Partition kmeans(const Points& points, std::size_t n, KMeansInit init, std::uint64_t seed,
                 std::size_t max_iterations, std::vector<double>* objective_trace) {
  const std::size_t count = points.size();
  check_cluster_count(n, count);
  if (count == 0) return Partition{};

  Rng rng(seed);
  std::vector<std::vector<double>> centers = init_centers(points, n, init, rng);
  std::vector<std::size_t> assignment(count, 0);
  std::vector<std::size_t> previous;

  const auto assign_all = [&]() {
    double objective = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t best = 0;
      double best_d = squared_distance(points[i], centers[0]);
      for (std::size_t c = 1; c < n; ++c) {
        const double d = squared_distance(points[i], centers[c]);
        if (d < best_d) {  // ties keep the lowest cluster id
          best_d = d;
          best = c;
        }
      }
      assignment[i] = best;
      objective += best_d;
    }
    return objective;
  };

  for (std::size_t iteration = 0; iteration < max_iterations; ++iteration) {
    double objective = assign_all();

    // Reseed emptied clusters: take the point farthest from the center
    // nearest the empty cluster's stale centroid.
    for (std::size_t attempt = 0; attempt < n; ++attempt) {
      std::vector<std::size_t> sizes(n, 0);
      for (std::size_t a : assignment) ++sizes[a];
      bool any_empty = false;
      for (std::size_t e = 0; e < n; ++e) {
        if (sizes[e] != 0) continue;
        any_empty = true;
        std::size_t nearest = n;
        double nearest_d = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
          if (c == e || sizes[c] == 0) continue;
          const double d = squared_distance(centers[e], centers[c]);
          if (nearest == n || d < nearest_d) {
            nearest = c;
            nearest_d = d;
          }
        }
        if (nearest == n) continue;
        std::size_t farthest = 0;
        double farthest_d = -1.0;
        for (std::size_t i = 0; i < count; ++i) {
          const double d = squared_distance(points[i], centers[nearest]);
          if (d > farthest_d) {
            farthest_d = d;
            farthest = i;
          }
        }
        centers[e] = points[farthest];
      }
      if (!any_empty) break;
      objective = assign_all();
    }

    if (objective_trace) objective_trace->push_back(objective);
    if (assignment == previous) break;
    previous = assignment;

    const auto members = members_by_cluster(assignment, n);
    for (std::size_t c = 0; c < n; ++c) {
      if (members[c].empty()) continue;
      std::vector<double> mean(points[0].size(), 0.0);
      for (std::size_t i : members[c])
        for (std::size_t dim = 0; dim < mean.size(); ++dim) mean[dim] += points[i][dim];
      for (double& v : mean) v /= static_cast<double>(members[c].size());
      centers[c] = std::move(mean);
    }
  }

  return finish_partition(std::move(assignment), n, points);
}

Partition farthest_first(const Points& points, std::size_t n, std::uint64_t seed) {
  const std::size_t count = points.size();
  check_cluster_count(n, count);
  if (count == 0) return Partition{};

  Rng rng(seed);
  std::vector<std::size_t> center_indices{static_cast<std::size_t>(rng.below(count))};
  std::vector<double> nearest(count);
  for (std::size_t i = 0; i < count; ++i)
    nearest[i] = squared_distance(points[i], points[center_indices[0]]);

  while (center_indices.size() < n) {
    std::size_t farthest = 0;
    double farthest_d = -1.0;
    for (std::size_t i = 0; i < count; ++i) {
      if (nearest[i] > farthest_d) {  // ties keep the lowest index
        farthest_d = nearest[i];
        farthest = i;
      }
    }
    center_indices.push_back(farthest);
    for (std::size_t i = 0; i < count; ++i)
      nearest[i] = std::min(nearest[i], squared_distance(points[i], points[farthest]));
  }

  std::vector<std::size_t> assignment(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t best = 0;
    double best_d = squared_distance(points[i], points[center_indices[0]]);
    for (std::size_t c = 1; c < n; ++c) {
      const double d = squared_distance(points[i], points[center_indices[c]]);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    assignment[i] = best;
  }
  return finish_partition(std::move(assignment), n, points);
}

double proximity(const std::vector<std::size_t>& member_indices, const Points& points) {
  const std::size_t m = member_indices.size();
  if (m <= 1) return 1.0;
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      total += std::sqrt(squared_distance(points[member_indices[a]], points[member_indices[b]]));
      ++pairs;
    }
  return 1.0 / (1.0 + total / static_cast<double>(pairs));
}

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;

struct GmmComponent {
  double weight = 0.0;
  std::vector<double> mean;
  // Full covariance keeps the Cholesky factor; diagonal keeps variances.
  std::vector<std::vector<double>> chol;
  std::vector<double> variances;
  double log_det = 0.0;
};

bool cholesky(const std::vector<std::vector<double>>& m, std::vector<std::vector<double>>& out) {
  const std::size_t d = m.size();
  out.assign(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = m[i][j];
      for (std::size_t k = 0; k < j; ++k) sum -= out[i][k] * out[j][k];
      if (i == j) {
        if (sum <= 0.0) return false;
        out[i][i] = std::sqrt(sum);
      } else {
        out[i][j] = sum / out[j][j];
      }
    }
  }
  return true;
}

double log_pdf(const GmmComponent& comp, const std::vector<double>& x, CovarianceKind kind) {
  const std::size_t d = x.size();
  if (kind == CovarianceKind::Diagonal) {
    double quad = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double delta = x[i] - comp.mean[i];
      quad += delta * delta / comp.variances[i];
    }
    return -0.5 * (static_cast<double>(d) * kLogTwoPi + comp.log_det + quad);
  }
  // Solve L y = x - mean, quad = |y|^2.
  std::vector<double> y(d, 0.0);
  double quad = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double sum = x[i] - comp.mean[i];
    for (std::size_t k = 0; k < i; ++k) sum -= comp.chol[i][k] * y[k];
    y[i] = sum / comp.chol[i][i];
    quad += y[i] * y[i];
  }
  return -0.5 * (static_cast<double>(d) * kLogTwoPi + comp.log_det + quad);
}

// Floor the diagonal, then escalate a ridge until the factorization
// succeeds; rank-deficient scatter matrices are routine with tiny
// clusters.
void set_full_covariance(GmmComponent& comp, std::vector<std::vector<double>> cov, double floor) {
  const std::size_t d = cov.size();
  for (std::size_t i = 0; i < d; ++i) cov[i][i] = std::max(cov[i][i], floor);
  double ridge = floor;
  while (!cholesky(cov, comp.chol)) {
    for (std::size_t i = 0; i < d; ++i) cov[i][i] += ridge;
    ridge *= 10.0;
  }
  comp.log_det = 0.0;
  for (std::size_t i = 0; i < d; ++i) comp.log_det += 2.0 * std::log(comp.chol[i][i]);
}

void set_diag_covariance(GmmComponent& comp, std::vector<double> variances, double floor) {
  comp.log_det = 0.0;
  for (double& v : variances) {
    v = std::max(v, floor);
    comp.log_det += std::log(v);
  }
  comp.variances = std::move(variances);
}

}  // namespace

GmmResult gmm_em(const Points& points, std::size_t n, CovarianceKind covariance,
                 std::uint64_t seed, std::size_t max_iterations, double tolerance,
                 double covariance_floor) {
  const std::size_t count = points.size();
  check_cluster_count(n, count);
  GmmResult result;
  if (count == 0) return result;
  const std::size_t dim = points[0].size();

  // Initialize from a kmeans++ run with the same seed.
  const Partition init = kmeans(points, n, KMeansInit::PlusPlus, seed, 100);
  std::vector<GmmComponent> comps(init.cluster_count);
  {
    const auto members = members_by_cluster(init.assignment, init.cluster_count);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      GmmComponent& comp = comps[c];
      comp.weight = static_cast<double>(members[c].size()) / static_cast<double>(count);
      comp.mean.assign(dim, 0.0);
      for (std::size_t i : members[c])
        for (std::size_t k = 0; k < dim; ++k) comp.mean[k] += points[i][k];
      for (double& v : comp.mean) v /= static_cast<double>(members[c].size());
      if (covariance == CovarianceKind::Full) {
        std::vector<std::vector<double>> cov(dim, std::vector<double>(dim, 0.0));
        for (std::size_t i : members[c])
          for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b <= a; ++b)
              cov[a][b] += (points[i][a] - comp.mean[a]) * (points[i][b] - comp.mean[b]);
        for (std::size_t a = 0; a < dim; ++a)
          for (std::size_t b = 0; b <= a; ++b) {
            cov[a][b] /= static_cast<double>(members[c].size());
            cov[b][a] = cov[a][b];
          }
        set_full_covariance(comp, std::move(cov), covariance_floor);
      } else {
        std::vector<double> vars(dim, 0.0);
        for (std::size_t i : members[c])
          for (std::size_t k = 0; k < dim; ++k) {
            const double delta = points[i][k] - comp.mean[k];
            vars[k] += delta * delta;
          }
        for (double& v : vars) v /= static_cast<double>(members[c].size());
        set_diag_covariance(comp, std::move(vars), covariance_floor);
      }
    }
  }

  std::vector<std::vector<double>> resp(count);
  double previous_ll = 0.0;

  for (std::size_t iteration = 0; iteration < max_iterations; ++iteration) {
    // E-step and the log-likelihood of the current parameters.
    double ll = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<double>& r = resp[i];
      r.assign(comps.size(), 0.0);
      double max_term = -1.0 / 0.0;
      for (std::size_t c = 0; c < comps.size(); ++c) {
        r[c] = std::log(comps[c].weight) + log_pdf(comps[c], points[i], covariance);
        max_term = std::max(max_term, r[c]);
      }
      double sum = 0.0;
      for (double term : r) sum += std::exp(term - max_term);
      const double log_norm = max_term + std::log(sum);
      ll += log_norm;
      for (double& term : r) term = std::exp(term - log_norm);
    }
    result.log_likelihoods.push_back(ll);
    if (iteration > 0 && ll - previous_ll < tolerance) break;
    previous_ll = ll;

    // M-step.
    std::vector<double> mass(comps.size(), 0.0);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t c = 0; c < comps.size(); ++c) mass[c] += resp[i][c];

    // A component whose weight underflowed is dropped, ids compacted.
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < comps.size(); ++c)
      if (mass[c] > 0.0) keep.push_back(c);
    if (keep.size() != comps.size()) {
      std::vector<GmmComponent> survivors;
      survivors.reserve(keep.size());
      for (std::size_t c : keep) survivors.push_back(std::move(comps[c]));
      comps = std::move(survivors);
      continue;  // re-run the E-step against the reduced mixture
    }

    for (std::size_t c = 0; c < comps.size(); ++c) {
      GmmComponent& comp = comps[c];
      comp.weight = mass[c] / static_cast<double>(count);
      comp.mean.assign(dim, 0.0);
      for (std::size_t i = 0; i < count; ++i)
        for (std::size_t k = 0; k < dim; ++k) comp.mean[k] += resp[i][c] * points[i][k];
      for (double& v : comp.mean) v /= mass[c];

      if (covariance == CovarianceKind::Full) {
        std::vector<std::vector<double>> cov(dim, std::vector<double>(dim, 0.0));
        for (std::size_t i = 0; i < count; ++i)
          for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b <= a; ++b)
              cov[a][b] += resp[i][c] * (points[i][a] - comp.mean[a]) * (points[i][b] - comp.mean[b]);
        for (std::size_t a = 0; a < dim; ++a)
          for (std::size_t b = 0; b <= a; ++b) {
            cov[a][b] /= mass[c];
            cov[b][a] = cov[a][b];
          }
        set_full_covariance(comp, std::move(cov), covariance_floor);
      } else {
        std::vector<double> vars(dim, 0.0);
        for (std::size_t i = 0; i < count; ++i)
          for (std::size_t k = 0; k < dim; ++k) {
            const double delta = points[i][k] - comp.mean[k];
            vars[k] += resp[i][c] * delta * delta;
          }
        for (double& v : vars) v /= mass[c];
        set_diag_covariance(comp, std::move(vars), covariance_floor);
      }
    }
  }

  // Hard assignment by maximum responsibility, ties to the lowest id.
  // Recomputed from the mixture directly: a component drop on the final
  // iteration leaves `resp` misaligned with the compacted list.
  std::vector<std::size_t> assignment(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t best = 0;
    double best_term = -1.0 / 0.0;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const double term = std::log(comps[c].weight) + log_pdf(comps[c], points[i], covariance);
      if (term > best_term) {
        best_term = term;
        best = c;
      }
    }
    assignment[i] = best;
  }
  result.partition = finish_partition(std::move(assignment), comps.size(), points);
  return result;
}

namespace {

struct RunOutcome {
  // Canonically sorted lemma-name sets with their proximity.
  std::vector<std::pair<std::vector<std::string>, double>> clusters;
};

Partition dispatch(const Points& points, std::size_t n, AlgorithmKind kind, std::uint64_t seed,
                   const ClusterParams& params) {
  switch (kind) {
    case AlgorithmKind::KMeansPP:
      return kmeans(points, n, KMeansInit::PlusPlus, seed, params.max_iterations);
    case AlgorithmKind::KMeansRandom:
      return kmeans(points, n, KMeansInit::Random, seed, params.max_iterations);
    case AlgorithmKind::GmmFull:
      return gmm_em(points, n, CovarianceKind::Full, seed, params.max_iterations,
                    params.tolerance, params.covariance_floor)
          .partition;
    case AlgorithmKind::GmmDiag:
      return gmm_em(points, n, CovarianceKind::Diagonal, seed, params.max_iterations,
                    params.tolerance, params.covariance_floor)
          .partition;
    case AlgorithmKind::FarthestFirst:
      return farthest_first(points, n, seed);
  }
  fail(Errc::JsonFormatError, "unreachable algorithm kind");
}

RunOutcome one_run(const FeatureTable& table, std::size_t n, const ClusterParams& params,
                   std::uint64_t seed) {
  const Partition partition = dispatch(table.rows, n, params.algorithm, seed, params);
  RunOutcome outcome;
  const auto members = members_by_cluster(partition.assignment, partition.cluster_count);
  outcome.clusters.reserve(partition.cluster_count);
  for (std::size_t c = 0; c < partition.cluster_count; ++c) {
    std::vector<std::string> names;
    names.reserve(members[c].size());
    for (std::size_t i : members[c]) names.push_back(table.lemma_names[i]);
    std::sort(names.begin(), names.end());
    outcome.clusters.emplace_back(std::move(names), partition.per_cluster_proximity[c]);
  }
  return outcome;
}

}  // namespace

ClusterReport run_repeated(const FeatureTable& table, const ClusterParams& params) {
  if (params.runs == 0) fail(Errc::TooFewPoints, "at least one clustering run is required");
  const std::size_t count = table.rows.size();
  const std::size_t n = granularity_to_n(count, params.granularity);
  check_cluster_count(n, count);

  std::vector<RunOutcome> outcomes(params.runs);
  const std::size_t jobs = std::max<std::size_t>(1, params.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < params.runs; ++i)
      outcomes[i] = one_run(table, n, params, derive_seed(params.master_seed, i));
  } else {
    std::exception_ptr first_error;
    std::vector<std::thread> workers;
    std::mutex error_mutex;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w]() {
        try {
          for (std::size_t i = w; i < params.runs; i += jobs)
            outcomes[i] = one_run(table, n, params, derive_seed(params.master_seed, i));
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (std::thread& t : workers) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  // Tally identical lemma sets across runs; the map keeps the final
  // report independent of tally order.
  std::map<std::vector<std::string>, std::pair<std::size_t, double>> tally;
  for (const RunOutcome& outcome : outcomes)
    for (const auto& [names, prox] : outcome.clusters) {
      auto& entry = tally[names];
      entry.first += 1;
      entry.second += prox;
    }

  ClusterReport report;
  report.params = params;
  report.cluster_count = n;
  report.corpus_lemmas = table.lemma_names;
  for (const auto& [names, entry] : tally) {
    const double frequency = static_cast<double>(entry.first) / static_cast<double>(params.runs);
    const double mean_proximity = entry.second / static_cast<double>(entry.first);
    if (frequency >= params.freq_threshold && mean_proximity >= params.prox_threshold)
      report.clusters.push_back(ReportCluster{names, frequency, mean_proximity});
  }
  std::sort(report.clusters.begin(), report.clusters.end(),
            [](const ReportCluster& a, const ReportCluster& b) {
              if (a.frequency != b.frequency) return a.frequency > b.frequency;
              if (a.proximity != b.proximity) return a.proximity > b.proximity;
              return a.lemmas < b.lemmas;
            });
  return report;
}

std::vector<Suggestion> suggest(const ClusterReport& report, const std::string& lemma) {
  if (std::find(report.corpus_lemmas.begin(), report.corpus_lemmas.end(), lemma) ==
      report.corpus_lemmas.end())
    fail(Errc::UnknownLemma, "lemma '" + lemma + "' is not in the clustered corpus");

  std::vector<Suggestion> suggestions;
  for (const ReportCluster& cluster : report.clusters) {
    if (!std::binary_search(cluster.lemmas.begin(), cluster.lemmas.end(), lemma)) continue;
    Suggestion s;
    s.frequency = cluster.frequency;
    s.proximity = cluster.proximity;
    for (const std::string& name : cluster.lemmas)
      if (name != lemma) s.lemmas.push_back(name);
    suggestions.push_back(std::move(s));
  }
  return suggestions;
}

namespace {

using nlohmann::json;

double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

}  // namespace

std::string report_to_json(const ClusterReport& report) {
  json j;
  j["params"] = json{{"algorithm", algorithm_name(report.params.algorithm)},
                     {"granularity", report.params.granularity},
                     {"clusterCount", report.cluster_count},
                     {"runs", report.params.runs},
                     {"masterSeed", report.params.master_seed},
                     {"freqThreshold", report.params.freq_threshold},
                     {"proxThreshold", report.params.prox_threshold},
                     {"maxIterations", report.params.max_iterations},
                     {"tolerance", report.params.tolerance},
                     {"covarianceFloor", report.params.covariance_floor}};
  j["corpus"] = json{{"lemmas", report.corpus_lemmas}};
  json clusters = json::array();
  for (const ReportCluster& cluster : report.clusters)
    clusters.push_back(json{{"lemmas", cluster.lemmas},
                            {"frequency", round3(cluster.frequency)},
                            {"proximity", round3(cluster.proximity)}});
  j["clusters"] = std::move(clusters);
  return j.dump(2) + "\n";
}

ClusterReport report_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Errc::JsonFormatError, "report file is not valid JSON");
  try {
    ClusterReport report;
    const json& p = j.at("params");
    report.params.algorithm = algorithm_from_name(p.at("algorithm").get<std::string>());
    report.params.granularity = p.at("granularity").get<int>();
    report.cluster_count = p.at("clusterCount").get<std::size_t>();
    report.params.runs = p.at("runs").get<std::size_t>();
    report.params.master_seed = p.at("masterSeed").get<std::uint64_t>();
    report.params.freq_threshold = p.at("freqThreshold").get<double>();
    report.params.prox_threshold = p.at("proxThreshold").get<double>();
    report.params.max_iterations = p.at("maxIterations").get<std::size_t>();
    report.params.tolerance = p.at("tolerance").get<double>();
    report.params.covariance_floor = p.at("covarianceFloor").get<double>();
    report.corpus_lemmas = j.at("corpus").at("lemmas").get<std::vector<std::string>>();
    for (const json& jc : j.at("clusters")) {
      ReportCluster cluster;
      cluster.lemmas = jc.at("lemmas").get<std::vector<std::string>>();
      std::sort(cluster.lemmas.begin(), cluster.lemmas.end());  // canonical set order
      cluster.frequency = jc.at("frequency").get<double>();
      cluster.proximity = jc.at("proximity").get<double>();
      report.clusters.push_back(std::move(cluster));
    }
    return report;
  } catch (const json::exception& e) {
    fail(Errc::JsonFormatError, e.what());
  }
}

}  // namespace workbench
