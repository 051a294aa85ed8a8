#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "workbench/clustering.hpp"
#include "workbench/error.hpp"
#include "workbench/features.hpp"
#include "workbench/fixtures.hpp"
#include "workbench/matrix_json.hpp"
#include "workbench/script.hpp"
#include "workbench/verify.hpp"

namespace fs = std::filesystem;
using namespace workbench;

namespace {

// 0 success, 2 usage, 3 parse/format, 4 verification failure,
// 5 clustering precondition.
int exit_code_for(Errc code) {
  switch (code) {
    case Errc::BadGranularity:
    case Errc::TooFewPoints:
      return 5;
    case Errc::NonPrimeModulus:
    case Errc::BadFixtureSpec:
    case Errc::IoError:
      return 2;
    default:
      return 3;
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) fail(Errc::IoError, "short write to '" + path.string() + "'");
}

// Files and directories (all *.vp inside, sorted) become parser input.
std::vector<std::pair<std::string, std::string>> collect_sources(
    const std::vector<std::string>& inputs) {
  std::vector<std::pair<std::string, std::string>> sources;
  for (const std::string& input : inputs) {
    const fs::path path(input);
    if (fs::is_directory(path)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(path))
        if (entry.is_regular_file() && entry.path().extension() == ".vp")
          files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      for (const fs::path& file : files) sources.emplace_back(file.string(), read_file(file));
    } else {
      sources.emplace_back(path.string(), read_file(path));
    }
  }
  if (sources.empty()) fail(Errc::IoError, "no .vp sources found");
  return sources;
}

Field field_from_flags(const std::string& name, std::uint64_t prime) {
  if (name == "q") return Field::rationals();
  if (name == "gfp") return Field::prime(prime);
  fail(Errc::NonPrimeModulus, "field must be 'q' or 'gfp'");
}

struct SuggestionView {
  std::string query_lemma;
  struct Entry {
    std::string lemma_name;
    std::string statement_text;
    double frequency = 0.0;
    double proximity = 0.0;
  };
  std::vector<Entry> entries;
};

std::string render_suggestions(const SuggestionView& view) {
  std::ostringstream out;
  out << "Suggestions for Lemma " << view.query_lemma << ":\n";
  if (view.entries.empty()) {
    out << "  no suggestions pass thresholds\n";
    return out.str();
  }
  char buffer[64];
  for (const auto& entry : view.entries) {
    out << "  " << entry.lemma_name;
    if (!entry.statement_text.empty()) out << " : " << entry.statement_text;
    std::snprintf(buffer, sizeof buffer, "  (frequency %.3f, proximity %.3f)", entry.frequency,
                  entry.proximity);
    out << buffer << "\n";
  }
  return out.str();
}

int cmd_parse(const std::vector<std::string>& inputs, const std::string& out_path) {
  const Corpus corpus = parse_corpus(collect_sources(inputs));
  write_file(out_path, corpus_to_json(corpus));
  std::cout << "parsed " << corpus.lemmas.size() << " lemmas from " << corpus.source_files.size()
            << " files -> " << out_path << "\n";
  return 0;
}

int cmd_extract(const std::string& corpus_path, std::size_t steps, const std::string& out_path) {
  const Corpus corpus = corpus_from_json(read_file(corpus_path));
  ExtractionConfig config;
  config.steps_k = steps;
  const FeatureTable table = extract_corpus(corpus, config);
  write_file(out_path, write_features(table));
  std::cout << "extracted " << table.rows.size() << " x " << table.width << " features -> "
            << out_path << "\n";
  return 0;
}

int cmd_cluster(const std::string& features_path, const ClusterParams& params,
                const std::string& out_path) {
  const FeatureTable table = read_features(read_file(features_path));
  const ClusterReport report = run_repeated(table, params);
  write_file(out_path, report_to_json(report));
  std::cout << "clustered " << table.rows.size() << " lemmas into " << report.cluster_count
            << " clusters, " << report.clusters.size() << " sets pass thresholds -> " << out_path
            << "\n";
  return 0;
}

int cmd_suggest(const std::string& report_path, const std::string& lemma,
                const std::string& corpus_path) {
  const ClusterReport report = report_from_json(read_file(report_path));
  const std::vector<Suggestion> suggestions = suggest(report, lemma);

  std::map<std::string, std::string> statements;
  if (!corpus_path.empty()) {
    const Corpus corpus = corpus_from_json(read_file(corpus_path));
    for (const LemmaScript& l : corpus.lemmas) {
      std::string text;
      for (const std::string& token : l.statement_tokens) {
        if (!text.empty()) text += ' ';
        text += token;
      }
      statements[l.name] = std::move(text);
    }
  }

  SuggestionView view;
  view.query_lemma = lemma;
  for (const Suggestion& suggestion : suggestions)
    for (const std::string& name : suggestion.lemmas) {
      SuggestionView::Entry entry;
      entry.lemma_name = name;
      entry.frequency = suggestion.frequency;
      entry.proximity = suggestion.proximity;
      const auto it = statements.find(name);
      if (it != statements.end()) entry.statement_text = it->second;
      view.entries.push_back(std::move(entry));
    }
  std::cout << render_suggestions(view);
  return 0;
}

int cmd_fixtures(const std::string& out_dir, std::uint64_t seed, long long noise,
                 const std::vector<std::string>& family_flags) {
  FixtureSpec spec = default_fixture_spec();
  spec.seed = seed;
  if (noise >= 0) spec.noise_lemmas = static_cast<std::size_t>(noise);
  for (const std::string& flag : family_flags) {
    const std::size_t colon = flag.rfind(':');
    if (colon == std::string::npos)
      fail(Errc::BadFixtureSpec, "--family expects NAME:COUNT, got '" + flag + "'");
    const std::string name = flag.substr(0, colon);
    std::size_t count = 0;
    try {
      count = std::stoull(flag.substr(colon + 1));
    } catch (const std::exception&) {
      fail(Errc::BadFixtureSpec, "bad member count in '" + flag + "'");
    }
    bool found = false;
    for (FamilySpec& family : spec.families)
      if (family.name == name) {
        family.member_count = count;
        found = true;
      }
    if (!found) fail(Errc::BadFixtureSpec, "unknown family '" + name + "'");
  }

  const std::vector<GeneratedFile> files = generate_fixtures(spec);
  fs::create_directories(out_dir);
  std::size_t lemmas = 0;
  for (const GeneratedFile& file : files) write_file(fs::path(out_dir) / file.name, file.text);
  for (const FamilySpec& family : spec.families) lemmas += family.member_count;
  lemmas += spec.noise_lemmas;
  std::cout << "wrote " << files.size() << " files, " << lemmas << " lemmas -> " << out_dir
            << "\n";
  return 0;
}

int cmd_matrix_verify(const std::string& field_name, std::uint64_t prime, std::size_t max_size,
                      std::size_t cases, std::uint64_t seed, const std::string& input_path) {
  VerifyOptions options;
  options.field = field_from_flags(field_name, prime);
  options.max_size = max_size;
  options.cases = cases;
  options.seed = seed;
  if (!input_path.empty()) options.extra = matrix_from_json(read_file(input_path));

  const VerifyResult result = run_matrix_verify(options);
  std::cout << render_verify_table(result);
  return result.all_passed ? 0 : 4;
}

int cmd_matrix_bench(const std::string& field_name, std::uint64_t prime, std::size_t size,
                     std::size_t cutoff, std::uint64_t seed, bool as_json) {
  BenchOptions options;
  options.field = field_from_flags(field_name, prime);
  options.size = size;
  options.cutoff = cutoff;
  options.seed = seed;

  const std::vector<BenchLine> lines = run_matrix_bench(options);
  if (as_json)
    std::cout << bench_to_json(options, lines);
  else
    std::cout << render_bench_table(options, lines);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proof-pattern workbench: exact matrix kernel + clustering pipeline"};
  app.require_subcommand(1);

  // parse
  auto* parse_cmd = app.add_subcommand("parse", "parse .vp proof scripts into corpus JSON");
  std::vector<std::string> parse_inputs;
  std::string parse_out;
  parse_cmd->add_option("inputs", parse_inputs, ".vp files or directories")->required();
  parse_cmd->add_option("--out", parse_out, "corpus JSON output path")->required();

  // extract
  auto* extract_cmd = app.add_subcommand("extract", "extract feature CSV from corpus JSON");
  std::string extract_corpus_path, extract_out;
  std::size_t extract_steps = 5;
  extract_cmd->add_option("corpus", extract_corpus_path, "corpus JSON path")->required();
  extract_cmd->add_option("--steps", extract_steps, "proof steps encoded per lemma")
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  extract_cmd->add_option("--out", extract_out, "feature CSV output path")->required();

  // cluster
  auto* cluster_cmd = app.add_subcommand("cluster", "repeated clustering of a feature CSV");
  std::string cluster_features_path, cluster_out, cluster_algorithm = "kmeans-pp";
  ClusterParams params;
  cluster_cmd->add_option("features", cluster_features_path, "feature CSV path")->required();
  cluster_cmd
      ->add_option("--algorithm", cluster_algorithm,
                   "kmeans-pp | kmeans-random | gmm-full | gmm-diag | farthest-first")
      ->check(CLI::IsMember(
          {"kmeans-pp", "kmeans-random", "gmm-full", "gmm-diag", "farthest-first"}));
  cluster_cmd->add_option("--granularity", params.granularity, "granularity 1..5 (default 3)");
  cluster_cmd->add_option("--runs", params.runs, "number of clustering runs (default 200)");
  cluster_cmd->add_option("--seed", params.master_seed, "master seed")->envname("WORKBENCH_SEED");
  cluster_cmd->add_option("--freq-threshold", params.freq_threshold, "frequency threshold");
  cluster_cmd->add_option("--prox-threshold", params.prox_threshold, "proximity threshold");
  cluster_cmd->add_option("--jobs", params.jobs, "worker threads (never changes output)");
  cluster_cmd->add_option("--out", cluster_out, "report JSON output path")->required();

  // suggest
  auto* suggest_cmd = app.add_subcommand("suggest", "print suggestions for a lemma");
  std::string suggest_report_path, suggest_lemma, suggest_corpus_path;
  suggest_cmd->add_option("report", suggest_report_path, "report JSON path")->required();
  suggest_cmd->add_option("--lemma", suggest_lemma, "query lemma name")->required();
  suggest_cmd->add_option("--corpus", suggest_corpus_path,
                          "corpus JSON for statement text (optional)");

  // fixtures
  auto* fixtures_cmd = app.add_subcommand("fixtures", "generate the synthetic corpus");
  std::string fixtures_out_dir;
  std::uint64_t fixtures_seed = 0;
  long long fixtures_noise = -1;
  std::vector<std::string> fixtures_families;
  fixtures_cmd->add_option("outdir", fixtures_out_dir, "output directory")->required();
  fixtures_cmd->add_option("--seed", fixtures_seed, "generator seed")->envname("WORKBENCH_SEED");
  fixtures_cmd->add_option("--noise", fixtures_noise, "noise lemma count");
  fixtures_cmd->add_option("--family", fixtures_families, "NAME:COUNT member override");

  // matrix verify / matrix bench
  auto* matrix_cmd = app.add_subcommand("matrix", "exact matrix kernel commands");
  matrix_cmd->require_subcommand(1);

  auto* verify_cmd = matrix_cmd->add_subcommand("verify", "randomized kernel invariant checks");
  std::string verify_field = "q", verify_input;
  std::uint64_t verify_prime = 101, verify_seed = 0;
  std::size_t verify_max_size = 16, verify_cases = 100;
  verify_cmd->add_option("--field", verify_field, "q | gfp");
  verify_cmd->add_option("--prime", verify_prime, "modulus for gfp (default 101)");
  verify_cmd->add_option("--max-size", verify_max_size, "largest matrix size");
  verify_cmd->add_option("--cases", verify_cases, "random cases");
  verify_cmd->add_option("--seed", verify_seed, "rng seed")->envname("WORKBENCH_SEED");
  verify_cmd->add_option("--input", verify_input, "matrix JSON to include in the checks");

  auto* bench_cmd = matrix_cmd->add_subcommand("bench", "time kernel operations, count muls");
  std::string bench_field = "gfp";
  std::uint64_t bench_prime = 101, bench_seed = 0;
  std::size_t bench_size = 256, bench_cutoff = 64;
  bool bench_json = false;
  bench_cmd->add_option("--field", bench_field, "q | gfp");
  bench_cmd->add_option("--prime", bench_prime, "modulus for gfp (default 101)");
  bench_cmd->add_option("--size", bench_size, "matrix size");
  bench_cmd->add_option("--cutoff", bench_cutoff, "strassen cutoff");
  bench_cmd->add_option("--seed", bench_seed, "rng seed")->envname("WORKBENCH_SEED");
  bench_cmd->add_flag("--json", bench_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    const std::size_t newline = message.find('\n');
    if (newline != std::string::npos) message.resize(newline);
    std::cerr << "workbench: error Usage: " << message << "\n";
    return 2;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(parse_inputs, parse_out);
    if (extract_cmd->parsed()) return cmd_extract(extract_corpus_path, extract_steps, extract_out);
    if (cluster_cmd->parsed()) {
      params.algorithm = algorithm_from_name(cluster_algorithm);
      return cmd_cluster(cluster_features_path, params, cluster_out);
    }
    if (suggest_cmd->parsed())
      return cmd_suggest(suggest_report_path, suggest_lemma, suggest_corpus_path);
    if (fixtures_cmd->parsed())
      return cmd_fixtures(fixtures_out_dir, fixtures_seed, fixtures_noise, fixtures_families);
    if (matrix_cmd->parsed()) {
      if (verify_cmd->parsed())
        return cmd_matrix_verify(verify_field, verify_prime, verify_max_size, verify_cases,
                                 verify_seed, verify_input);
      if (bench_cmd->parsed())
        return cmd_matrix_bench(bench_field, bench_prime, bench_size, bench_cutoff, bench_seed,
                                bench_json);
    }
  } catch (const Error& e) {
    std::cerr << "workbench: error " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "workbench: error Internal: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
