#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "workbench/clustering.hpp"
#include "workbench/features.hpp"
#include "workbench/fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

class TempDir {
 public:
  TempDir() {
    root_ = fs::temp_directory_path() /
            ("workbench_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(root_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(root_, ec);
  }
  const fs::path& path() const { return root_; }

 private:
  static int& counter() {
    static int value = 0;
    return value;
  }
  fs::path root_;
};

RunResult run_cli(const TempDir& dir, const std::string& args) {
  const fs::path out = dir.path() / "stdout.txt";
  const fs::path err = dir.path() / "stderr.txt";
  const std::string command = std::string(WORKBENCH_CLI_PATH) + " " + args + " > " +
                              out.string() + " 2> " + err.string();
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = status == -1 ? -1 : WEXITSTATUS(status);
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

// End-to-end pipeline artifacts shared by several tests.
struct Pipeline {
  TempDir dir;
  fs::path fixtures_dir, corpus, features, report;

  explicit Pipeline(const std::string& cluster_flags = "--runs 50 --seed 42") {
    fixtures_dir = dir.path() / "fixtures";
    corpus = dir.path() / "corpus.json";
    features = dir.path() / "features.csv";
    report = dir.path() / "report.json";
    REQUIRE(run_cli(dir, "fixtures " + fixtures_dir.string() + " --seed 7").exit_code == 0);
    REQUIRE(run_cli(dir, "parse " + fixtures_dir.string() + " --out " + corpus.string())
                .exit_code == 0);
    REQUIRE(run_cli(dir, "extract " + corpus.string() + " --out " + features.string())
                .exit_code == 0);
    REQUIRE(run_cli(dir, "cluster " + features.string() + " " + cluster_flags + " --out " +
                             report.string())
                .exit_code == 0);
  }
};

}  // namespace

TEST_CASE("the four stage commands run end to end and suggest the planted family") {
  Pipeline p("--algorithm kmeans-pp --granularity 3 --runs 50 --seed 42");

  const std::string csv = slurp(p.features);
  CHECK(csv.rfind("lemma,f1,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 121);  // header + 120 rows

  const RunResult suggest =
      run_cli(p.dir, "suggest " + p.report.string() + " --lemma cfast_invmxP");
  CHECK(suggest.exit_code == 0);
  CHECK(suggest.out.find("Suggestions for Lemma cfast_invmxP:") == 0);

  std::set<std::string> suggested;
  std::istringstream lines(suggest.out);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    std::istringstream words(line);
    std::string first;
    words >> first;
    if (!first.empty()) suggested.insert(first);
  }
  CHECK(suggested ==
        std::set<std::string>{"det_seqmxP", "fast_mult_seqmxP", "rank_elim_seqmxE"});
}

TEST_CASE("the file pipeline equals the in-process pipeline byte for byte") {
  Pipeline p("--runs 50 --seed 42");

  workbench::FixtureSpec spec = workbench::default_fixture_spec();
  spec.seed = 7;
  std::vector<std::pair<std::string, std::string>> sources;
  for (const auto& file : workbench::generate_fixtures(spec)) {
    // The CLI records the full path it read each file from.
    sources.emplace_back((p.fixtures_dir / file.name).string(), file.text);
  }
  const workbench::Corpus corpus = workbench::parse_corpus(sources);
  const workbench::FeatureTable table = workbench::extract_corpus(corpus, {});
  CHECK(workbench::write_features(table) == slurp(p.features));

  workbench::ClusterParams params;
  params.runs = 50;
  params.master_seed = 42;
  const workbench::ClusterReport report = workbench::run_repeated(table, params);
  CHECK(workbench::report_to_json(report) == slurp(p.report));
}

TEST_CASE("suggest can include statement text from the corpus") {
  Pipeline p;
  const RunResult suggest =
      run_cli(p.dir, "suggest " + p.report.string() + " --lemma cfast_invmxP --corpus " +
                         p.corpus.string());
  CHECK(suggest.exit_code == 0);
  CHECK(suggest.out.find("rank_elim_seqmxE : forall") != std::string::npos);
}

TEST_CASE("suggest rejects unknown lemmas with exit 3") {
  Pipeline p;
  const RunResult result = run_cli(p.dir, "suggest " + p.report.string() + " --lemma nosuch");
  CHECK(result.exit_code == 3);
  CHECK(result.err.find("UnknownLemma") != std::string::npos);
}

TEST_CASE("noise lemmas clustered alone produce no suggestions") {
  Pipeline p;
  const RunResult result =
      run_cli(p.dir, "suggest " + p.report.string() + " --lemma noise_fact_00");
  // Either the lemma passed thresholds in some cluster with others, or
  // the report has nothing for it; the fixture geometry makes isolation
  // the overwhelmingly common case.
  CHECK(result.exit_code == 0);
  if (result.out.find("no suggestions pass thresholds") == std::string::npos)
    CHECK(result.out.find("noise_fact_00") == std::string::npos);
}

TEST_CASE("parse failures exit 3 and name the location") {
  TempDir dir;
  const fs::path bad = dir.path() / "bad.vp";
  std::ofstream(bad) << "Lemma broken : x = x. Proof. move=> h.\n";
  const RunResult result =
      run_cli(dir, "parse " + bad.string() + " --out " + (dir.path() / "c.json").string());
  CHECK(result.exit_code == 3);
  CHECK(result.err.find("ParseError") != std::string::npos);
  CHECK(result.err.find("bad.vp:1") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  TempDir dir;
  CHECK(run_cli(dir, "parse --out x.json").exit_code == 2);       // no inputs
  CHECK(run_cli(dir, "cluster").exit_code == 2);                  // missing args
  CHECK(run_cli(dir, "unknown-subcommand").exit_code == 2);
  CHECK(run_cli(dir, "cluster nope.csv --algorithm ward --out r.json").exit_code == 2);
}

TEST_CASE("cluster range and precondition failures exit 5") {
  Pipeline p;
  const RunResult bad_granularity = run_cli(
      p.dir, "cluster " + p.features.string() + " --granularity 7 --out " +
                 (p.dir.path() / "r2.json").string());
  CHECK(bad_granularity.exit_code == 5);
  CHECK(bad_granularity.err.find("BadGranularity") != std::string::npos);
}

TEST_CASE("corrupt corpus JSON exits 3") {
  TempDir dir;
  const fs::path bad = dir.path() / "corpus.json";
  std::ofstream(bad) << "{ not json";
  CHECK(run_cli(dir, "extract " + bad.string() + " --out " +
                         (dir.path() / "f.csv").string())
            .exit_code == 3);
}

TEST_CASE("extract --steps controls the vector width") {
  Pipeline p;
  const fs::path narrow = p.dir.path() / "narrow.csv";
  REQUIRE(run_cli(p.dir, "extract " + p.corpus.string() + " --steps 1 --out " + narrow.string())
              .exit_code == 0);
  std::ifstream in(narrow);
  std::string header;
  std::getline(in, header);
  CHECK(header == "lemma,f1,f2,f3,f4,f5,f6,f7,f8");
}

TEST_CASE("cluster --runs 1 reports unit frequencies") {
  Pipeline p("--runs 1 --seed 9");
  const nlohmann::json report = nlohmann::json::parse(slurp(p.report));
  REQUIRE(!report["clusters"].empty());
  for (const auto& cluster : report["clusters"])
    CHECK(cluster["frequency"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("WORKBENCH_SEED provides the seed default") {
  Pipeline p("--runs 20 --seed 33");
  const fs::path via_env = p.dir.path() / "env_report.json";
  ::setenv("WORKBENCH_SEED", "33", 1);
  const RunResult result = run_cli(
      p.dir, "cluster " + p.features.string() + " --runs 20 --out " + via_env.string());
  ::unsetenv("WORKBENCH_SEED");
  REQUIRE(result.exit_code == 0);
  CHECK(slurp(via_env) == slurp(p.report));
}

TEST_CASE("fixtures rejects zero-member families with exit 2") {
  TempDir dir;
  const RunResult result =
      run_cli(dir, "fixtures " + (dir.path() / "fx").string() + " --family seqpoly:0");
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("BadFixtureSpec") != std::string::npos);
}

TEST_CASE("fixtures regenerates byte-identical files for a fixed seed") {
  TempDir dir;
  const fs::path a = dir.path() / "a";
  const fs::path b = dir.path() / "b";
  REQUIRE(run_cli(dir, "fixtures " + a.string() + " --seed 5").exit_code == 0);
  REQUIRE(run_cli(dir, "fixtures " + b.string() + " --seed 5").exit_code == 0);
  for (const auto& entry : fs::directory_iterator(a)) {
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
  }
}

TEST_CASE("matrix verify passes on both fields and honors --max-size 0") {
  TempDir dir;
  const RunResult q = run_cli(dir, "matrix verify --field q --max-size 6 --cases 12 --seed 1");
  CHECK(q.exit_code == 0);
  CHECK(q.out.find("all invariants hold") != std::string::npos);

  const RunResult gfp =
      run_cli(dir, "matrix verify --field gfp --prime 101 --max-size 8 --cases 12 --seed 2");
  CHECK(gfp.exit_code == 0);

  CHECK(run_cli(dir, "matrix verify --field q --max-size 0 --cases 5").exit_code == 0);
}

TEST_CASE("matrix verify rejects composite moduli with exit 2") {
  TempDir dir;
  const RunResult result = run_cli(dir, "matrix verify --field gfp --prime 4 --cases 1");
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("NonPrimeModulus") != std::string::npos);
}

TEST_CASE("matrix verify accepts an interchange-format input matrix") {
  TempDir dir;
  const fs::path input = dir.path() / "m.json";
  std::ofstream(input) << R"({"field":"q","n":2,"rows":[["1","0"],["-3/4","1"]]})";
  CHECK(run_cli(dir, "matrix verify --field q --cases 3 --input " + input.string()).exit_code ==
        0);
}

TEST_CASE("matrix bench reports ops and counts") {
  TempDir dir;
  const RunResult tiny = run_cli(dir, "matrix bench --size 1 --json");
  REQUIRE(tiny.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(tiny.out);
  for (const char* op : {"cfast_invmx", "invmx", "mul_seqmx", "fast_mult_seqmx"})
    CHECK(j["ops"][op]["muls"].get<std::uint64_t>() <= 1);

  const RunResult table = run_cli(dir, "matrix bench --size 16 --cutoff 4");
  CHECK(table.exit_code == 0);
  CHECK(table.out.find("fast_mult_seqmx") != std::string::npos);

  const RunResult counts_a = run_cli(dir, "matrix bench --size 24 --cutoff 8 --seed 3 --json");
  const RunResult counts_b = run_cli(dir, "matrix bench --size 24 --cutoff 8 --seed 3 --json");
  const nlohmann::json ja = nlohmann::json::parse(counts_a.out);
  const nlohmann::json jb = nlohmann::json::parse(counts_b.out);
  for (const char* op : {"cfast_invmx", "invmx", "mul_seqmx", "fast_mult_seqmx"})
    CHECK(ja["ops"][op]["muls"] == jb["ops"][op]["muls"]);
}
