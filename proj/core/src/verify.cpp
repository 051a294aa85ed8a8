#include "workbench/verify.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

namespace workbench {

Scalar random_scalar(Rng& rng, const Field& field) {
  if (field.is_prime_field())
    return Scalar::residue(rng.below(field.modulus()), field);
  const long long num = static_cast<long long>(rng.below(19)) - 9;
  const long long den = static_cast<long long>(rng.below(9)) + 1;
  return Scalar::rational(num, den);
}

AbstractMatrix random_matrix(Rng& rng, const Field& field, std::size_t n) {
  AbstractMatrix m(field, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_scalar(rng, field);
  return m;
}

AbstractMatrix random_unitriangular(Rng& rng, const Field& field, std::size_t n) {
  AbstractMatrix m = AbstractMatrix::identity(field, n);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) m(i, j) = random_scalar(rng, field);
  return m;
}

namespace {

bool matrix_canonical(const AbstractMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!m(i, j).is_canonical()) return false;
  return true;
}

bool seqmx_canonical(const SeqMatrix& s) {
  for (const auto& row : s.rows())
    for (const Scalar& x : row)
      if (!x.is_canonical()) return false;
  return true;
}

struct Tally {
  VerifyResult result;

  void record(const std::string& invariant, bool ok) {
    for (VerifyLine& line : result.lines) {
      if (line.invariant != invariant) continue;
      ++line.cases;
      if (!ok) ++line.failures;
      if (!ok) result.all_passed = false;
      return;
    }
    result.lines.push_back(VerifyLine{invariant, 1, ok ? std::size_t{0} : std::size_t{1}});
    if (!ok) result.all_passed = false;
  }
};

void check_unitriangular_case(Tally& tally, const Field& field, const AbstractMatrix& m) {
  const AbstractMatrix fast = fast_invmx(m);
  const SeqMatrix via_abstract = seqmx_of_mx(fast);
  const SeqMatrix via_seq = cfast_invmx(seqmx_of_mx(m));
  tally.record("refinement_equation", via_abstract == via_seq);
  tally.record("fast_invmx_eq_invmx", fast == invmx(m));

  const AbstractMatrix id = AbstractMatrix::identity(field, m.size());
  tally.record("inverse_correctness", mulmx(m, fast) == id && mulmx(fast, m) == id);
  tally.record("unitriangular_closure", is_unitriangular(fast) && fast_invmx(fast) == m);
  tally.record("scalar_canonical", matrix_canonical(fast) && seqmx_canonical(via_seq));
}

void check_general_case(Tally& tally, const Field& field, const AbstractMatrix& a,
                        const AbstractMatrix& b) {
  const SeqMatrix sa = seqmx_of_mx(a);
  const SeqMatrix sb = seqmx_of_mx(b);

  const SeqMatrix naive = mul_seqmx(sa, sb);
  tally.record("translation_mult", seqmx_of_mx(mulmx(a, b)) == fast_mult_seqmx(sa, sb));
  tally.record("translation_det", det_seqmx(field, sa) == det_mx(a));
  tally.record("translation_rank", rank_elim_seqmx(sa) == rank_mx(a));

  bool strassen_ok = true;
  for (std::size_t cutoff : {std::size_t{1}, std::size_t{2}, std::size_t{32}, std::size_t{64}})
    strassen_ok = strassen_ok && fast_mult_seqmx(sa, sb, cutoff) == naive;
  tally.record("strassen_oracle", strassen_ok);

  tally.record("morphism_roundtrip", mx_of_seqmx(field, a.size(), sa) == a);
  tally.record("scalar_canonical", matrix_canonical(mulmx(a, b)) && seqmx_canonical(naive) &&
                                       det_mx(a).is_canonical());
}

}  // namespace

VerifyResult run_matrix_verify(const VerifyOptions& options) {
  Tally tally;
  Rng rng(options.seed);
  const Field& field = options.field;

  if (options.extra) {
    const AbstractMatrix& m = *options.extra;
    if (is_unitriangular(m)) check_unitriangular_case(tally, m.field(), m);
    check_general_case(tally, m.field(), m, m);
  }

  for (std::size_t c = 0; c < options.cases; ++c) {
    const std::size_t n = static_cast<std::size_t>(rng.below(options.max_size + 1));
    check_unitriangular_case(tally, field, random_unitriangular(rng, field, n));
    check_general_case(tally, field, random_matrix(rng, field, n), random_matrix(rng, field, n));
  }
  return tally.result;
}

std::string render_verify_table(const VerifyResult& result) {
  std::ostringstream out;
  for (const VerifyLine& line : result.lines) {
    out << (line.failures == 0 ? "pass" : "FAIL") << "  " << line.invariant << "  ("
        << line.cases - line.failures << "/" << line.cases << " cases)\n";
  }
  out << (result.all_passed ? "all invariants hold\n" : "invariant violations found\n");
  return out.str();
}

namespace {

template <typename F>
std::pair<double, std::uint64_t> timed(F&& body) {
  MulCounter counter;
  const auto start = std::chrono::steady_clock::now();
  body(&counter);
  const auto stop = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return {ms, counter.muls};
}

}  // namespace

std::vector<BenchLine> run_matrix_bench(const BenchOptions& options) {
  Rng rng(options.seed);
  const AbstractMatrix lower = random_unitriangular(rng, options.field, options.size);
  const SeqMatrix lower_seq = seqmx_of_mx(lower);
  const AbstractMatrix a = random_matrix(rng, options.field, options.size);
  const AbstractMatrix b = random_matrix(rng, options.field, options.size);
  const SeqMatrix sa = seqmx_of_mx(a);
  const SeqMatrix sb = seqmx_of_mx(b);

  std::vector<BenchLine> lines;
  {
    auto [ms, muls] = timed([&](MulCounter* c) { cfast_invmx(lower_seq, c); });
    lines.push_back(BenchLine{"cfast_invmx", ms, muls});
  }
  {
    auto [ms, muls] = timed([&](MulCounter* c) { invmx(lower, c); });
    lines.push_back(BenchLine{"invmx", ms, muls});
  }
  {
    auto [ms, muls] = timed([&](MulCounter* c) { mul_seqmx(sa, sb, c); });
    lines.push_back(BenchLine{"mul_seqmx", ms, muls});
  }
  {
    auto [ms, muls] = timed([&](MulCounter* c) { fast_mult_seqmx(sa, sb, options.cutoff, c); });
    lines.push_back(BenchLine{"fast_mult_seqmx", ms, muls});
  }
  return lines;
}

std::string render_bench_table(const BenchOptions& options, const std::vector<BenchLine>& lines) {
  std::ostringstream out;
  out << "field " << options.field.name() << ", size " << options.size << ", cutoff "
      << options.cutoff << "\n";
  char buffer[64];
  for (const BenchLine& line : lines) {
    std::snprintf(buffer, sizeof buffer, "%-16s %12.3f ms  %14llu muls\n", line.op.c_str(),
                  line.milliseconds, static_cast<unsigned long long>(line.muls));
    out << buffer;
  }
  return out.str();
}

std::string bench_to_json(const BenchOptions& options, const std::vector<BenchLine>& lines) {
  nlohmann::json j;
  j["field"] = options.field.is_rational()
                   ? nlohmann::json("q")
                   : nlohmann::json{{"gfp", options.field.modulus()}};
  j["size"] = options.size;
  j["cutoff"] = options.cutoff;
  nlohmann::json ops = nlohmann::json::object();
  for (const BenchLine& line : lines)
    ops[line.op] = nlohmann::json{{"ms", line.milliseconds}, {"muls", line.muls}};
  j["ops"] = std::move(ops);
  return j.dump(2) + "\n";
}

}  // namespace workbench
