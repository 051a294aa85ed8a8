#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "workbench/matrix.hpp"
#include "workbench/rng.hpp"

namespace workbench {

// Seeded generators shared by the verification driver and the test
// suites. Q entries are small fractions (num in [-9,9], den in [1,9]).
Scalar random_scalar(Rng& rng, const Field& field);
AbstractMatrix random_matrix(Rng& rng, const Field& field, std::size_t n);
AbstractMatrix random_unitriangular(Rng& rng, const Field& field, std::size_t n);

struct VerifyOptions {
  Field field = Field::rationals();
  std::size_t max_size = 16;
  std::size_t cases = 100;
  std::uint64_t seed = 0;
  std::optional<AbstractMatrix> extra;  // additional matrix to put through the checks
};

struct VerifyLine {
  std::string invariant;
  std::size_t cases = 0;
  std::size_t failures = 0;
};

struct VerifyResult {
  std::vector<VerifyLine> lines;
  bool all_passed = true;
};

// Randomized executable check of every kernel invariant: the
// refinement equation, the equivalence with the Gauss-Jordan inverse,
// inverse correctness, unitriangular group closure, the three
// translation lemmas, Strassen-vs-naive equality over several cutoffs,
// the morphism round trip and scalar canonicity.
VerifyResult run_matrix_verify(const VerifyOptions& options);

std::string render_verify_table(const VerifyResult& result);

struct BenchOptions {
  Field field = Field::prime(101);
  std::size_t size = 256;
  std::size_t cutoff = 64;
  std::uint64_t seed = 0;
};

struct BenchLine {
  std::string op;
  double milliseconds = 0.0;
  std::uint64_t muls = 0;
};

// Wall time and scalar-multiplication counts for cfast_invmx, invmx,
// mul_seqmx and fast_mult_seqmx at the given size.
std::vector<BenchLine> run_matrix_bench(const BenchOptions& options);

std::string render_bench_table(const BenchOptions& options, const std::vector<BenchLine>& lines);
std::string bench_to_json(const BenchOptions& options, const std::vector<BenchLine>& lines);

}  // namespace workbench
