#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "workbench/script.hpp"

namespace workbench {

// Knobs of the feature recipe. All caps are saturating: counts beyond a
// cap contribute the full 1.0.
struct ExtractionConfig {
  std::size_t steps_k = 5;  // proof steps encoded
  std::size_t arg_cap = 8;
  std::size_t compose_cap = 8;
  std::size_t quant_cap = 8;
  std::size_t len_cap = 64;

  std::size_t width() const { return 4 + 4 * steps_k; }
  bool operator==(const ExtractionConfig&) const = default;
};

// One row per lemma, all values scaled into [0,1] at extraction time.
struct FeatureTable {
  std::vector<std::string> lemma_names;
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  ExtractionConfig config;
};

// Sorted, deduplicated identifiers of the corpus: lemma names,
// statement identifiers, tactic arguments and imports.
std::vector<std::string> corpus_symbols(const Corpus& corpus);

// Fixed-width vector for one lemma. Layout:
//   [0] quantifier count / quant_cap        (capped)
//   [1] statement contains '='
//   [2] statement token count / len_cap     (capped)
//   [3] (index of head symbol + 1) / |symbols|
// then per step i in 1..steps_k:
//   [4i+0] (family of first atom + 1) / 8
//   [4i+1] total args in step / arg_cap     (capped)
//   [4i+2] lemmaRef args / max(total args, 1)
//   [4i+3] atom count / compose_cap         (capped)
// Missing steps contribute zeros; longer proofs are truncated.
std::vector<double> extract_lemma(const LemmaScript& lemma,
                                  const std::vector<std::string>& symbols,
                                  const ExtractionConfig& config);

FeatureTable extract_corpus(const Corpus& corpus, const ExtractionConfig& config = {});

// CSV with header "lemma,f1,...,fd" and 6-decimal values. read(write(t))
// reproduces t within 1e-6 per component.
std::string write_features(const FeatureTable& table);
FeatureTable read_features(const std::string& csv);

}  // namespace workbench
