#pragma once

#include <string>
#include <utility>
#include <vector>

#include "workbench/error.hpp"

namespace workbench {

// Closed tactic-family enumeration; the order is load-bearing for
// feature encoding (move=0 .. rest=7). Unknown heads parse as Rest.
enum class TacticFamily { Move, Case, Elim, Apply, Rewrite, Exact, By, Rest };

enum class ArgKind { Hypothesis, LemmaRef, Term };

const char* family_name(TacticFamily family) noexcept;
const char* arg_kind_name(ArgKind kind) noexcept;

struct TacticArg {
  ArgKind kind = ArgKind::Term;
  std::string text;
  bool operator==(const TacticArg&) const = default;
};

// One ';'-separated component of a tactic sentence.
struct TacticAtom {
  TacticFamily family = TacticFamily::Rest;
  std::vector<TacticArg> args;
  bool operator==(const TacticAtom&) const = default;
};

// One '.'-terminated tactic sentence.
struct TacticStep {
  std::vector<TacticAtom> atoms;
  bool operator==(const TacticStep&) const = default;
};

struct LemmaScript {
  std::string name;
  std::vector<std::string> statement_tokens;
  std::vector<TacticStep> steps;
  bool operator==(const LemmaScript&) const = default;
};

struct Corpus {
  std::vector<std::string> source_files;
  std::vector<std::string> imports;  // Require'd names, in first-seen order
  std::vector<LemmaScript> lemmas;   // file order, then position
  bool operator==(const Corpus&) const = default;
};

// Parses `Lemma <name> : <statement>. Proof. <steps> Qed.` blocks and
// Require import lines from each (fileName, text) source, in order.
// Throws Error(ParseError) with file:line context, or DuplicateLemma.
Corpus parse_corpus(const std::vector<std::pair<std::string, std::string>>& sources);

// The EBNF of the script language; byte-stable across calls.
std::string grammar_ebnf();

// Canonical re-rendering; parse(pretty_print(c)) reproduces c's imports
// and lemmas. Test plumbing, also used by the fixture generator tests.
std::string pretty_print(const Corpus& corpus);

std::string corpus_to_json(const Corpus& corpus);
Corpus corpus_from_json(const std::string& text);

// Token classification helpers shared with feature extraction.
bool is_identifier_token(const std::string& token);
bool is_quantifier_token(const std::string& token);
bool is_keyword_token(const std::string& token);

}  // namespace workbench
