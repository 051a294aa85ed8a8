#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "workbench/script.hpp"

namespace workbench {

// One member of a planted family: the lemma name plus the values that
// replace %1..%9 in the family templates.
struct FamilyMember {
  std::string lemma_name;
  std::vector<std::string> substitutions;
};

// A planted proof-pattern family. Every member instantiates the same
// statement/tactic skeleton, so the extracted vectors sit close
// together. Members can be spelled out explicitly (the refinement
// family pins its four lemma names) or generated from the family name.
struct FamilySpec {
  std::string name;
  std::size_t member_count = 0;
  std::string statement_template;
  std::vector<std::string> tactic_template;  // one template per proof step
  std::vector<std::string> imports;          // Require'd names for this family's file
  std::vector<FamilyMember> explicit_members;
  std::size_t substitution_count = 0;  // %k placeholders for generated members
  bool jitter = true;                  // vary statement length slightly per member
};

struct FixtureSpec {
  std::vector<FamilySpec> families;
  std::size_t noise_lemmas = 20;
  std::uint64_t seed = 0;
};

struct GeneratedFile {
  std::string name;
  std::string text;
};

// 120 lemmas: the 4-lemma refinement family, five more pattern
// families, and 20 noise lemmas.
FixtureSpec default_fixture_spec();

// Deterministically renders the corpus files for a spec. Validates the
// spec (every family non-empty, the refinement family present with its
// four pinned lemmas, total size >= 30); throws BadFixtureSpec.
std::vector<GeneratedFile> generate_fixtures(const FixtureSpec& spec);

}  // namespace workbench
