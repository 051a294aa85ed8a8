#include "workbench/fixtures.hpp"

#include <algorithm>
#include <sstream>

#include "workbench/error.hpp"
#include "workbench/rng.hpp"

namespace workbench {

namespace {

const char* const kRefinementFamily = "refinement";
const char* const kRefinementLemmas[4] = {"cfast_invmxP", "rank_elim_seqmxE",
                                          "fast_mult_seqmxP", "det_seqmxP"};

std::string two_digits(std::size_t n) {
  std::string s = std::to_string(n);
  return s.size() < 2 ? "0" + s : s;
}

// %F family name, %N member ordinal, %1..%9 member substitutions,
// %X statement-length jitter (0/2/4 extra tokens by ordinal).
std::string expand(const std::string& tmpl, const FamilySpec& family, std::size_t ordinal,
                   const std::vector<std::string>& subs) {
  std::string out;
  out.reserve(tmpl.size() + 16);
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] != '%' || i + 1 == tmpl.size()) {
      out.push_back(tmpl[i]);
      continue;
    }
    const char c = tmpl[++i];
    if (c == 'F') {
      out += family.name;
    } else if (c == 'N') {
      out += two_digits(ordinal);
    } else if (c == 'X') {
      if (family.jitter && ordinal % 3 == 1) out += " -> " + family.name + "_spare";
      if (family.jitter && ordinal % 3 == 2)
        out += " -> " + family.name + "_spare -> " + family.name + "_extra";
    } else if (c >= '1' && c <= '9') {
      const std::size_t k = static_cast<std::size_t>(c - '1');
      if (k >= subs.size())
        fail(Errc::BadFixtureSpec, "family '" + family.name + "' uses %" + std::string(1, c) +
                                       " but provides only " + std::to_string(subs.size()) +
                                       " substitutions");
      out += subs[k];
    } else {
      fail(Errc::BadFixtureSpec, std::string("unknown placeholder %") + c);
    }
  }
  return out;
}

std::vector<FamilyMember> members_of(const FamilySpec& family) {
  if (!family.explicit_members.empty()) {
    if (family.explicit_members.size() != family.member_count)
      fail(Errc::BadFixtureSpec, "family '" + family.name + "' lists " +
                                     std::to_string(family.explicit_members.size()) +
                                     " members but declares " +
                                     std::to_string(family.member_count));
    return family.explicit_members;
  }
  std::vector<FamilyMember> members;
  members.reserve(family.member_count);
  for (std::size_t m = 0; m < family.member_count; ++m) {
    FamilyMember member;
    member.lemma_name = family.name + "_lemma_" + two_digits(m);
    for (std::size_t k = 0; k < family.substitution_count; ++k)
      member.substitutions.push_back(family.name + "_op" + std::to_string(k + 1) + "_" +
                                     two_digits(m));
    members.push_back(std::move(member));
  }
  return members;
}

std::string render_family_file(const FamilySpec& family) {
  std::ostringstream out;
  out << "(* " << family.name << " pattern family, generated fixture *)\n";
  if (!family.imports.empty()) {
    out << "Require Import";
    for (const std::string& name : family.imports) out << ' ' << name;
    out << ".\n";
  }
  out << "\n";
  const std::vector<FamilyMember> members = members_of(family);
  for (std::size_t m = 0; m < members.size(); ++m) {
    const FamilyMember& member = members[m];
    out << "Lemma " << member.lemma_name << " : "
        << expand(family.statement_template, family, m, member.substitutions) << ".\n";
    out << "Proof.\n";
    for (const std::string& step : family.tactic_template)
      out << expand(step, family, m, member.substitutions) << "\n";
    out << "Qed.\n\n";
  }
  return out.str();
}

// Noise lemmas avoid '=' in statements and never open a step with
// move, rewrite or by, so they scatter away from the planted families.
std::string render_noise_file(std::size_t count, std::uint64_t seed) {
  static const char* const kHeads[] = {"case", "elim", "apply", "exact",
                                       "simpl", "auto", "unfold", "ring"};
  static const char* const kBinders[] = {"u", "v", "w", "y", "z"};
  static const char* const kTypes[] = {"T0", "T1", "T2", "T3", "T4"};
  static const char* const kPreds[] = {"holds", "stable", "wf", "closed", "bounded", "tight"};
  static const char* const kAxioms[] = {"noise_ax1", "noise_ax2", "noise_ax3", "noise_ax4",
                                        "noise_ax5"};

  Rng rng(splitmix64(seed) ^ 0x6e6f697365ull);
  std::ostringstream out;
  out << "(* unrelated filler lemmas, generated fixture *)\n";
  out << "Require Import noise_ax1 noise_ax2 noise_ax3 noise_ax4 noise_ax5.\n\n";

  for (std::size_t m = 0; m < count; ++m) {
    const std::string name = "noise_fact_" + two_digits(m);
    const char* binder = kBinders[rng.below(5)];
    std::ostringstream stmt;
    const bool quantified = rng.below(4) != 0;
    if (quantified)
      stmt << "forall ( " << binder << " : " << kTypes[rng.below(5)] << " ) , ";
    stmt << kPreds[rng.below(6)] << " " << binder;
    const std::size_t chain = 1 + rng.below(6);
    for (std::size_t c = 0; c < chain; ++c)
      stmt << " -> " << kPreds[rng.below(6)] << " ( step" << rng.below(4) << " " << binder << " )";

    out << "Lemma " << name << " : " << stmt.str() << ".\n";
    out << "Proof.\n";
    const std::size_t steps = 1 + rng.below(5);
    for (std::size_t s = 0; s < steps; ++s) {
      std::ostringstream line;
      const std::size_t atoms = 1 + rng.below(3);
      for (std::size_t a = 0; a < atoms; ++a) {
        if (a > 0) line << "; ";
        line << kHeads[rng.below(8)];
        const std::size_t args = rng.below(4);
        for (std::size_t g = 0; g < args; ++g) {
          if (rng.below(3) == 0)
            line << " " << kAxioms[rng.below(5)];
          else
            line << " " << binder << g;
        }
      }
      out << line.str() << ".\n";
    }
    out << "Qed.\n\n";
  }
  return out.str();
}

void validate(const FixtureSpec& spec) {
  std::size_t total = spec.noise_lemmas;
  bool refinement_seen = false;
  for (const FamilySpec& family : spec.families) {
    if (family.name.empty()) fail(Errc::BadFixtureSpec, "family with empty name");
    if (family.member_count == 0)
      fail(Errc::BadFixtureSpec, "family '" + family.name + "' has memberCount 0");
    if (family.statement_template.empty() || family.tactic_template.empty())
      fail(Errc::BadFixtureSpec, "family '" + family.name + "' lacks templates");
    total += family.member_count;
    if (family.name == kRefinementFamily) {
      refinement_seen = true;
      if (family.member_count != 4 || family.explicit_members.size() != 4)
        fail(Errc::BadFixtureSpec, "the refinement family must have exactly 4 explicit members");
      for (std::size_t i = 0; i < 4; ++i)
        if (family.explicit_members[i].lemma_name != kRefinementLemmas[i])
          fail(Errc::BadFixtureSpec, "refinement member " + std::to_string(i) + " must be named " +
                                         kRefinementLemmas[i]);
    }
  }
  if (!refinement_seen)
    fail(Errc::BadFixtureSpec, "the 4-lemma refinement family is required");
  if (total < 30)
    fail(Errc::BadFixtureSpec,
         "corpus of " + std::to_string(total) + " lemmas is below the minimum of 30");
}

}  // namespace

FixtureSpec default_fixture_spec() {
  FixtureSpec spec;
  spec.noise_lemmas = 20;
  spec.seed = 0;

  FamilySpec refinement;
  refinement.name = kRefinementFamily;
  refinement.member_count = 4;
  refinement.jitter = false;
  refinement.statement_template =
      "forall ( n : nat ) ( M : 'M_n ) , seqmx_of_mx ( %1 M ) = %2 ( seqmx_of_mx M )";
  refinement.tactic_template = {"move=> n M.", "rewrite morphismP; apply: %3.", "by elim: n M."};
  refinement.imports = {"morphismP", "translate_invP", "translate_rankP", "translate_mulP",
                        "translate_detP"};
  refinement.explicit_members = {
      {"cfast_invmxP", {"fast_invmx", "cfast_invmx", "translate_invP"}},
      {"rank_elim_seqmxE", {"rank_mx", "rank_elim_seqmx", "translate_rankP"}},
      {"fast_mult_seqmxP", {"mulmx", "fast_mult_seqmx", "translate_mulP"}},
      {"det_seqmxP", {"det_mx", "det_seqmx", "translate_detP"}},
  };
  spec.families.push_back(std::move(refinement));

  FamilySpec seqpoly;
  seqpoly.name = "seqpoly";
  seqpoly.member_count = 24;
  seqpoly.substitution_count = 2;
  seqpoly.statement_template =
      "forall ( p : polyT ) , forall ( q : polyT ) , %1 ( padd p q ) = %2 ( pmul q p )%X";
  seqpoly.tactic_template = {"case: p => [| c cs].", "rewrite paddC.", "rewrite pmulC.",
                             "exact: poly_ext."};
  seqpoly.imports = {"paddC", "pmulC", "poly_ext"};
  spec.families.push_back(std::move(seqpoly));

  FamilySpec bigmod;
  bigmod.name = "bigmod";
  bigmod.member_count = 22;
  bigmod.substitution_count = 2;
  bigmod.statement_template = "forall ( b : bigT ) , modw b -> modw ( %1 b )%X";
  bigmod.tactic_template = {"elim: b => [| c IH].", "by apply: bigmod_step; rewrite %2."};
  bigmod.imports = {"bigmod_step"};
  spec.families.push_back(std::move(bigmod));

  FamilySpec ordpath;
  ordpath.name = "ordpath";
  ordpath.member_count = 20;
  ordpath.substitution_count = 2;
  ordpath.statement_template = "ordpath_ok ( %1 ( link o ) ) = ordpath_ok ( o )%X";
  ordpath.tactic_template = {"apply: ordpath_ind.", "apply: %1.", "case: o => [| r rs].",
                             "rewrite %2 ordcat.", "exact: ordpath_base."};
  ordpath.imports = {"ordpath_ind", "ordpath_base", "ordcat"};
  spec.families.push_back(std::move(ordpath));

  FamilySpec fingraph;
  fingraph.name = "fingraph";
  fingraph.member_count = 16;
  fingraph.substitution_count = 3;
  fingraph.statement_template =
      "forall ( g : graphT ) , connected ( %3 g ) -> connected g%X";
  fingraph.tactic_template = {"by rewrite %1 %2 fing_symm fing_base."};
  fingraph.imports = {"fing_symm", "fing_base"};
  spec.families.push_back(std::move(fingraph));

  FamilySpec stringlat;
  stringlat.name = "stringlat";
  stringlat.member_count = 14;
  stringlat.substitution_count = 3;
  stringlat.statement_template =
      "forall ( s : strT ) , lat_le ( %2 s ) ( strcat s s ) = true%X";
  stringlat.tactic_template = {"case: s; rewrite %3; auto.", "exact: %1.", "exact: strcat_mono."};
  stringlat.imports = {"strcat_mono", "lat_refl"};
  spec.families.push_back(std::move(stringlat));

  return spec;
}

std::vector<GeneratedFile> generate_fixtures(const FixtureSpec& spec) {
  validate(spec);
  std::vector<GeneratedFile> files;
  files.reserve(spec.families.size() + 1);
  std::size_t index = 1;
  for (const FamilySpec& family : spec.families) {
    GeneratedFile file;
    file.name = two_digits(index++) + "_" + family.name + ".vp";
    file.text = render_family_file(family);
    files.push_back(std::move(file));
  }
  if (spec.noise_lemmas > 0) {
    GeneratedFile file;
    file.name = two_digits(index) + "_noise.vp";
    file.text = render_noise_file(spec.noise_lemmas, spec.seed);
    files.push_back(std::move(file));
  }
  return files;
}

}  // namespace workbench
