#include "workbench/script.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <json.hpp>

namespace workbench {

const char* family_name(TacticFamily family) noexcept {
  switch (family) {
    case TacticFamily::Move: return "move";
    case TacticFamily::Case: return "case";
    case TacticFamily::Elim: return "elim";
    case TacticFamily::Apply: return "apply";
    case TacticFamily::Rewrite: return "rewrite";
    case TacticFamily::Exact: return "exact";
    case TacticFamily::By: return "by";
    case TacticFamily::Rest: return "rest";
  }
  return "rest";
}

const char* arg_kind_name(ArgKind kind) noexcept {
  switch (kind) {
    case ArgKind::Hypothesis: return "hypothesis";
    case ArgKind::LemmaRef: return "lemmaRef";
    case ArgKind::Term: return "term";
  }
  return "term";
}

bool is_identifier_token(const std::string& token) {
  if (token.empty()) return false;
  const char c = token.front();
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool is_quantifier_token(const std::string& token) {
  return token == "forall" || token == "exists";
}

bool is_keyword_token(const std::string& token) {
  return token == "Lemma" || token == "Proof" || token == "Qed" || token == "Require" ||
         token == "Import" || token == "Export";
}

namespace {

struct Token {
  std::string text;
  int line = 0;
};

[[noreturn]] void parse_fail(const std::string& file, int line, const std::string& message) {
  fail(Errc::ParseError, file + ":" + std::to_string(line) + ": " + message);
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> tokenize(const std::string& file, const std::string& text) {
  std::vector<Token> tokens;
  int line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(' && i + 1 < n && text[i + 1] == '*') {
      // Nested comments count as whitespace.
      const int start_line = line;
      int depth = 1;
      i += 2;
      while (i < n && depth > 0) {
        if (text[i] == '\n') ++line;
        if (text[i] == '(' && i + 1 < n && text[i + 1] == '*') {
          ++depth;
          i += 2;
        } else if (text[i] == '*' && i + 1 < n && text[i + 1] == ')') {
          --depth;
          i += 2;
        } else {
          ++i;
        }
      }
      if (depth > 0) parse_fail(file, start_line, "unterminated comment");
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < n && ident_char(text[j])) ++j;
      tokens.push_back({text.substr(i, j - i), line});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tokens.push_back({text.substr(i, j - i), line});
      i = j;
      continue;
    }
    if (i + 1 < n) {
      const std::string two = text.substr(i, 2);
      if (two == "=>" || two == "->" || two == "<-" || two == ":=") {
        tokens.push_back({two, line});
        i += 2;
        continue;
      }
    }
    static const std::string singles = "=:;,()[]|.+-*/<>@!?&~^";
    if (singles.find(c) != std::string::npos) {
      tokens.push_back({std::string(1, c), line});
      ++i;
      continue;
    }
    parse_fail(file, line, std::string("unexpected character '") + c + "'");
  }
  return tokens;
}

class FileParser {
 public:
  FileParser(const std::string& file, std::vector<Token> tokens, Corpus& corpus,
             std::set<std::string>& seen_names)
      : file_(file), tokens_(std::move(tokens)), corpus_(corpus), seen_names_(seen_names) {}

  void run() {
    while (!at_end()) {
      const Token& t = peek();
      if (t.text == "Require")
        parse_require();
      else if (t.text == "Lemma")
        parse_lemma();
      else
        parse_fail(file_, t.line, "expected 'Lemma' or 'Require', got '" + t.text + "'");
    }
  }

 private:
  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }
  int last_line() const { return tokens_.empty() ? 1 : tokens_.back().line; }

  void parse_require() {
    take();  // Require
    if (!at_end() && (peek().text == "Import" || peek().text == "Export")) take();
    bool any = false;
    while (!at_end() && peek().text != ".") {
      Token t = take();
      if (!is_identifier_token(t.text))
        parse_fail(file_, t.line, "expected identifier in import list, got '" + t.text + "'");
      if (std::find(corpus_.imports.begin(), corpus_.imports.end(), t.text) ==
          corpus_.imports.end())
        corpus_.imports.push_back(t.text);
      any = true;
    }
    if (at_end()) parse_fail(file_, last_line(), "missing '.' after Require");
    take();  // '.'
    if (!any) parse_fail(file_, last_line(), "empty import list");
  }

  // Tokens up to a '.' at zero paren/bracket depth; the '.' is consumed.
  std::vector<Token> take_sentence(const char* what) {
    std::vector<Token> out;
    int depth = 0;
    while (!at_end()) {
      const Token& t = peek();
      if (t.text == "(" || t.text == "[") ++depth;
      if (t.text == ")" || t.text == "]") {
        --depth;
        if (depth < 0) parse_fail(file_, t.line, std::string("unbalanced parentheses in ") + what);
      }
      if (t.text == "." && depth == 0) {
        take();
        return out;
      }
      out.push_back(take());
    }
    if (depth > 0) parse_fail(file_, last_line(), std::string("unbalanced parentheses in ") + what);
    parse_fail(file_, last_line(), std::string("missing '.' after ") + what);
  }

  void parse_lemma() {
    const Token lemma_kw = take();
    if (at_end() || !is_identifier_token(peek().text))
      parse_fail(file_, lemma_kw.line, "expected lemma name after 'Lemma'");
    const Token name = take();
    if (seen_names_.count(name.text))
      fail(Errc::DuplicateLemma, "lemma '" + name.text + "' redefined at " + file_ + ":" +
                                     std::to_string(name.line));
    if (at_end() || peek().text != ":")
      parse_fail(file_, name.line, "expected ':' after lemma name");
    take();

    std::vector<Token> statement = take_sentence("statement");
    if (statement.empty()) parse_fail(file_, name.line, "empty statement");

    if (at_end() || peek().text != "Proof")
      parse_fail(file_, at_end() ? last_line() : peek().line, "missing 'Proof.'");
    const Token proof_kw = take();
    if (at_end() || peek().text != ".")
      parse_fail(file_, proof_kw.line, "expected '.' after 'Proof'");
    take();

    LemmaScript lemma;
    lemma.name = name.text;
    for (const Token& t : statement) lemma.statement_tokens.push_back(t.text);

    bool closed = false;
    while (!at_end()) {
      std::vector<Token> sentence = take_sentence("tactic sentence");
      if (sentence.size() == 1 && sentence.front().text == "Qed") {
        closed = true;
        break;
      }
      lemma.steps.push_back(parse_step(sentence, name.line));
    }
    if (!closed) parse_fail(file_, last_line(), "missing 'Qed.'");
    if (lemma.steps.empty())
      parse_fail(file_, proof_kw.line, "empty proof in lemma '" + lemma.name + "'");

    seen_names_.insert(lemma.name);
    corpus_.lemmas.push_back(std::move(lemma));
  }

  TacticStep parse_step(const std::vector<Token>& sentence, int lemma_line) {
    TacticStep step;
    std::vector<std::vector<Token>> components;
    components.emplace_back();
    int depth = 0;
    for (const Token& t : sentence) {
      if (t.text == "(" || t.text == "[") ++depth;
      if (t.text == ")" || t.text == "]") --depth;
      if (t.text == ";" && depth == 0) {
        components.emplace_back();
        continue;
      }
      components.back().push_back(t);
    }
    for (const auto& component : components) {
      if (component.empty())
        parse_fail(file_, sentence.empty() ? lemma_line : sentence.front().line,
                   "empty tactic component");
      append_atoms(step, component);
    }
    return step;
  }

  void append_atoms(TacticStep& step, const std::vector<Token>& component) {
    std::size_t start = 0;
    // 'by' is an atom of its own; whatever follows forms further atoms.
    while (start < component.size() && component[start].text == "by") {
      step.atoms.push_back(TacticAtom{TacticFamily::By, {}});
      ++start;
    }
    if (start >= component.size()) return;

    TacticAtom atom;
    atom.family = head_family(component[start].text);
    for (std::size_t i = start + 1; i < component.size(); ++i)
      if (is_identifier_token(component[i].text))
        atom.args.push_back(TacticArg{ArgKind::Term, component[i].text});
    step.atoms.push_back(std::move(atom));
  }

  static TacticFamily head_family(const std::string& head) {
    if (head == "move") return TacticFamily::Move;
    if (head == "case") return TacticFamily::Case;
    if (head == "elim") return TacticFamily::Elim;
    if (head == "apply") return TacticFamily::Apply;
    if (head == "rewrite") return TacticFamily::Rewrite;
    if (head == "exact") return TacticFamily::Exact;
    if (head == "by") return TacticFamily::By;
    return TacticFamily::Rest;
  }

  std::string file_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Corpus& corpus_;
  std::set<std::string>& seen_names_;
};

// Second pass: classify arguments once all declarations are known.
void classify_args(Corpus& corpus) {
  std::set<std::string> imports(corpus.imports.begin(), corpus.imports.end());
  std::set<std::string> declared;
  for (LemmaScript& lemma : corpus.lemmas) {
    std::set<std::string> bound(lemma.statement_tokens.begin(), lemma.statement_tokens.end());
    for (TacticStep& step : lemma.steps)
      for (TacticAtom& atom : step.atoms)
        for (TacticArg& arg : atom.args) {
          if (imports.count(arg.text) || declared.count(arg.text))
            arg.kind = ArgKind::LemmaRef;
          else if (bound.count(arg.text))
            arg.kind = ArgKind::Hypothesis;
          else
            arg.kind = ArgKind::Term;
        }
    declared.insert(lemma.name);
  }
}

}  // namespace

Corpus parse_corpus(const std::vector<std::pair<std::string, std::string>>& sources) {
  Corpus corpus;
  std::set<std::string> seen_names;
  for (const auto& [file, text] : sources) {
    corpus.source_files.push_back(file);
    FileParser parser(file, tokenize(file, text), corpus, seen_names);
    parser.run();
  }
  classify_args(corpus);
  return corpus;
}

std::string grammar_ebnf() {
  return R"((* Proof-script mini-language. UTF-8 text files, extension .vp *)

corpus     ::= {item}
item       ::= require | lemma
require    ::= 'Require' ['Import' | 'Export'] ident {ident} '.'
lemma ::= 'Lemma' ident ':' statement '.' proof
proof      ::= 'Proof' '.' step {step} 'Qed' '.'
statement  ::= stoken {stoken}
stoken     ::= ident | quantifier | operator | '(' | ')' | '[' | ']'
step       ::= sentence '.'
sentence   ::= component {';' component}
component  ::= 'by' [component] | head {ctoken}
head       ::= ident
ctoken     ::= ident | operator | '(' | ')' | '[' | ']'
quantifier ::= 'forall' | 'exists'
operator   ::= '=>' | '->' | '<-' | ':=' | '=' | ':' | ',' | '|' | '+' | '-'
             | '*' | '/' | '<' | '>' | '@' | '!' | '?' | '&' | '~' | '^'
ident      ::= (letter | '_' | quote) {letter | digit | '_' | quote}
number     ::= digit {digit}
comment    ::= '(*' {any} '*)'

(* Notes.
   Comments nest and count as whitespace. '.' terminates statements and
   sentences only at zero parenthesis/bracket depth. A component's head
   names a tactic family: move, case, elim, apply, rewrite, exact and by
   are recognised; every other head is 'rest'. 'by' forms an atom of its
   own and the remainder of its component is parsed as a further
   component. A component's arguments are its identifier tokens after
   the head: classified lemmaRef when declared earlier in the corpus or
   imported, hypothesis when the identifier occurs in the lemma's
   statement, term otherwise. A proof with no step before 'Qed' is
   rejected, as is a duplicate lemma name. *)
)";
}

std::string pretty_print(const Corpus& corpus) {
  std::ostringstream out;
  if (!corpus.imports.empty()) {
    out << "Require Import";
    for (const std::string& name : corpus.imports) out << ' ' << name;
    out << ".\n\n";
  }
  for (const LemmaScript& lemma : corpus.lemmas) {
    out << "Lemma " << lemma.name << " :";
    for (const std::string& token : lemma.statement_tokens) out << ' ' << token;
    out << ".\nProof.\n";
    for (const TacticStep& step : lemma.steps) {
      bool first = true;
      for (const TacticAtom& atom : step.atoms) {
        if (!first) out << "; ";
        first = false;
        out << family_name(atom.family);
        for (const TacticArg& arg : atom.args) out << ' ' << arg.text;
      }
      out << ".\n";
    }
    out << "Qed.\n\n";
  }
  return out.str();
}

namespace {
using nlohmann::json;
}

std::string corpus_to_json(const Corpus& corpus) {
  json j;
  j["sourceFiles"] = corpus.source_files;
  j["imports"] = corpus.imports;
  json lemmas = json::array();
  for (const LemmaScript& lemma : corpus.lemmas) {
    json steps = json::array();
    for (const TacticStep& step : lemma.steps) {
      json atoms = json::array();
      for (const TacticAtom& atom : step.atoms) {
        json args = json::array();
        for (const TacticArg& arg : atom.args)
          args.push_back(json{{"kind", arg_kind_name(arg.kind)}, {"text", arg.text}});
        atoms.push_back(json{{"family", family_name(atom.family)}, {"args", std::move(args)}});
      }
      steps.push_back(std::move(atoms));
    }
    lemmas.push_back(json{{"name", lemma.name},
                          {"statement", lemma.statement_tokens},
                          {"steps", std::move(steps)}});
  }
  j["lemmas"] = std::move(lemmas);
  return j.dump(2) + "\n";
}

namespace {

TacticFamily family_from_json_name(const std::string& name) {
  for (TacticFamily f : {TacticFamily::Move, TacticFamily::Case, TacticFamily::Elim,
                         TacticFamily::Apply, TacticFamily::Rewrite, TacticFamily::Exact,
                         TacticFamily::By, TacticFamily::Rest})
    if (name == family_name(f)) return f;
  fail(Errc::JsonFormatError, "unknown tactic family '" + name + "'");
}

ArgKind arg_kind_from_json_name(const std::string& name) {
  for (ArgKind k : {ArgKind::Hypothesis, ArgKind::LemmaRef, ArgKind::Term})
    if (name == arg_kind_name(k)) return k;
  fail(Errc::JsonFormatError, "unknown argument kind '" + name + "'");
}

Corpus corpus_from_json_checked(const json& j) {
  Corpus corpus;
  if (j.contains("sourceFiles")) corpus.source_files = j["sourceFiles"].get<std::vector<std::string>>();
  if (j.contains("imports")) corpus.imports = j["imports"].get<std::vector<std::string>>();

  std::set<std::string> seen;
  for (const json& jl : j["lemmas"]) {
    if (!jl.is_object() || !jl.contains("name") || !jl.contains("statement") ||
        !jl.contains("steps"))
      fail(Errc::JsonFormatError, "lemma entries need \"name\", \"statement\" and \"steps\"");
    LemmaScript lemma;
    lemma.name = jl["name"].get<std::string>();
    if (seen.count(lemma.name)) fail(Errc::DuplicateLemma, "lemma '" + lemma.name + "' repeated");
    seen.insert(lemma.name);
    lemma.statement_tokens = jl["statement"].get<std::vector<std::string>>();
    if (lemma.statement_tokens.empty())
      fail(Errc::JsonFormatError, "lemma '" + lemma.name + "' has an empty statement");
    for (const json& js : jl["steps"]) {
      if (!js.is_array() || js.empty())
        fail(Errc::JsonFormatError, "steps must be non-empty atom arrays");
      TacticStep step;
      for (const json& ja : js) {
        TacticAtom atom;
        atom.family = family_from_json_name(ja.at("family").get<std::string>());
        for (const json& jarg : ja.at("args"))
          atom.args.push_back(TacticArg{arg_kind_from_json_name(jarg.at("kind").get<std::string>()),
                                        jarg.at("text").get<std::string>()});
        step.atoms.push_back(std::move(atom));
      }
      lemma.steps.push_back(std::move(step));
    }
    if (lemma.steps.empty())
      fail(Errc::JsonFormatError, "lemma '" + lemma.name + "' has no proof steps");
    corpus.lemmas.push_back(std::move(lemma));
  }
  return corpus;
}

}  // namespace

Corpus corpus_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Errc::JsonFormatError, "corpus file is not valid JSON");
  if (!j.is_object() || !j.contains("lemmas") || !j["lemmas"].is_array())
    fail(Errc::JsonFormatError, "corpus JSON needs a \"lemmas\" array");

  try {
    return corpus_from_json_checked(j);
  } catch (const json::exception& e) {
    fail(Errc::JsonFormatError, e.what());
  }
}

}  // namespace workbench
