#include "workbench/features.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

#include "workbench/error.hpp"

namespace workbench {

std::vector<std::string> corpus_symbols(const Corpus& corpus) {
  std::set<std::string> symbols;
  for (const std::string& name : corpus.imports) symbols.insert(name);
  for (const LemmaScript& lemma : corpus.lemmas) {
    symbols.insert(lemma.name);
    for (const std::string& token : lemma.statement_tokens)
      if (is_identifier_token(token) && !is_quantifier_token(token) && !is_keyword_token(token))
        symbols.insert(token);
    for (const TacticStep& step : lemma.steps)
      for (const TacticAtom& atom : step.atoms)
        for (const TacticArg& arg : atom.args) symbols.insert(arg.text);
  }
  return {symbols.begin(), symbols.end()};
}

namespace {

double capped(std::size_t count, std::size_t cap) {
  return static_cast<double>(std::min(count, cap)) / static_cast<double>(cap);
}

}  // namespace

std::vector<double> extract_lemma(const LemmaScript& lemma,
                                  const std::vector<std::string>& symbols,
                                  const ExtractionConfig& config) {
  if (symbols.empty()) fail(Errc::EmptySymbolTable, "no symbols to index statements against");

  std::vector<double> v(config.width(), 0.0);

  std::size_t quantifiers = 0;
  bool has_equality = false;
  for (const std::string& token : lemma.statement_tokens) {
    if (is_quantifier_token(token)) ++quantifiers;
    if (token == "=") has_equality = true;
  }
  v[0] = capped(quantifiers, config.quant_cap);
  v[1] = has_equality ? 1.0 : 0.0;
  v[2] = capped(lemma.statement_tokens.size(), config.len_cap);

  for (const std::string& token : lemma.statement_tokens) {
    if (!is_identifier_token(token) || is_quantifier_token(token) || is_keyword_token(token))
      continue;
    auto it = std::lower_bound(symbols.begin(), symbols.end(), token);
    if (it != symbols.end() && *it == token) {
      const auto index = static_cast<std::size_t>(it - symbols.begin());
      v[3] = static_cast<double>(index + 1) / static_cast<double>(symbols.size());
    }
    break;  // head symbol only
  }

  const std::size_t encoded = std::min(lemma.steps.size(), config.steps_k);
  for (std::size_t i = 0; i < encoded; ++i) {
    const TacticStep& step = lemma.steps[i];
    std::size_t total_args = 0;
    std::size_t lemma_refs = 0;
    for (const TacticAtom& atom : step.atoms) {
      total_args += atom.args.size();
      for (const TacticArg& arg : atom.args)
        if (arg.kind == ArgKind::LemmaRef) ++lemma_refs;
    }
    const std::size_t base = 4 + 4 * i;
    v[base + 0] = step.atoms.empty()
                      ? 0.0
                      : static_cast<double>(static_cast<int>(step.atoms.front().family) + 1) / 8.0;
    v[base + 1] = capped(total_args, config.arg_cap);
    v[base + 2] = static_cast<double>(lemma_refs) /
                  static_cast<double>(std::max<std::size_t>(total_args, 1));
    v[base + 3] = capped(step.atoms.size(), config.compose_cap);
  }
  return v;
}

FeatureTable extract_corpus(const Corpus& corpus, const ExtractionConfig& config) {
  FeatureTable table;
  table.width = config.width();
  table.config = config;
  if (corpus.lemmas.empty()) return table;

  const std::vector<std::string> symbols = corpus_symbols(corpus);
  table.lemma_names.reserve(corpus.lemmas.size());
  table.rows.reserve(corpus.lemmas.size());
  for (const LemmaScript& lemma : corpus.lemmas) {
    table.lemma_names.push_back(lemma.name);
    table.rows.push_back(extract_lemma(lemma, symbols, config));
  }
  return table;
}

std::string write_features(const FeatureTable& table) {
  std::ostringstream out;
  out << "lemma";
  for (std::size_t i = 1; i <= table.width; ++i) out << ",f" << i;
  out << "\n";
  char buffer[32];
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << table.lemma_names[r];
    for (double value : table.rows[r]) {
      std::snprintf(buffer, sizeof buffer, "%.6f", value);
      out << ',' << buffer;
    }
    out << "\n";
  }
  return out.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  return cells;
}

}  // namespace

FeatureTable read_features(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) fail(Errc::CsvFormatError, "line 1: empty CSV");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 2 || header.front() != "lemma")
    fail(Errc::CsvFormatError, "line 1: header must be \"lemma,f1,...\"");

  FeatureTable table;
  table.width = header.size() - 1;
  if (table.width >= 4 && (table.width - 4) % 4 == 0)
    table.config.steps_k = (table.width - 4) / 4;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != table.width + 1)
      fail(Errc::CsvFormatError, "line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(table.width + 1) + " columns, got " +
                                     std::to_string(cells.size()));
    table.lemma_names.push_back(cells.front());
    std::vector<double> row;
    row.reserve(table.width);
    for (std::size_t i = 1; i < cells.size(); ++i) {
      char* end = nullptr;
      const double value = std::strtod(cells[i].c_str(), &end);
      if (end == cells[i].c_str() || *end != '\0')
        fail(Errc::CsvFormatError,
             "line " + std::to_string(line_no) + ": bad number '" + cells[i] + "'");
      row.push_back(value);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace workbench
