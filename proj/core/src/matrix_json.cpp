#include "workbench/matrix_json.hpp"

#include <json.hpp>

namespace workbench {

namespace {
using nlohmann::json;
}

std::string matrix_to_json(const AbstractMatrix& m) {
  json j;
  if (m.field().is_rational())
    j["field"] = "q";
  else
    j["field"] = json{{"gfp", m.field().modulus()}};
  j["n"] = m.size();
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j2 = 0; j2 < m.size(); ++j2) {
      const Scalar& s = m(i, j2);
      if (s.is_rational())
        row.push_back(s.str());
      else
        row.push_back(s.residue_value());
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

AbstractMatrix matrix_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Errc::JsonFormatError, "matrix file is not valid JSON");
  if (!j.is_object() || !j.contains("field") || !j.contains("n") || !j.contains("rows"))
    fail(Errc::JsonFormatError, "matrix JSON needs \"field\", \"n\" and \"rows\"");

  Field field = Field::rationals();
  const json& f = j["field"];
  if (f.is_string() && f.get<std::string>() == "q") {
    field = Field::rationals();
  } else if (f.is_object() && f.contains("gfp") && f["gfp"].is_number_unsigned()) {
    field = Field::prime(f["gfp"].get<std::uint64_t>());
  } else {
    fail(Errc::JsonFormatError, "\"field\" must be \"q\" or {\"gfp\": p}");
  }

  if (!j["n"].is_number_unsigned()) fail(Errc::JsonFormatError, "\"n\" must be a non-negative integer");
  const std::size_t n = j["n"].get<std::size_t>();
  const json& rows = j["rows"];
  if (!rows.is_array() || rows.size() != n)
    fail(Errc::ShapeMismatch, "expected " + std::to_string(n) + " rows");

  AbstractMatrix m(field, n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != n)
      fail(Errc::ShapeMismatch, "row " + std::to_string(i) + " must have " + std::to_string(n) +
                                    " entries");
    for (std::size_t c = 0; c < n; ++c) {
      const json& cell = row[c];
      if (field.is_rational()) {
        if (!cell.is_string())
          fail(Errc::JsonFormatError, "Q entries must be strings like \"-3/4\"");
        m(i, c) = Scalar::parse(field, cell.get<std::string>());
      } else {
        if (!cell.is_number_integer() || cell.is_number_float())
          fail(Errc::JsonFormatError, "GF(p) entries must be integers");
        const auto v = cell.get<std::int64_t>();
        if (v < 0 || static_cast<std::uint64_t>(v) >= field.modulus())
          fail(Errc::JsonFormatError, "entry " + std::to_string(v) + " out of range for " + field.name());
        m(i, c) = Scalar::residue(static_cast<std::uint64_t>(v), field);
      }
    }
  }
  return m;
}

}  // namespace workbench
