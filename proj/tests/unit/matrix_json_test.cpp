#include <doctest.h>
#include <json.hpp>

#include "test_support.hpp"
#include "workbench/matrix_json.hpp"

using namespace workbench;
using test::mk;

TEST_CASE("matrix JSON round trip over Q") {
  AbstractMatrix m = mk(Field::rationals(), {{1, 2}, {3, 4}});
  m(0, 1) = Scalar::rational(-3, 4);
  const std::string text = matrix_to_json(m);
  CHECK(matrix_from_json(text) == m);

  const nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["field"] == "q");
  CHECK(j["n"] == 2);
  CHECK(j["rows"][0][1] == "-3/4");
  CHECK(j["rows"][1][0] == "3");
}

TEST_CASE("matrix JSON round trip over GF(p)") {
  const Field gf = Field::prime(101);
  const AbstractMatrix m = mk(gf, {{100, 0}, {7, 1}});
  const std::string text = matrix_to_json(m);
  CHECK(matrix_from_json(text) == m);

  const nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["field"]["gfp"] == 101);
  CHECK(j["rows"][0][0] == 100);
}

TEST_CASE("matrix JSON rejects malformed input") {
  CHECK_THROWS_AS(matrix_from_json("not json"), Error);
  CHECK_THROWS_AS(matrix_from_json(R"({"field":"q","n":1})"), Error);
  CHECK_THROWS_AS(matrix_from_json(R"({"field":"r","n":0,"rows":[]})"), Error);
  CHECK_THROWS_AS(matrix_from_json(R"({"field":{"gfp":4},"n":0,"rows":[]})"), Error);
  CHECK_THROWS_AS(matrix_from_json(R"({"field":"q","n":2,"rows":[["1","2"]]})"), Error);
  CHECK_THROWS_AS(matrix_from_json(R"({"field":"q","n":1,"rows":[[5]]})"), Error);
  CHECK_THROWS_AS(matrix_from_json(R"({"field":{"gfp":7},"n":1,"rows":[[9]]})"), Error);

  try {
    matrix_from_json(R"({"field":{"gfp":4},"n":0,"rows":[]})");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonPrimeModulus);
  }
}

TEST_CASE("size-0 matrix serializes as empty rows") {
  const AbstractMatrix m(Field::rationals(), 0);
  const AbstractMatrix back = matrix_from_json(matrix_to_json(m));
  CHECK(back == m);
}
