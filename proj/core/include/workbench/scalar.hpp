#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "workbench/error.hpp"

namespace workbench {

// The coefficient field of the matrix kernel: Q with exact rationals,
// or GF(p) for a word-sized prime p. No floating point anywhere here.
class Field {
 public:
  static Field rationals() { return Field(0); }

  // Throws NonPrimeModulus unless p is prime.
  static Field prime(std::uint64_t p);

  bool is_rational() const { return modulus_ == 0; }
  bool is_prime_field() const { return modulus_ != 0; }
  std::uint64_t modulus() const;

  bool operator==(const Field& other) const { return modulus_ == other.modulus_; }
  bool operator!=(const Field& other) const { return !(*this == other); }

  std::string name() const;

 private:
  friend class Scalar;  // residues re-wrap their already-validated modulus
  explicit Field(std::uint64_t modulus) : modulus_(modulus) {}
  std::uint64_t modulus_;  // 0 encodes Q
};

// Deterministic Miller-Rabin, exact for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// One exact field element. Rationals are kept in canonical reduced
// form (gcd(|num|, den) = 1, den >= 1, zero as 0/1); prime-field
// residues live in [0, p). Mixed-field arithmetic throws FieldMismatch.
class Scalar {
 public:
  struct Rational {
    mpq_class value;
    bool operator==(const Rational& o) const { return value == o.value; }
  };
  struct Residue {
    std::uint64_t value;
    std::uint64_t modulus;
    bool operator==(const Residue& o) const = default;
  };

  Scalar() : rep_(Rational{mpq_class(0)}) {}

  static Scalar zero(const Field& f) { return from_int(f, 0); }
  static Scalar one(const Field& f) { return from_int(f, 1); }
  static Scalar from_int(const Field& f, long long v);
  static Scalar rational(long long num, long long den);
  static Scalar rational(const mpq_class& q);
  static Scalar residue(std::uint64_t value, const Field& f);

  // Accepts "n" and "n/d" with an optional leading '-'.
  static Scalar parse(const Field& f, const std::string& text);

  Field field() const;

  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // DivisionByZero on zero divisor
  Scalar operator-() const;
  Scalar inverse() const;  // DivisionByZero on zero

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const { return rep_ == o.rep_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // "num/den" (den omitted when 1) for Q; decimal residue for GF(p).
  std::string str() const;

  bool is_rational() const { return std::holds_alternative<Rational>(rep_); }
  const mpq_class& rational_value() const { return std::get<Rational>(rep_).value; }
  std::uint64_t residue_value() const { return std::get<Residue>(rep_).value; }

  // True iff the representation invariant holds; exercised by tests on
  // the outputs of every kernel operation.
  bool is_canonical() const;

 private:
  explicit Scalar(Rational r) : rep_(std::move(r)) {}
  explicit Scalar(Residue r) : rep_(r) {}

  std::variant<Rational, Residue> rep_;
};

}  // namespace workbench
