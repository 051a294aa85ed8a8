#include "workbench/scalar.hpp"

#include <algorithm>

namespace workbench {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(u128(a) * b % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t acc = 1 % p;
  while (exp != 0) {
    if (exp & 1) acc = mulmod(acc, base, p);
    base = mulmod(base, base, p);
    exp >>= 1;
  }
  return acc;
}

// Inverse mod p by extended Euclid; v must be nonzero mod p.
std::uint64_t invmod(std::uint64_t v, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(v);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is a proven deterministic witness set for all 64-bit n.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (1ull << 63))
    fail(Errc::NonPrimeModulus, "modulus " + std::to_string(p) + " does not fit the supported word range");
  if (!is_prime_u64(p))
    fail(Errc::NonPrimeModulus, "modulus " + std::to_string(p) + " is not prime");
  return Field(p);
}

std::uint64_t Field::modulus() const {
  if (is_rational()) fail(Errc::FieldMismatch, "Q has no modulus");
  return modulus_;
}

std::string Field::name() const {
  return is_rational() ? "Q" : "GF(" + std::to_string(modulus_) + ")";
}

Scalar Scalar::from_int(const Field& f, long long v) {
  if (f.is_rational()) return Scalar(Rational{mpq_class(static_cast<long>(v))});
  const std::uint64_t p = f.modulus();
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += static_cast<long long>(p);
  return Scalar(Residue{static_cast<std::uint64_t>(r), p});
}

Scalar Scalar::rational(long long num, long long den) {
  if (den == 0) fail(Errc::DivisionByZero, "rational with zero denominator");
  mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  return Scalar(Rational{q});
}

Scalar Scalar::rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return Scalar(Rational{c});
}

Scalar Scalar::residue(std::uint64_t value, const Field& f) {
  const std::uint64_t p = f.modulus();
  return Scalar(Residue{value % p, p});
}

Scalar Scalar::parse(const Field& f, const std::string& text) {
  if (text.empty()) fail(Errc::JsonFormatError, "empty scalar literal");
  if (f.is_prime_field()) {
    std::uint64_t v = 0;
    for (char c : text) {
      if (c < '0' || c > '9') fail(Errc::JsonFormatError, "bad residue literal '" + text + "'");
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
      if (v >= f.modulus()) fail(Errc::JsonFormatError, "residue '" + text + "' out of range for " + f.name());
    }
    return Scalar(Residue{v, f.modulus()});
  }
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    fail(Errc::JsonFormatError, "bad rational literal '" + text + "'");
  if (q.get_den() == 0) fail(Errc::JsonFormatError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return Scalar(Rational{q});
}

Field Scalar::field() const {
  if (is_rational()) return Field::rationals();
  return Field(std::get<Residue>(rep_).modulus);
}

bool Scalar::is_zero() const {
  if (const auto* r = std::get_if<Rational>(&rep_)) return r->value == 0;
  return std::get<Residue>(rep_).value == 0;
}

bool Scalar::is_one() const {
  if (const auto* r = std::get_if<Rational>(&rep_)) return r->value == 1;
  return std::get<Residue>(rep_).value == 1 % std::get<Residue>(rep_).modulus;
}

namespace {

[[noreturn]] void mixed_fields() {
  fail(Errc::FieldMismatch, "operands belong to different fields");
}

const Scalar::Residue& residue_of(const Scalar::Residue& a, const Scalar::Residue& b) {
  if (a.modulus != b.modulus) mixed_fields();
  return a;
}

}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  if (const auto* a = std::get_if<Residue>(&rep_)) {
    const auto* b = std::get_if<Residue>(&o.rep_);
    if (!b) mixed_fields();
    residue_of(*a, *b);
    std::uint64_t s = a->value + b->value;  // p < 2^63, no overflow
    if (s >= a->modulus) s -= a->modulus;
    return Scalar(Residue{s, a->modulus});
  }
  const auto* b = std::get_if<Rational>(&o.rep_);
  if (!b) mixed_fields();
  return Scalar(Rational{std::get<Rational>(rep_).value + b->value});
}

Scalar Scalar::operator-(const Scalar& o) const {
  if (const auto* a = std::get_if<Residue>(&rep_)) {
    const auto* b = std::get_if<Residue>(&o.rep_);
    if (!b) mixed_fields();
    residue_of(*a, *b);
    std::uint64_t s = a->value >= b->value ? a->value - b->value : a->value + a->modulus - b->value;
    return Scalar(Residue{s, a->modulus});
  }
  const auto* b = std::get_if<Rational>(&o.rep_);
  if (!b) mixed_fields();
  return Scalar(Rational{std::get<Rational>(rep_).value - b->value});
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (const auto* a = std::get_if<Residue>(&rep_)) {
    const auto* b = std::get_if<Residue>(&o.rep_);
    if (!b) mixed_fields();
    residue_of(*a, *b);
    return Scalar(Residue{mulmod(a->value, b->value, a->modulus), a->modulus});
  }
  const auto* b = std::get_if<Rational>(&o.rep_);
  if (!b) mixed_fields();
  return Scalar(Rational{std::get<Rational>(rep_).value * b->value});
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(Errc::DivisionByZero, "zero has no multiplicative inverse");
  if (const auto* a = std::get_if<Residue>(&rep_))
    return Scalar(Residue{invmod(a->value, a->modulus), a->modulus});
  return Scalar(Rational{1 / std::get<Rational>(rep_).value});
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) fail(Errc::DivisionByZero, "division by zero");
  return *this * o.inverse();
}

Scalar Scalar::operator-() const {
  if (const auto* a = std::get_if<Residue>(&rep_)) {
    std::uint64_t v = a->value == 0 ? 0 : a->modulus - a->value;
    return Scalar(Residue{v, a->modulus});
  }
  return Scalar(Rational{-std::get<Rational>(rep_).value});
}

std::string Scalar::str() const {
  if (const auto* a = std::get_if<Residue>(&rep_)) return std::to_string(a->value);
  return std::get<Rational>(rep_).value.get_str();
}

bool Scalar::is_canonical() const {
  if (const auto* a = std::get_if<Residue>(&rep_))
    return a->modulus >= 2 && a->value < a->modulus;
  const mpq_class& q = std::get<Rational>(rep_).value;
  if (q.get_den() < 1) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return g == 1;
}

}  // namespace workbench
