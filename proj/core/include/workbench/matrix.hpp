#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "workbench/scalar.hpp"

namespace workbench {

// Counts scalar multiplications performed by the operation it is
// passed to. Callers own the counter; nothing global.
struct MulCounter {
  std::uint64_t muls = 0;
};

// Dense square matrix with an explicit dimension and a single field
// instance shared by all entries. Size 0 is a valid matrix.
class AbstractMatrix {
 public:
  AbstractMatrix(const Field& field, std::size_t n)
      : field_(field), n_(n), entries_(n * n, Scalar::zero(field)) {}

  static AbstractMatrix identity(const Field& field, std::size_t n);
  static AbstractMatrix from_rows(const Field& field,
                                  const std::vector<std::vector<Scalar>>& rows);
  static AbstractMatrix from_fn(const Field& field, std::size_t n,
                                const std::function<Scalar(std::size_t, std::size_t)>& entry);

  std::size_t size() const { return n_; }
  const Field& field() const { return field_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }

  bool operator==(const AbstractMatrix& o) const {
    return n_ == o.n_ && field_ == o.field_ && entries_ == o.entries_;
  }
  bool operator!=(const AbstractMatrix& o) const { return !(*this == o); }

 private:
  Field field_;
  std::size_t n_;
  std::vector<Scalar> entries_;
};

// The executable representation: an ordered list of rows. Carries no
// field of its own (the 0x0 matrix is just the empty list); shape and
// field uniformity are validated at construction.
class SeqMatrix {
 public:
  SeqMatrix() = default;
  explicit SeqMatrix(std::vector<std::vector<Scalar>> rows);

  const std::vector<std::vector<Scalar>>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t col_count() const { return rows_.empty() ? 0 : rows_.front().size(); }
  bool is_square() const { return row_count() == col_count(); }

  bool operator==(const SeqMatrix& o) const { return rows_ == o.rows_; }
  bool operator!=(const SeqMatrix& o) const { return !(*this == o); }

  // Skips the rectangularity/field scan; for internal recursion steps
  // whose inputs were already validated.
  static SeqMatrix unchecked(std::vector<std::vector<Scalar>> rows);

 private:
  std::vector<std::vector<Scalar>> rows_;
};

// First row/column split of a nonempty square matrix.
struct Block {
  Scalar top_left;
  std::vector<Scalar> top_right;    // length n-1
  std::vector<Scalar> bottom_left;  // length n-1
  AbstractMatrix bottom_right;      // (n-1) x (n-1)
};

// True iff every diagonal entry is 1 and everything strictly above the
// diagonal is 0 (lower-unitriangular).
bool is_unitriangular(const AbstractMatrix& m);

// Throws EmptyMatrix on the 0x0 matrix.
Block block_decompose(const AbstractMatrix& m);

// Inverse of block_decompose; the result reproduces the source matrix
// entry for entry.
AbstractMatrix block_compose(const Block& block);

// Exact Gauss-Jordan inverse with nonzero-pivot search. Throws
// Singular when no inverse exists.
AbstractMatrix invmx(const AbstractMatrix& m, MulCounter* counter = nullptr);

// Recursive unitriangular inverse on the abstract representation.
// Requires is_unitriangular (checked eagerly, throws NotUnitriangular).
AbstractMatrix fast_invmx(const AbstractMatrix& m, MulCounter* counter = nullptr);

// Exact naive product of two square matrices of equal size.
AbstractMatrix mulmx(const AbstractMatrix& a, const AbstractMatrix& b,
                     MulCounter* counter = nullptr);

// Representation morphism and its inverse. mx_of_seqmx needs the field
// spelled out because the empty list carries none.
SeqMatrix seqmx_of_mx(const AbstractMatrix& m);
AbstractMatrix mx_of_seqmx(const Field& field, std::size_t n, const SeqMatrix& s);

// Same recursion as fast_invmx, executed purely on list-of-rows data:
// split off head row and head column, recurse on the tail block.
SeqMatrix cfast_invmx(const SeqMatrix& s, MulCounter* counter = nullptr);

// Exact naive product on list data; the oracle for fast_mult_seqmx.
SeqMatrix mul_seqmx(const SeqMatrix& a, const SeqMatrix& b, MulCounter* counter = nullptr);

// Strassen recursion with a naive product at or below `cutoff`; odd
// sizes are handled by peeling the last row/column. Exactly equal to
// mul_seqmx on every input.
SeqMatrix fast_mult_seqmx(const SeqMatrix& a, const SeqMatrix& b, std::size_t cutoff = 64,
                          MulCounter* counter = nullptr);

// Exact determinant via Gaussian elimination with pivot-swap sign
// tracking, on each representation.
Scalar det_mx(const AbstractMatrix& m);
Scalar det_seqmx(const Field& field, const SeqMatrix& s);

// Exact rank via row-echelon elimination, on each representation.
std::size_t rank_mx(const AbstractMatrix& m);
std::size_t rank_elim_seqmx(const SeqMatrix& s);

}  // namespace workbench
