#include "workbench/matrix.hpp"

#include <string>
#include <utility>

namespace workbench {

namespace {

using Rows = std::vector<std::vector<Scalar>>;

void bump(MulCounter* counter, std::uint64_t count) {
  if (counter) counter->muls += count;
}

void check_same_field(const Field& a, const Field& b) {
  if (a != b) fail(Errc::FieldMismatch, "matrices over " + a.name() + " and " + b.name());
}

}  // namespace

AbstractMatrix AbstractMatrix::identity(const Field& field, std::size_t n) {
  AbstractMatrix m(field, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

AbstractMatrix AbstractMatrix::from_rows(const Field& field, const Rows& rows) {
  const std::size_t n = rows.size();
  AbstractMatrix m(field, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      fail(Errc::ShapeMismatch,
           "row " + std::to_string(i) + " has length " + std::to_string(rows[i].size()) +
               ", expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      check_same_field(rows[i][j].field(), field);
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

AbstractMatrix AbstractMatrix::from_fn(
    const Field& field, std::size_t n,
    const std::function<Scalar(std::size_t, std::size_t)>& entry) {
  AbstractMatrix m(field, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar s = entry(i, j);
      check_same_field(s.field(), field);
      m(i, j) = std::move(s);
    }
  return m;
}

SeqMatrix::SeqMatrix(Rows rows) : rows_(std::move(rows)) {
  if (rows_.empty()) return;
  const std::size_t width = rows_.front().size();
  const Field field = width > 0 ? rows_.front().front().field() : Field::rationals();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != width)
      fail(Errc::ShapeMismatch,
           "row " + std::to_string(i) + " has length " + std::to_string(rows_[i].size()) +
               ", expected " + std::to_string(width));
    for (const Scalar& s : rows_[i]) check_same_field(s.field(), field);
  }
}

SeqMatrix SeqMatrix::unchecked(Rows rows) {
  SeqMatrix s;
  s.rows_ = std::move(rows);
  return s;
}

bool is_unitriangular(const AbstractMatrix& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!m(i, i).is_one()) return false;
    for (std::size_t j = i + 1; j < n; ++j)
      if (!m(i, j).is_zero()) return false;
  }
  return true;
}

Block block_decompose(const AbstractMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) fail(Errc::EmptyMatrix, "cannot decompose the 0x0 matrix");
  Block b{m(0, 0), {}, {}, AbstractMatrix(m.field(), n - 1)};
  b.top_right.reserve(n - 1);
  b.bottom_left.reserve(n - 1);
  for (std::size_t j = 1; j < n; ++j) b.top_right.push_back(m(0, j));
  for (std::size_t i = 1; i < n; ++i) b.bottom_left.push_back(m(i, 0));
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) b.bottom_right(i - 1, j - 1) = m(i, j);
  return b;
}

AbstractMatrix block_compose(const Block& block) {
  const std::size_t tail = block.bottom_right.size();
  const std::size_t n = tail + 1;
  const Field field = block.bottom_right.field();
  check_same_field(block.top_left.field(), field);
  if (block.top_right.size() != tail || block.bottom_left.size() != tail)
    fail(Errc::ShapeMismatch, "block borders do not match the trailing matrix");
  AbstractMatrix m(field, n);
  m(0, 0) = block.top_left;
  for (std::size_t j = 1; j < n; ++j) m(0, j) = block.top_right[j - 1];
  for (std::size_t i = 1; i < n; ++i) m(i, 0) = block.bottom_left[i - 1];
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) m(i, j) = block.bottom_right(i - 1, j - 1);
  return m;
}

AbstractMatrix invmx(const AbstractMatrix& m, MulCounter* counter) {
  const std::size_t n = m.size();
  const Field field = m.field();
  // Augmented [M | I], Gauss-Jordan with first-nonzero pivot search.
  std::vector<Scalar> work;
  work.reserve(n * 2 * n);
  const std::size_t w = 2 * n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) work.push_back(m(i, j));
    for (std::size_t j = 0; j < n; ++j)
      work.push_back(i == j ? Scalar::one(field) : Scalar::zero(field));
  }
  auto at = [&](std::size_t i, std::size_t j) -> Scalar& { return work[i * w + j]; };

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && at(pivot, col).is_zero()) ++pivot;
    if (pivot == n) fail(Errc::Singular, "matrix has no inverse");
    if (pivot != col)
      for (std::size_t j = 0; j < w; ++j) std::swap(at(pivot, j), at(col, j));

    const Scalar pivot_value = at(col, col);
    if (!pivot_value.is_one()) {
      const Scalar inv = pivot_value.inverse();
      for (std::size_t j = col; j < w; ++j) {
        at(col, j) = at(col, j) * inv;
        bump(counter, 1);
      }
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Scalar factor = at(r, col);
      if (factor.is_zero()) continue;
      for (std::size_t j = col; j < w; ++j) {
        at(r, j) = at(r, j) - factor * at(col, j);
        bump(counter, 1);
      }
    }
  }

  AbstractMatrix result(field, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) result(i, j) = at(i, n + j);
  return result;
}

namespace {

AbstractMatrix fast_invmx_rec(const AbstractMatrix& m, MulCounter* counter) {
  const std::size_t n = m.size();
  if (n == 0) return m;
  Block b = block_decompose(m);
  AbstractMatrix tail_inv = fast_invmx_rec(b.bottom_right, counter);

  // -fast_invmx(N) *m C
  const Field field = m.field();
  std::vector<Scalar> column(n - 1, Scalar::zero(field));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Scalar acc = Scalar::zero(field);
    for (std::size_t k = 0; k + 1 < n; ++k) acc += tail_inv(i, k) * b.bottom_left[k];
    bump(counter, n - 1);
    column[i] = -acc;
  }

  return block_compose(Block{Scalar::one(field),
                             std::vector<Scalar>(n - 1, Scalar::zero(field)),
                             std::move(column), std::move(tail_inv)});
}

}  // namespace

AbstractMatrix fast_invmx(const AbstractMatrix& m, MulCounter* counter) {
  if (!is_unitriangular(m))
    fail(Errc::NotUnitriangular, "input is not lower-unitriangular");
  return fast_invmx_rec(m, counter);
}

AbstractMatrix mulmx(const AbstractMatrix& a, const AbstractMatrix& b, MulCounter* counter) {
  if (a.size() != b.size())
    fail(Errc::DimensionMismatch,
         std::to_string(a.size()) + "x" + std::to_string(a.size()) + " times " +
             std::to_string(b.size()) + "x" + std::to_string(b.size()));
  const std::size_t n = a.size();
  check_same_field(a.field(), b.field());
  AbstractMatrix result(a.field(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar acc = Scalar::zero(a.field());
      for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
      bump(counter, n);
      result(i, j) = std::move(acc);
    }
  return result;
}

SeqMatrix seqmx_of_mx(const AbstractMatrix& m) {
  Rows rows(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    rows[i].reserve(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) rows[i].push_back(m(i, j));
  }
  return SeqMatrix::unchecked(std::move(rows));
}

AbstractMatrix mx_of_seqmx(const Field& field, std::size_t n, const SeqMatrix& s) {
  if (s.row_count() != n)
    fail(Errc::ShapeMismatch, "expected " + std::to_string(n) + " rows, got " +
                                  std::to_string(s.row_count()));
  AbstractMatrix m(field, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = s.rows()[i];
    if (row.size() != n)
      fail(Errc::ShapeMismatch, "row " + std::to_string(i) + " has length " +
                                    std::to_string(row.size()) + ", expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      check_same_field(row[j].field(), field);
      m(i, j) = row[j];
    }
  }
  return m;
}

namespace {

bool seqmx_is_unitriangular(const Rows& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i][i].is_one()) return false;
    for (std::size_t j = i + 1; j < rows[i].size(); ++j)
      if (!rows[i][j].is_zero()) return false;
  }
  return true;
}

// Head-row / head-column split, recurse on the trailing block. The
// input was validated once at the entry point.
Rows cfast_invmx_rec(const Rows& rows, MulCounter* counter) {
  if (rows.empty()) return {};
  const std::size_t n = rows.size();

  std::vector<Scalar> head_column;
  Rows tail;
  head_column.reserve(n - 1);
  tail.reserve(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    head_column.push_back(rows[i].front());
    tail.emplace_back(rows[i].begin() + 1, rows[i].end());
  }

  Rows tail_inv = cfast_invmx_rec(tail, counter);

  Rows result;
  result.reserve(n);
  result.push_back(rows.front());  // [1, 0, ..., 0]
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Scalar acc = tail_inv[i][0] * head_column[0];
    for (std::size_t k = 1; k + 1 < n; ++k) acc += tail_inv[i][k] * head_column[k];
    bump(counter, n - 1);
    std::vector<Scalar> row;
    row.reserve(n);
    row.push_back(-acc);
    row.insert(row.end(), tail_inv[i].begin(), tail_inv[i].end());
    result.push_back(std::move(row));
  }
  return result;
}

}  // namespace

SeqMatrix cfast_invmx(const SeqMatrix& s, MulCounter* counter) {
  if (!s.is_square())
    fail(Errc::NotSquare, std::to_string(s.row_count()) + " rows of length " +
                              std::to_string(s.col_count()));
  if (!seqmx_is_unitriangular(s.rows()))
    fail(Errc::NotUnitriangular, "input is not lower-unitriangular");
  return SeqMatrix::unchecked(cfast_invmx_rec(s.rows(), counter));
}

namespace {

void check_square_pair(const SeqMatrix& a, const SeqMatrix& b) {
  if (!a.is_square() || !b.is_square() || a.row_count() != b.row_count())
    fail(Errc::DimensionMismatch,
         std::to_string(a.row_count()) + "x" + std::to_string(a.col_count()) + " times " +
             std::to_string(b.row_count()) + "x" + std::to_string(b.col_count()));
  if (a.row_count() > 0) check_same_field(a.rows()[0][0].field(), b.rows()[0][0].field());
}

Rows mul_rows_naive(const Rows& a, const Rows& b, MulCounter* counter) {
  const std::size_t n = a.size();
  Rows result(n);
  for (std::size_t i = 0; i < n; ++i) {
    result[i].reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      Scalar acc = a[i][0] * b[0][j];
      for (std::size_t k = 1; k < n; ++k) acc += a[i][k] * b[k][j];
      bump(counter, n);
      result[i].push_back(std::move(acc));
    }
  }
  return result;
}

Rows block_of(const Rows& m, std::size_t row0, std::size_t col0, std::size_t size) {
  Rows out(size);
  for (std::size_t i = 0; i < size; ++i)
    out[i].assign(m[row0 + i].begin() + col0, m[row0 + i].begin() + col0 + size);
  return out;
}

Rows add_rows(const Rows& a, const Rows& b) {
  Rows out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i].reserve(a[i].size());
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i].push_back(a[i][j] + b[i][j]);
  }
  return out;
}

Rows sub_rows(const Rows& a, const Rows& b) {
  Rows out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i].reserve(a[i].size());
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i].push_back(a[i][j] - b[i][j]);
  }
  return out;
}

Rows strassen_rec(const Rows& a, const Rows& b, std::size_t cutoff, MulCounter* counter) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  if (n <= cutoff || n == 1) return mul_rows_naive(a, b, counter);

  if (n % 2 == 1) {
    // Dynamic peeling: split off the last row and column, multiply the
    // even (n-1) core recursively, patch the borders naively.
    const std::size_t m = n - 1;
    Rows a11 = block_of(a, 0, 0, m);
    Rows b11 = block_of(b, 0, 0, m);
    Rows core = strassen_rec(a11, b11, cutoff, counter);

    Rows result(n);
    for (std::size_t i = 0; i < m; ++i) {
      result[i].reserve(n);
      for (std::size_t j = 0; j < m; ++j) {
        // core + a1n * bn1 outer product
        result[i].push_back(core[i][j] + a[i][m] * b[m][j]);
      }
      bump(counter, m);
      // last column: A11 * b1n + a1n * bnn
      Scalar acc = a[i][0] * b[0][m];
      for (std::size_t k = 1; k < m; ++k) acc += a[i][k] * b[k][m];
      acc += a[i][m] * b[m][m];
      bump(counter, m + 1);
      result[i].push_back(std::move(acc));
    }
    result[m].reserve(n);
    for (std::size_t j = 0; j < m; ++j) {
      Scalar acc = a[m][0] * b[0][j];
      for (std::size_t k = 1; k < m; ++k) acc += a[m][k] * b[k][j];
      acc += a[m][m] * b[m][j];
      bump(counter, m + 1);
      result[m].push_back(std::move(acc));
    }
    Scalar corner = a[m][0] * b[0][m];
    for (std::size_t k = 1; k < m; ++k) corner += a[m][k] * b[k][m];
    corner += a[m][m] * b[m][m];
    bump(counter, m + 1);
    result[m].push_back(std::move(corner));
    return result;
  }

  const std::size_t h = n / 2;
  Rows a11 = block_of(a, 0, 0, h), a12 = block_of(a, 0, h, h);
  Rows a21 = block_of(a, h, 0, h), a22 = block_of(a, h, h, h);
  Rows b11 = block_of(b, 0, 0, h), b12 = block_of(b, 0, h, h);
  Rows b21 = block_of(b, h, 0, h), b22 = block_of(b, h, h, h);

  Rows m1 = strassen_rec(add_rows(a11, a22), add_rows(b11, b22), cutoff, counter);
  Rows m2 = strassen_rec(add_rows(a21, a22), b11, cutoff, counter);
  Rows m3 = strassen_rec(a11, sub_rows(b12, b22), cutoff, counter);
  Rows m4 = strassen_rec(a22, sub_rows(b21, b11), cutoff, counter);
  Rows m5 = strassen_rec(add_rows(a11, a12), b22, cutoff, counter);
  Rows m6 = strassen_rec(sub_rows(a21, a11), add_rows(b11, b12), cutoff, counter);
  Rows m7 = strassen_rec(sub_rows(a12, a22), add_rows(b21, b22), cutoff, counter);

  Rows c11 = add_rows(sub_rows(add_rows(m1, m4), m5), m7);
  Rows c12 = add_rows(m3, m5);
  Rows c21 = add_rows(m2, m4);
  Rows c22 = add_rows(sub_rows(add_rows(m1, m3), m2), m6);

  Rows result(n);
  for (std::size_t i = 0; i < h; ++i) {
    result[i] = std::move(c11[i]);
    result[i].insert(result[i].end(), c12[i].begin(), c12[i].end());
    result[h + i] = std::move(c21[i]);
    result[h + i].insert(result[h + i].end(), c22[i].begin(), c22[i].end());
  }
  return result;
}

}  // namespace

SeqMatrix mul_seqmx(const SeqMatrix& a, const SeqMatrix& b, MulCounter* counter) {
  check_square_pair(a, b);
  return SeqMatrix::unchecked(mul_rows_naive(a.rows(), b.rows(), counter));
}

SeqMatrix fast_mult_seqmx(const SeqMatrix& a, const SeqMatrix& b, std::size_t cutoff,
                          MulCounter* counter) {
  check_square_pair(a, b);
  return SeqMatrix::unchecked(strassen_rec(a.rows(), b.rows(), cutoff, counter));
}

Scalar det_mx(const AbstractMatrix& m) {
  const std::size_t n = m.size();
  const Field field = m.field();
  std::vector<Scalar> work;
  work.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) work.push_back(m(i, j));
  auto at = [&](std::size_t i, std::size_t j) -> Scalar& { return work[i * n + j]; };

  bool negate = false;
  Scalar det = Scalar::one(field);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && at(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return Scalar::zero(field);
    if (pivot != col) {
      negate = !negate;
      for (std::size_t j = col; j < n; ++j) std::swap(at(pivot, j), at(col, j));
    }
    const Scalar pivot_value = at(col, col);
    det *= pivot_value;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (at(r, col).is_zero()) continue;
      const Scalar factor = at(r, col) / pivot_value;
      for (std::size_t j = col; j < n; ++j) at(r, j) = at(r, j) - factor * at(col, j);
    }
  }
  return negate ? -det : det;
}

Scalar det_seqmx(const Field& field, const SeqMatrix& s) {
  if (!s.is_square())
    fail(Errc::NotSquare, std::to_string(s.row_count()) + " rows of length " +
                              std::to_string(s.col_count()));
  Rows rows = s.rows();
  const std::size_t n = rows.size();
  for (const auto& row : rows)
    for (const Scalar& x : row) check_same_field(x.field(), field);

  bool negate = false;
  Scalar det = Scalar::one(field);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return Scalar::zero(field);
    if (pivot != col) {
      negate = !negate;
      std::swap(rows[pivot], rows[col]);
    }
    const Scalar pivot_value = rows[col][col];
    det *= pivot_value;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (rows[r][col].is_zero()) continue;
      const Scalar factor = rows[r][col] / pivot_value;
      for (std::size_t j = col; j < n; ++j)
        rows[r][j] = rows[r][j] - factor * rows[col][j];
    }
  }
  return negate ? -det : det;
}

std::size_t rank_mx(const AbstractMatrix& m) {
  const std::size_t n = m.size();
  std::vector<Scalar> work;
  work.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) work.push_back(m(i, j));
  auto at = [&](std::size_t i, std::size_t j) -> Scalar& { return work[i * n + j]; };

  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && at(pivot, col).is_zero()) ++pivot;
    if (pivot == n) continue;
    if (pivot != rank)
      for (std::size_t j = col; j < n; ++j) std::swap(at(pivot, j), at(rank, j));
    const Scalar pivot_value = at(rank, col);
    for (std::size_t r = rank + 1; r < n; ++r) {
      if (at(r, col).is_zero()) continue;
      const Scalar factor = at(r, col) / pivot_value;
      for (std::size_t j = col; j < n; ++j) at(r, j) = at(r, j) - factor * at(rank, j);
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_elim_seqmx(const SeqMatrix& s) {
  if (!s.is_square())
    fail(Errc::NotSquare, std::to_string(s.row_count()) + " rows of length " +
                              std::to_string(s.col_count()));
  Rows rows = s.rows();
  const std::size_t n = rows.size();

  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == n) continue;
    if (pivot != rank) std::swap(rows[pivot], rows[rank]);
    const Scalar pivot_value = rows[rank][col];
    for (std::size_t r = rank + 1; r < n; ++r) {
      if (rows[r][col].is_zero()) continue;
      const Scalar factor = rows[r][col] / pivot_value;
      for (std::size_t j = col; j < n; ++j)
        rows[r][j] = rows[r][j] - factor * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace workbench
