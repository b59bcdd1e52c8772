// Copyright 2026 The secnc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact linear algebra over prime fields GF(q).
//
// Matrices are dense and row-major. Every reduction is Gauss-Jordan with the
// first nonzero entry of a column chosen as pivot, so results (echelon forms,
// null-space bases, right inverses) are canonical for a given input.
//
// Subspaces are passed around in two forms:
//   * a basis, stored as the *columns* of a FieldMatrix;
//   * a constraint matrix, whose right null space is the subspace.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "secnc/errors.hpp"

namespace secnc {

using Scalar = std::uint32_t;

// Field moduli are kept below 2^31 so that a product fits in 64 bits.
inline constexpr Scalar kMaxModulus = 0x7fffffffu;

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Smallest prime strictly greater than n.
constexpr Scalar next_prime_above(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return static_cast<Scalar>(c);
}

// Arithmetic modulo a prime.
class PrimeField {
 public:
  explicit PrimeField(Scalar q) : q_(q) {
    if (q > kMaxModulus || !is_prime(q)) {
      throw DomainError("field modulus " + std::to_string(q) +
                        " is not a prime below 2^31");
    }
  }

  Scalar modulus() const { return q_; }

  Scalar reduce(std::uint64_t v) const { return static_cast<Scalar>(v % q_); }
  Scalar reduce_signed(long long v) const {
    long long r = v % static_cast<long long>(q_);
    return static_cast<Scalar>(r < 0 ? r + q_ : r);
  }

  Scalar add(Scalar a, Scalar b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Scalar>(s >= q_ ? s - q_ : s);
  }
  Scalar sub(Scalar a, Scalar b) const {
    return a >= b ? a - b : static_cast<Scalar>(std::uint64_t{a} + q_ - b);
  }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : q_ - a; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>((std::uint64_t{a} * b) % q_);
  }
  Scalar pow(Scalar a, std::uint64_t e) const {
    std::uint64_t result = 1 % q_;
    std::uint64_t base = a % q_;
    while (e > 0) {
      if (e & 1) result = (result * base) % q_;
      base = (base * base) % q_;
      e >>= 1;
    }
    return static_cast<Scalar>(result);
  }
  // Fermat inverse; a must be nonzero.
  Scalar inv(Scalar a) const {
    if (a % q_ == 0) throw DomainError("inverse of zero");
    return pow(a, q_ - 2);
  }

 private:
  Scalar q_;
};

// A single residue together with its modulus.
class FieldElement {
 public:
  FieldElement(std::uint64_t value, Scalar modulus)
      : field_(modulus), value_(field_.reduce(value)) {}

  Scalar value() const { return value_; }
  Scalar modulus() const { return field_.modulus(); }

  FieldElement inverse() const { return {field_.inv(value_), modulus()}; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_.add(a.value_, b.value_), a.modulus()};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_.sub(a.value_, b.value_), a.modulus()};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same(a, b);
    return {a.field_.mul(a.value_, b.value_), a.modulus()};
  }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.modulus() == b.modulus() && a.value_ == b.value_;
  }

 private:
  static void check_same(const FieldElement& a, const FieldElement& b) {
    if (a.modulus() != b.modulus()) throw DomainError("modulus mismatch");
  }

  PrimeField field_;
  Scalar value_;
};

class FieldMatrix {
 public:
  FieldMatrix(std::size_t rows, std::size_t cols, Scalar modulus)
      : rows_(rows), cols_(cols), field_(modulus), data_(rows * cols, 0) {}

  // Entries are reduced modulo `modulus`; negative values wrap.
  FieldMatrix(std::initializer_list<std::initializer_list<long long>> rows,
              Scalar modulus)
      : rows_(rows.size()),
        cols_(rows.size() == 0 ? 0 : rows.begin()->size()),
        field_(modulus) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DomainError("ragged matrix literal");
      for (long long v : r) data_.push_back(field_.reduce_signed(v));
    }
  }

  static FieldMatrix from_rows(const std::vector<std::vector<Scalar>>& rows,
                               std::size_t cols, Scalar modulus) {
    FieldMatrix m(rows.size(), cols, modulus);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw DomainError("ragged row list");
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
  }

  static FieldMatrix identity(std::size_t n, Scalar modulus) {
    FieldMatrix m(n, n, modulus);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static FieldMatrix column(std::span<const Scalar> v, Scalar modulus) {
    FieldMatrix m(v.size(), 1, modulus);
    for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar modulus() const { return field_.modulus(); }
  const PrimeField& field() const { return field_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  Scalar& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  Scalar at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw DomainError("matrix index out of range");
    return (*this)(r, c);
  }
  void set(std::size_t r, std::size_t c, std::uint64_t v) {
    if (r >= rows_ || c >= cols_) throw DomainError("matrix index out of range");
    (*this)(r, c) = field_.reduce(v);
  }

  std::span<const Scalar> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  std::vector<Scalar> column_vector(std::size_t c) const {
    std::vector<Scalar> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  std::vector<std::vector<Scalar>> to_rows() const {
    std::vector<std::vector<Scalar>> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      out[r].assign(row(r).begin(), row(r).end());
    }
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Scalar v) { return v == 0; });
  }

  FieldMatrix transpose() const {
    FieldMatrix t(cols_, rows_, modulus());
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
  }

  FieldMatrix select_rows(std::span<const std::size_t> idx) const {
    FieldMatrix out(idx.size(), cols_, modulus());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] >= rows_) throw DomainError("row index out of range");
      std::copy(row(idx[i]).begin(), row(idx[i]).end(), out.row(i).begin());
    }
    return out;
  }

  FieldMatrix select_cols(std::span<const std::size_t> idx) const {
    FieldMatrix out(rows_, idx.size(), modulus());
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (idx[j] >= cols_) throw DomainError("column index out of range");
      for (std::size_t r = 0; r < rows_; ++r) out(r, j) = (*this)(r, idx[j]);
    }
    return out;
  }

  FieldMatrix col_range(std::size_t first, std::size_t count) const {
    if (first + count > cols_) throw DomainError("column range out of bounds");
    FieldMatrix out(rows_, count, modulus());
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
    }
    return out;
  }

  FieldMatrix row_range(std::size_t first, std::size_t count) const {
    if (first + count > rows_) throw DomainError("row range out of bounds");
    FieldMatrix out(count, cols_, modulus());
    std::copy(data_.begin() + first * cols_, data_.begin() + (first + count) * cols_,
              out.data_.begin());
    return out;
  }

  std::vector<Scalar> apply(std::span<const Scalar> x) const {
    if (x.size() != cols_) throw DomainError("vector length mismatch");
    std::vector<Scalar> y(rows_, 0);
    const std::uint64_t q = modulus();
    for (std::size_t r = 0; r < rows_; ++r) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < cols_; ++c) {
        acc = (acc + std::uint64_t{(*this)(r, c)} * x[c]) % q;
      }
      y[r] = static_cast<Scalar>(acc);
    }
    return y;
  }

  friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.modulus() != b.modulus()) throw DomainError("modulus mismatch");
    if (a.cols_ != b.rows_) throw DomainError("inner dimension mismatch");
    FieldMatrix out(a.rows_, b.cols_, a.modulus());
    const std::uint64_t q = a.modulus();
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const std::uint64_t av = a(i, l);
        if (av == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          out(i, j) = static_cast<Scalar>((out(i, j) + av * b(l, j)) % q);
        }
      }
    }
    return out;
  }

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.modulus() == b.modulus() && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldMatrix& m) {
    for (std::size_t r = 0; r < m.rows_; ++r) {
      os << '[';
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m(r, c);
      os << "]\n";
    }
    return os;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  PrimeField field_;
  std::vector<Scalar> data_;
};

// Stacks matrices with equal column counts on top of each other.
inline FieldMatrix vstack(std::span<const FieldMatrix> parts, std::size_t cols,
                          Scalar modulus) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw DomainError("vstack: column count mismatch");
    if (p.modulus() != modulus) throw DomainError("vstack: modulus mismatch");
    rows += p.rows();
  }
  FieldMatrix out(rows, cols, modulus);
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < p.rows(); ++r) {
      std::copy(p.row(r).begin(), p.row(r).end(), out.row(r0 + r).begin());
    }
    r0 += p.rows();
  }
  return out;
}

inline FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b) {
  const FieldMatrix parts[] = {a, b};
  return vstack(parts, a.cols(), a.modulus());
}

// Places matrices with equal row counts side by side.
inline FieldMatrix hstack(std::span<const FieldMatrix> parts, std::size_t rows,
                          Scalar modulus) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw DomainError("hstack: row count mismatch");
    if (p.modulus() != modulus) throw DomainError("hstack: modulus mismatch");
    cols += p.cols();
  }
  FieldMatrix out(rows, cols, modulus);
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < p.cols(); ++c) out(r, c0 + c) = p(r, c);
    }
    c0 += p.cols();
  }
  return out;
}

inline FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b) {
  const FieldMatrix parts[] = {a, b};
  return hstack(parts, a.rows(), a.modulus());
}

struct RowEchelon {
  FieldMatrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Reduced row-echelon form. Accepts matrices with zero rows or columns.
inline RowEchelon rref(FieldMatrix m) {
  const PrimeField& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t p = lead;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead) {
      auto a = m.row(p);
      auto b = m.row(lead);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const Scalar inv = f.inv(m(lead, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(lead, j) = f.mul(m(lead, j), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || m(r, c) == 0) continue;
      const Scalar factor = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        m(r, j) = f.sub(m(r, j), f.mul(factor, m(lead, j)));
      }
    }
    pivots.push_back(c);
    ++lead;
  }
  return {std::move(m), std::move(pivots)};
}

namespace detail {

inline std::size_t rank_unchecked(const FieldMatrix& m) {
  if (m.empty()) return 0;
  return rref(m).pivots.size();
}

}  // namespace detail

// Number of pivots of the reduced row-echelon form.
inline std::size_t rank(const FieldMatrix& m) {
  if (m.empty()) throw DomainError("rank of an empty matrix");
  return detail::rank_unchecked(m);
}

// Canonical basis of {x : m x = 0}, one basis vector per non-pivot column in
// ascending order, returned as the columns of a cols(m) x (cols(m) - rank)
// matrix. A matrix with no rows constrains nothing and yields the identity.
inline FieldMatrix right_null_space_basis(const FieldMatrix& m) {
  if (m.cols() == 0) throw DomainError("null space of a matrix with no columns");
  const RowEchelon e = rref(m);
  const PrimeField& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;

  FieldMatrix basis(m.cols(), m.cols() - e.pivots.size(), m.modulus());
  std::size_t out = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, out) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      basis(e.pivots[r], out) = f.neg(e.reduced(r, free));
    }
    ++out;
  }
  return basis;
}

// dim of the sum of the column spans of `bases`.
inline std::size_t subspace_sum_dim(std::span<const FieldMatrix> bases) {
  if (bases.empty()) return 0;
  const std::size_t ambient = bases.front().rows();
  const Scalar q = bases.front().modulus();
  for (const auto& b : bases) {
    if (b.rows() != ambient) {
      throw DomainError("subspace_sum_dim: ambient dimension mismatch");
    }
  }
  return detail::rank_unchecked(hstack(bases, ambient, q));
}

// dim of the intersection of the right null spaces of `constraints`,
// computed as cols - rank of the vertically stacked constraints.
inline std::size_t subspace_intersection_dim(
    std::span<const FieldMatrix> constraints) {
  if (constraints.empty()) {
    throw DomainError("subspace_intersection_dim: no constraint matrices");
  }
  const std::size_t width = constraints.front().cols();
  for (const auto& c : constraints) {
    if (c.cols() != width) {
      throw DomainError("subspace_intersection_dim: width mismatch");
    }
  }
  const FieldMatrix stacked = vstack(constraints, width, constraints.front().modulus());
  return width - detail::rank_unchecked(stacked);
}

inline std::size_t subspace_intersection_dim(const FieldMatrix& a,
                                             const FieldMatrix& b) {
  const FieldMatrix parts[] = {a, b};
  return subspace_intersection_dim(parts);
}

// Rows spanning the intersection of the row spaces of `a` and `b`, obtained
// by Zassenhaus' algorithm: reduce [[a, a], [b, 0]] and keep the right halves
// of the rows whose left half vanished. Works on spanning sets directly and
// never passes through a null space.
inline FieldMatrix row_space_intersection(const FieldMatrix& a,
                                          const FieldMatrix& b) {
  if (a.cols() != b.cols()) throw DomainError("row_space_intersection: width mismatch");
  if (a.modulus() != b.modulus()) throw DomainError("row_space_intersection: modulus mismatch");
  const std::size_t n = a.cols();
  FieldMatrix block(a.rows() + b.rows(), 2 * n, a.modulus());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      block(r, c) = a(r, c);
      block(r, n + c) = a(r, c);
    }
  }
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) block(a.rows() + r, c) = b(r, c);
  }
  const RowEchelon e = rref(block);
  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= n) keep.push_back(r);
  }
  return e.reduced.select_rows(keep).col_range(n, n);
}

inline FieldMatrix row_space_intersection(std::span<const FieldMatrix> parts) {
  if (parts.empty()) throw DomainError("row_space_intersection: no matrices");
  FieldMatrix acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    acc = row_space_intersection(acc, parts[i]);
  }
  return acc;
}

// Right inverse M with t * M = I. Rows of M at the pivot columns of t hold
// the inverse of the pivot-column submatrix; all other rows are zero.
inline FieldMatrix right_inverse(const FieldMatrix& t) {
  const Scalar q = t.modulus();
  if (t.rows() == 0) return FieldMatrix(t.cols(), 0, q);
  const RowEchelon e = rref(t);
  if (e.pivots.size() != t.rows()) {
    throw NotFullRowRank("right_inverse: rank " + std::to_string(e.pivots.size()) +
                         " < rows " + std::to_string(t.rows()));
  }
  const std::size_t r = t.rows();
  const FieldMatrix square = t.select_cols(e.pivots);
  const RowEchelon inv = rref(hstack(square, FieldMatrix::identity(r, q)));
  FieldMatrix out(t.cols(), r, q);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) out(e.pivots[i], j) = inv.reduced(i, r + j);
  }
  return out;
}

}  // namespace secnc
