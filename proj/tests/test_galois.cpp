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


#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "secnc/galois.hpp"

namespace secnc {
namespace {

FieldMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, Scalar q) {
  FieldMatrix a(rows, cols, q);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a(r, c) = static_cast<Scalar>(rng() % q);
  }
  return a;
}

// Low-rank product so that rank deficiency actually occurs.
FieldMatrix random_low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, Scalar q) {
  const std::size_t inner = 1 + rng() % std::max<std::size_t>(1, std::min(rows, cols));
  return random_matrix(rng, rows, inner, q) * random_matrix(rng, inner, cols, q);
}

TEST(PrimeField, InversesInSmallField) {
  const PrimeField f(7);
  for (Scalar a = 1; a < 7; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u) << a;
  EXPECT_THROW(f.inv(0), DomainError);
}

TEST(PrimeField, RejectsComposite) {
  EXPECT_THROW(PrimeField(8), DomainError);
  EXPECT_THROW(PrimeField(1), DomainError);
  EXPECT_NO_THROW(PrimeField{kMaxModulus});
}

TEST(PrimeField, LargeModulusProductsDoNotOverflow) {
  const PrimeField f(kMaxModulus);
  const Scalar a = kMaxModulus - 1;
  EXPECT_EQ(f.mul(a, a), 1u);
  EXPECT_EQ(f.add(a, a), kMaxModulus - 2);
}

TEST(PrimeField, NextPrimeAbove) {
  EXPECT_EQ(next_prime_above(7), 11u);
  EXPECT_EQ(next_prime_above(1), 2u);
  EXPECT_EQ(next_prime_above(8), 11u);
}

TEST(FieldElement, Arithmetic) {
  const FieldElement a(5, 7);
  const FieldElement b(4, 7);
  EXPECT_EQ((a + b).value(), 2u);
  EXPECT_EQ((a - b).value(), 1u);
  EXPECT_EQ((a * b).value(), 6u);
  EXPECT_EQ((a * a.inverse()).value(), 1u);
  EXPECT_THROW(a + FieldElement(1, 5), DomainError);
}

TEST(FieldMatrix, LiteralWrapsNegatives) {
  const FieldMatrix a({{-1, 8}, {0, 3}}, 7);
  EXPECT_EQ(a(0, 0), 6u);
  EXPECT_EQ(a(0, 1), 1u);
  EXPECT_THROW(FieldMatrix({{1, 2}, {3}}, 7), DomainError);
}

TEST(FieldMatrix, ProductAndStacking) {
  const FieldMatrix a({{1, 2}, {3, 4}}, 5);
  const FieldMatrix b({{0, 1}, {1, 0}}, 5);
  EXPECT_EQ(a * b, FieldMatrix({{2, 1}, {4, 3}}, 5));
  EXPECT_EQ(hstack(a, b).cols(), 4u);
  EXPECT_EQ(vstack(a, b).rows(), 4u);
  EXPECT_THROW(a * FieldMatrix(3, 1, 5), DomainError);
}

TEST(Rref, PivotsAndReducedForm) {
  const FieldMatrix a({{0, 2, 4}, {1, 1, 1}, {1, 3, 5}}, 7);
  const RowEchelon e = rref(a);
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(e.reduced.row_range(0, 2), FieldMatrix({{1, 0, -1}, {0, 1, 2}}, 7));
  EXPECT_TRUE(e.reduced.row_range(2, 1).is_zero());
}

TEST(Rank, EmptyMatrixIsADomainError) {
  EXPECT_THROW(rank(FieldMatrix(0, 3, 5)), DomainError);
  EXPECT_THROW(rank(FieldMatrix(3, 0, 5)), DomainError);
}

TEST(Rank, MatchesMinorOracle) {
  std::mt19937_64 rng(11);
  for (Scalar q : {2u, 3u, 5u, 7u}) {
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t rows = 1 + rng() % 5;
      const std::size_t cols = 1 + rng() % 5;
      const FieldMatrix a = trial % 2 ? random_matrix(rng, rows, cols, q) : random_low_rank(rng, rows, cols, q);
      EXPECT_EQ(rank(a), oracle::rank_by_minors(a)) << a;
    }
  }
}

TEST(NullSpace, AnnihilatesAndHasFullDimension) {
  std::mt19937_64 rng(12);
  for (Scalar q : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + rng() % 4;
      const std::size_t cols = 1 + rng() % 5;
      const FieldMatrix a = random_low_rank(rng, rows, cols, q);
      const FieldMatrix n = right_null_space_basis(a);
      EXPECT_TRUE((a * n).is_zero());
      EXPECT_EQ(n.cols() + rank(a), cols);  // rank-nullity
      std::uint64_t expect = 1;
      for (std::size_t i = 0; i < n.cols(); ++i) expect *= q;
      EXPECT_EQ(oracle::kernel_size(a), expect);
      if (n.cols() > 0) {
        EXPECT_EQ(rank(n), n.cols());
      }
    }
  }
}

TEST(NullSpace, NoRowsGivesIdentityAndNoColumnsThrows) {
  EXPECT_EQ(right_null_space_basis(FieldMatrix(0, 3, 5)), FieldMatrix::identity(3, 5));
  EXPECT_THROW(right_null_space_basis(FieldMatrix(2, 0, 5)), DomainError);
}

TEST(NullSpace, CanonicalBasisIsDeterministic) {
  const FieldMatrix a({{1, 1, 0, 0}}, 3);
  EXPECT_EQ(right_null_space_basis(a), FieldMatrix({{2, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3));
}

TEST(SubspaceSum, MatchesSpanClosure) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const Scalar q = trial % 2 ? 2 : 3;
    const std::size_t n = 2 + rng() % 3;
    const FieldMatrix a = random_low_rank(rng, n, 1 + rng() % 3, q);
    const FieldMatrix b = random_low_rank(rng, n, 1 + rng() % 3, q);
    const FieldMatrix parts[] = {a, b};
    auto gens = oracle::columns(a);
    for (auto& c : oracle::columns(b)) gens.push_back(c);
    EXPECT_EQ(subspace_sum_dim(parts), oracle::log_q(oracle::span_size(gens, n, q), q));
  }
}

TEST(RowSpaceIntersection, DimensionIdentityAndMembership) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 80; ++trial) {
    const Scalar q = 5;
    const std::size_t n = 2 + rng() % 5;
    const FieldMatrix a = random_low_rank(rng, 1 + rng() % n, n, q);
    const FieldMatrix b = random_low_rank(rng, 1 + rng() % n, n, q);
    const FieldMatrix meet = row_space_intersection(a, b);
    const std::size_t sum = rank(vstack(a, b));
    EXPECT_EQ(meet.rows(), rank(a) + rank(b) - sum);
    if (meet.rows() > 0) {
      EXPECT_EQ(rank(vstack(a, meet)), rank(a));
      EXPECT_EQ(rank(vstack(b, meet)), rank(b));
      EXPECT_EQ(rank(meet), meet.rows());
    }
  }
}

TEST(RowSpaceIntersection, AgreesWithNullSpaceDuality) {
  // rowspace(A) ∩ rowspace(B) is the annihilator of null(A) + null(B).
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    const Scalar q = 7;
    const std::size_t n = 2 + rng() % 5;
    const FieldMatrix a = random_low_rank(rng, 1 + rng() % n, n, q);
    const FieldMatrix b = random_low_rank(rng, 1 + rng() % n, n, q);
    const FieldMatrix nulls[] = {right_null_space_basis(a), right_null_space_basis(b)};
    EXPECT_EQ(row_space_intersection(a, b).rows(), n - subspace_sum_dim(nulls));
  }
}

TEST(RightInverse, ProducesIdentity) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const Scalar q = 11;
    const std::size_t rows = 1 + rng() % 4;
    const FieldMatrix t = random_matrix(rng, rows, rows + rng() % 3, q);
    if (rank(t) < rows) {
      EXPECT_THROW(right_inverse(t), NotFullRowRank);
      continue;
    }
    EXPECT_EQ(t * right_inverse(t), FieldMatrix::identity(rows, q));
  }
  EXPECT_EQ(right_inverse(FieldMatrix(0, 3, 5)).rows(), 3u);
}

TEST(Determinant, VandermondeMinorsNonzero) {
  // Oracle sanity: a 3x3 Vandermonde on distinct points has a unit determinant.
  const std::vector<std::vector<std::uint64_t>> v{{1, 1, 1}, {1, 2, 4}, {1, 3, 9}};
  EXPECT_EQ(oracle::determinant(v, 11), 2u);  // (2-1)(3-1)(3-2)
}

}  // namespace
}  // namespace secnc
