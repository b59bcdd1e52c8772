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


#include <map>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "secnc/security.hpp"

namespace secnc {
namespace {

const TwoLayerNetwork kSixRelays =
    TwoLayerNetwork::from_one_based(6, {{1, 2, 4}, {3, 4, 5, 6}, {2, 3}});

// Joint counts N(w, x_Z) over all (w, k); secrecy iff N(w, x) is the same
// for every w (the message is uniform, so this is I(W; X_Z) = 0).
bool independent_by_joint_counts(const FieldMatrix& msg, const FieldMatrix& key,
                                 const std::vector<std::size_t>& rows) {
  const Scalar q = msg.modulus();
  const std::size_t nw = msg.cols();
  const std::size_t nk = key.cols();
  std::map<std::vector<Scalar>, std::map<std::vector<Scalar>, std::uint64_t>> joint;
  std::set<std::vector<Scalar>> all_x;
  oracle::for_each_vector(nw + nk, q, [&](const std::vector<Scalar>& wk) {
    std::vector<Scalar> x;
    for (std::size_t r : rows) {
      std::uint64_t s = 0;
      for (std::size_t c = 0; c < nw; ++c) s += std::uint64_t{msg(r, c)} * wk[c];
      for (std::size_t c = 0; c < nk; ++c) s += std::uint64_t{key(r, c)} * wk[nw + c];
      x.push_back(static_cast<Scalar>(s % q));
    }
    all_x.insert(x);
    ++joint[std::vector<Scalar>(wk.begin(), wk.begin() + nw)][x];
  });
  const auto& first = joint.begin()->second;
  for (const auto& [w, counts] : joint) {
    for (const auto& x : all_x) {
      const auto a = counts.count(x) ? counts.at(x) : 0;
      const auto b = first.count(x) ? first.at(x) : 0;
      if (a != b) return false;
    }
  }
  return true;
}

TEST(RankCondition, BuiltSchemesPass) {
  for (const auto& perm : std::vector<std::vector<std::size_t>>{{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}) {
    const auto s = build_scheme(kSixRelays, 1, 7, perm);
    EXPECT_TRUE(verify_rank(s, 1).pass);
  }
}

TEST(RankCondition, ZeroedKeyLeaksAtFirstCarrier) {
  auto s = build_scheme(kSixRelays, 1, 3, {2, 0, 1});
  for (std::size_t r = 0; r < 6; ++r) s.key_matrix(r, 0) = 0;
  const auto report = verify_rank(s, 1);
  EXPECT_FALSE(report.pass);
  ASSERT_TRUE(report.counterexample.has_value());
  ASSERT_EQ(report.counterexample->size(), 1u);
  // The first relay whose message row is nonzero.
  std::size_t first = 0;
  while (s.message_matrix.row_range(first, 1).is_zero()) ++first;
  EXPECT_EQ(report.counterexample->front(), first);
  EXPECT_EQ(report.subsets_checked, first + 1);
}

TEST(RankCondition, SizeTwoLeakNeedsTwoRows) {
  // Each row alone is masked, their difference exposes the message.
  const FieldMatrix msg({{1}, {2}}, 3);
  const FieldMatrix key({{1}, {1}}, 3);
  EXPECT_TRUE(rank_condition(msg, key, 1).pass);
  const auto report = rank_condition(msg, key, 2);
  EXPECT_FALSE(report.pass);
  EXPECT_EQ(report.counterexample, (std::vector<std::size_t>{0, 1}));
}

TEST(EntropyOracle, AgreesWithJointCountsAndRank) {
  std::mt19937_64 rng(51);
  std::size_t leaks = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Scalar q = trial % 2 ? 2 : 3;
    const std::size_t rows = 1 + rng() % 4;
    const std::size_t nw = 1 + rng() % 2;
    const std::size_t nk = rng() % 3;
    FieldMatrix msg(rows, nw, q);
    FieldMatrix key(rows, nk, q);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < nw; ++c) msg(r, c) = static_cast<Scalar>(rng() % q);
      for (std::size_t c = 0; c < nk; ++c) key(r, c) = static_cast<Scalar>(rng() % q);
    }
    for (std::size_t size = 1; size <= rows; ++size) {
      oracle::combinations(rows, size, [&](const std::vector<std::size_t>& z) {
        const bool by_rank = rank_condition_holds(msg, key, z);
        EXPECT_EQ(entropy_subset_secure(msg, key, z), by_rank);
        EXPECT_EQ(independent_by_joint_counts(msg, key, z), by_rank);
        leaks += !by_rank;
        return true;
      });
    }
  }
  EXPECT_GT(leaks, 0u);
}

TEST(EntropyOracle, BudgetIsEnforced) {
  const auto s = build_scheme(kSixRelays, 1, 7, {2, 0, 1});
  EXPECT_THROW(verify_entropy(s, 1, 1000), BudgetExceeded);
  EXPECT_TRUE(verify_entropy(s, 1, 1'000'000).pass);
}

TEST(MdsCheck, VandermondeAndRepeatedRows) {
  EXPECT_TRUE(mds_check(build_vandermonde(6, 2, 7), 2).pass);
  const FieldMatrix bad({{1, 1}, {1, 2}, {1, 1}}, 5);
  const auto report = mds_check(bad, 2);
  EXPECT_FALSE(report.pass);
  EXPECT_EQ(report.counterexample, (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE(mds_check(FieldMatrix(3, 0, 5), 0).pass);
  EXPECT_THROW(mds_check(bad, 1), DomainError);
}

TEST(EdgeModel, TwoLayerEdgesCollapseToRelayRows) {
  const auto s = build_scheme(kSixRelays, 1, 7, {2, 0, 1});
  const EdgeModel model = wiretap_edge_model(s);
  EXPECT_EQ(model.edges.size(), 15u);
  EXPECT_EQ(model.distinct_rows(), 6u);
  EXPECT_EQ(model.edges.front().name, "S->R1");
  EXPECT_EQ(model.edges.back().name, "R3->D3");
}

}  // namespace
}  // namespace secnc
