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


#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "secnc/scheme.hpp"

namespace secnc {
namespace {

const TwoLayerNetwork kSixRelays =
    TwoLayerNetwork::from_one_based(6, {{1, 2, 4}, {3, 4, 5, 6}, {2, 3}});

TwoLayerNetwork random_net(std::mt19937_64& rng, std::size_t t, std::size_t m, std::size_t min_size) {
  std::vector<std::vector<std::size_t>> sets(m);
  for (auto& s : sets) {
    while (s.size() < min_size) {
      s.clear();
      for (std::size_t r = 0; r < t; ++r) {
        if (rng() % 2) s.push_back(r);
      }
    }
  }
  return TwoLayerNetwork(t, sets);
}

TEST(Vandermonde, EveryKRowMinorIsNonzero) {
  for (std::size_t t = 1; t <= 7; ++t) {
    for (std::size_t k = 1; k <= std::min<std::size_t>(t, 4); ++k) {
      const Scalar q = default_field_size(t, k);
      const FieldMatrix v = build_vandermonde(t, k, q);
      std::vector<std::size_t> cols(k);
      std::iota(cols.begin(), cols.end(), std::size_t{0});
      oracle::combinations(t, k, [&](const std::vector<std::size_t>& rows) {
        EXPECT_NE(oracle::determinant(oracle::minor_of(v, rows, cols), q), 0u);
        return true;
      });
    }
  }
}

TEST(Vandermonde, RowsArePowersOfTheRowIndex) {
  const FieldMatrix v = build_vandermonde(3, 3, 5);
  EXPECT_EQ(v, FieldMatrix({{1, 1, 1}, {1, 2, 4}, {1, 3, 4}}, 5));
}

TEST(Vandermonde, DomainChecks) {
  EXPECT_THROW(build_vandermonde(2, 3, 7), DomainError);
  EXPECT_THROW(build_vandermonde(6, 2, 5), FieldTooSmall);
  EXPECT_NO_THROW(build_vandermonde(6, 1, 2));
  EXPECT_THROW(build_vandermonde(6, 1, 4), DomainError);
}

TEST(NullSpaces, DimensionsAndSupport) {
  const FieldMatrix v = build_vandermonde(6, 1, 7);
  const auto spaces = null_spaces(kSixRelays, v);
  ASSERT_EQ(spaces.size(), 3u);
  EXPECT_EQ(spaces[0].cols(), 2u);
  EXPECT_EQ(spaces[1].cols(), 3u);
  EXPECT_EQ(spaces[2].cols(), 1u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_TRUE((v.transpose() * spaces[i]).is_zero());
    for (std::size_t r = 0; r < 6; ++r) {
      if (kSixRelays.connected(i, r)) continue;
      for (std::size_t c = 0; c < spaces[i].cols(); ++c) EXPECT_EQ(spaces[i](r, c), 0u);
    }
  }
}

TEST(NullSpaces, TooFewRelaysIsRefused) {
  const FieldMatrix v = build_vandermonde(6, 3, 7);
  try {
    null_spaces(kSixRelays, v);
    FAIL() << "expected a refusal";
  } catch (const SecureCommunicationImpossible& e) {
    EXPECT_EQ(e.destination(), 2u);
  }
}

TEST(SelectDecodingVectors, SixRelayCorners) {
  const auto spaces = null_spaces(kSixRelays, build_vandermonde(6, 1, 7));
  EXPECT_EQ(select_decoding_vectors(spaces, {2, 0, 1}).rates, (std::vector<std::size_t>{2, 2, 1}));
  EXPECT_EQ(select_decoding_vectors(spaces, {0, 1, 2}).rates, (std::vector<std::size_t>{2, 3, 0}));
  EXPECT_THROW(select_decoding_vectors(spaces, {0, 0, 1}), DomainError);
}

TEST(Scheme, DecoderInvertsMessagesAndKillsKeys) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t t = 2 + rng() % 7;
    const std::size_t m = 1 + rng() % 4;
    const std::size_t k = 1 + rng() % 2;
    if (k > t) continue;
    const auto net = random_net(rng, t, m, k);
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto s = build_scheme(net, k, default_field_size(t, k), perm);
    EXPECT_EQ(s.decoder * s.message_matrix, FieldMatrix::identity(s.total_rate(), s.q));
    EXPECT_TRUE((s.decoder * s.key_matrix).is_zero());
    if (s.total_rate() > 0) {
      EXPECT_EQ(rank(s.decoder), s.total_rate());
    }
  }
}

TEST(Scheme, DestinationsDecodeFromTheirOwnRelays) {
  const auto s = build_scheme(kSixRelays, 1, 7, {2, 0, 1});
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::vector<Scalar>> w(3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t r = 0; r < s.rates[i]; ++r) w[i].push_back(static_cast<Scalar>(rng() % 7));
    }
    const std::vector<Scalar> key{static_cast<Scalar>(rng() % 7)};
    const auto x = encode(s, w, key);
    EXPECT_EQ(decode(s, x), w);
    for (std::size_t i = 0; i < 3; ++i) {
      std::vector<Scalar> seen;
      for (std::size_t r : kSixRelays.relays_of(i)) seen.push_back(x[r]);
      EXPECT_EQ(decode_destination(s, i, seen), w[i]);
    }
  }
}

TEST(Scheme, SingleDestinationGetsCutMinusKeys) {
  const auto net = TwoLayerNetwork::from_one_based(5, {{1, 2, 3, 4, 5}});
  EXPECT_EQ(build_scheme(net, 2, 7, {0}).rates, (std::vector<std::size_t>{3}));
}

TEST(Scheme, EncodeChecksLengths) {
  const auto s = build_scheme(kSixRelays, 1, 7, {2, 0, 1});
  EXPECT_THROW(encode(s, {{1, 2}, {1, 2}}, std::vector<Scalar>{0}), DomainError);
  EXPECT_THROW(encode(s, {{1, 2}, {1, 2}, {1}}, std::vector<Scalar>{}), DomainError);
}

TEST(RandomKeyMatrix, DeterministicPerSeed) {
  std::mt19937_64 a(5);
  std::mt19937_64 b(5);
  EXPECT_EQ(random_key_matrix(6, 2, 11, a), random_key_matrix(6, 2, 11, b));
}

}  // namespace
}  // namespace secnc
