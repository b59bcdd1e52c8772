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

// Secure linear scheme for two-layer networks.
//
// The source sends X = [M | V] [W_1; ...; W_m; K] to the t relays, where K
// holds k uniform key symbols and V is a t x k matrix whose every k rows are
// independent. Each relay forwards its symbol to the destinations it is wired
// to. Destination i decodes with R_i vectors from N_i, the right null space
// of [V^T; C_i] (C_i zeroes the relays i does not see); stacking all decoding
// vectors gives T with T V = 0, and M is chosen with T M = I.

#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "secnc/errors.hpp"
#include "secnc/galois.hpp"
#include "secnc/network.hpp"
#include "secnc/subsets.hpp"

namespace secnc {

// Smallest prime above t + k.
inline Scalar default_field_size(std::size_t relays, std::size_t key_count) {
  return next_prime_above(relays + key_count);
}

// Row i (1-based) is (1, a_i, a_i^2, ..., a_i^{k-1}) with a_i = i mod q.
//
// The points a_i are distinct, so any k rows are independent, as long as
// q > t. With k = 1 the matrix is a column of ones for every q and no bound
// on q is needed.
inline FieldMatrix build_vandermonde(std::size_t t, std::size_t k, Scalar q) {
  const PrimeField f(q);
  if (k > t) throw DomainError("key count exceeds relay count");
  if (k >= 2 && q <= t) {
    throw FieldTooSmall("Vandermonde rows need q > t (q = " + std::to_string(q) +
                        ", t = " + std::to_string(t) + ")");
  }
  FieldMatrix v(t, k, q);
  for (std::size_t i = 0; i < t; ++i) {
    const Scalar alpha = f.reduce(i + 1);
    Scalar p = 1;
    for (std::size_t j = 0; j < k; ++j) {
      v(i, j) = p;
      p = f.mul(p, alpha);
    }
  }
  return v;
}

// Uniform t x k key matrix, used when a lift re-draws the key matrix.
template <typename Rng>
FieldMatrix random_key_matrix(std::size_t t, std::size_t k, Scalar q, Rng& rng) {
  FieldMatrix v(t, k, q);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < k; ++j) v(i, j) = static_cast<Scalar>(rng() % q);
  }
  return v;
}

// [V^T; C_i]: V^T on top, then one unit row per relay outside `relays`,
// in ascending relay order.
inline FieldMatrix build_constraint_matrix(const FieldMatrix& v,
                                           std::span<const std::size_t> relays) {
  const std::size_t t = v.rows();
  const std::size_t k = v.cols();
  std::vector<bool> seen(t, false);
  for (std::size_t r : relays) {
    if (r >= t) throw DomainError("relay index outside [t]");
    seen[r] = true;
  }
  std::vector<std::size_t> absent;
  for (std::size_t r = 0; r < t; ++r) {
    if (!seen[r]) absent.push_back(r);
  }
  FieldMatrix out(k + absent.size(), t, v.modulus());
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t r = 0; r < t; ++r) out(j, r) = v(r, j);
  }
  for (std::size_t a = 0; a < absent.size(); ++a) out(k + a, absent[a]) = 1;
  return out;
}

// Canonical bases of N_1..N_m as column matrices (t x dim N_i).
inline std::vector<FieldMatrix> null_spaces(const TwoLayerNetwork& net,
                                            const FieldMatrix& v) {
  if (v.rows() != net.relay_count()) throw DomainError("key matrix must have t rows");
  const std::size_t k = v.cols();
  std::vector<FieldMatrix> out;
  out.reserve(net.destination_count());
  for (std::size_t i = 0; i < net.destination_count(); ++i) {
    if (net.relays_of(i).size() < k) {
      throw SecureCommunicationImpossible(i, net.relays_of(i).size(), k);
    }
    out.push_back(right_null_space_basis(build_constraint_matrix(v, net.relays_of(i))));
  }
  return out;
}

// Vectors kept in reduced form so independence of a candidate is one pass of
// elimination against the current pivots.
class IncrementalSpan {
 public:
  IncrementalSpan(std::size_t dim, Scalar q) : dim_(dim), field_(q) {}

  std::size_t rank() const { return rows_.size(); }

  // Adds `v` if it is outside the current span; returns whether it was added.
  bool add_if_independent(std::span<const Scalar> v) {
    if (v.size() != dim_) throw DomainError("vector length mismatch");
    std::vector<Scalar> w(v.begin(), v.end());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Scalar c = w[pivots_[i]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        w[j] = field_.sub(w[j], field_.mul(c, rows_[i][j]));
      }
    }
    std::size_t p = 0;
    while (p < dim_ && w[p] == 0) ++p;
    if (p == dim_) return false;
    const Scalar inv = field_.inv(w[p]);
    for (auto& x : w) x = field_.mul(x, inv);
    // Keep earlier rows reduced at the new pivot.
    for (auto& row : rows_) {
      const Scalar c = row[p];
      if (c == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) row[j] = field_.sub(row[j], field_.mul(c, w[j]));
    }
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
  }

 private:
  std::size_t dim_;
  PrimeField field_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::size_t> pivots_;
};

struct DecodingSelection {
  FieldMatrix decoder;              // T, (Σ R_i) x t, rows grouped by destination
  std::vector<std::size_t> rates;   // R_1..R_m
};

namespace detail {

inline DecodingSelection assemble_decoder(
    const std::vector<std::vector<std::vector<Scalar>>>& chosen, std::size_t t, Scalar q) {
  DecodingSelection out{FieldMatrix(0, t, q), {}};
  std::size_t total = 0;
  for (const auto& c : chosen) {
    out.rates.push_back(c.size());
    total += c.size();
  }
  FieldMatrix decoder(total, t, q);
  std::size_t r = 0;
  for (const auto& c : chosen) {
    for (const auto& vec : c) {
      for (std::size_t j = 0; j < t; ++j) decoder(r, j) = vec[j];
      ++r;
    }
  }
  out.decoder = std::move(decoder);
  return out;
}

}  // namespace detail

// Greedy selection along `permutation` (0-based): walk N_{π(1)}, N_{π(2)}, ...
// and keep each canonical basis vector that is independent of everything kept
// so far. Destination π(i) ends up with
//   dim(N_{π(1)} + ... + N_{π(i)}) - dim(N_{π(1)} + ... + N_{π(i-1)})
// vectors and the stacked result has full row rank.
inline DecodingSelection select_decoding_vectors(std::span<const FieldMatrix> null_spaces,
                                                 const std::vector<std::size_t>& permutation) {
  const std::size_t m = null_spaces.size();
  if (m == 0) throw DomainError("no null spaces given");
  check_permutation(permutation, m);
  const std::size_t t = null_spaces.front().rows();
  const Scalar q = null_spaces.front().modulus();
  IncrementalSpan span(t, q);
  std::vector<std::vector<std::vector<Scalar>>> chosen(m);
  for (std::size_t dest : permutation) {
    const FieldMatrix& basis = null_spaces[dest];
    if (basis.rows() != t) throw DomainError("null spaces have different ambient dimension");
    for (std::size_t c = 0; c < basis.cols(); ++c) {
      const auto v = basis.column_vector(c);
      if (span.add_if_independent(v)) chosen[dest].push_back(v);
    }
  }
  return detail::assemble_decoder(chosen, t, q);
}

// M with T M = I.
inline FieldMatrix build_message_matrix(const FieldMatrix& decoder) {
  return right_inverse(decoder);
}

struct WiretapScheme {
  TwoLayerNetwork network;
  Scalar q;
  std::size_t k;
  FieldMatrix key_matrix;      // V, t x k
  FieldMatrix message_matrix;  // M, t x Σ R_i
  FieldMatrix decoder;         // T, Σ R_i x t
  std::vector<std::size_t> rates;
  std::vector<std::size_t> permutation;  // 0-based; empty if built for explicit rates

  std::size_t total_rate() const {
    return std::accumulate(rates.begin(), rates.end(), std::size_t{0});
  }

  std::size_t block_offset(std::size_t destination) const {
    return std::accumulate(rates.begin(), rates.begin() + destination, std::size_t{0});
  }

  // [M | V], the t x (Σ R_i + k) map from (W, K) to relay symbols.
  FieldMatrix encoder() const { return hstack(message_matrix, key_matrix); }
};

inline WiretapScheme assemble_scheme(const TwoLayerNetwork& net, const FieldMatrix& v,
                                     DecodingSelection selection,
                                     std::vector<std::size_t> permutation) {
  FieldMatrix m = build_message_matrix(selection.decoder);
  return {net,
          v.modulus(),
          v.cols(),
          v,
          std::move(m),
          std::move(selection.decoder),
          std::move(selection.rates),
          std::move(permutation)};
}

// Scheme at the corner point of `permutation`, with a given key matrix.
inline WiretapScheme build_scheme_with_key(const TwoLayerNetwork& net, const FieldMatrix& v,
                                           const std::vector<std::size_t>& permutation) {
  const auto spaces = null_spaces(net, v);
  return assemble_scheme(net, v, select_decoding_vectors(spaces, permutation), permutation);
}

// Scheme at the corner point of `permutation` with the Vandermonde key matrix.
inline WiretapScheme build_scheme(const TwoLayerNetwork& net, std::size_t k, Scalar q,
                                  const std::vector<std::size_t>& permutation) {
  return build_scheme_with_key(net, build_vandermonde(net.relay_count(), k, q), permutation);
}

struct Transmission {
  std::vector<std::vector<Scalar>> messages;  // W_i, length R_i each
  std::vector<Scalar> keys;                   // K, length k
  std::vector<Scalar> relay_symbols;          // X, length t
};

// X = [M | V] [W; K].
inline std::vector<Scalar> encode(const WiretapScheme& s,
                                  const std::vector<std::vector<Scalar>>& messages,
                                  std::span<const Scalar> keys) {
  if (messages.size() != s.rates.size()) throw DomainError("one message per destination expected");
  if (keys.size() != s.k) throw DomainError("key length must equal k");
  std::vector<Scalar> input;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    if (messages[i].size() != s.rates[i]) {
      throw DomainError("message " + std::to_string(i + 1) + " length differs from its rate");
    }
    for (Scalar w : messages[i]) input.push_back(w % s.q);
  }
  for (Scalar key : keys) input.push_back(key % s.q);
  return s.encoder().apply(input);
}

inline Transmission transmit(const WiretapScheme& s, std::vector<std::vector<Scalar>> messages,
                             std::vector<Scalar> keys) {
  auto x = encode(s, messages, keys);
  return {std::move(messages), std::move(keys), std::move(x)};
}

// W_hat = T X, split per destination.
inline std::vector<std::vector<Scalar>> decode(const WiretapScheme& s,
                                               std::span<const Scalar> relay_symbols) {
  if (relay_symbols.size() != s.network.relay_count()) {
    throw DomainError("relay symbol vector must have length t");
  }
  const auto all = s.decoder.apply(relay_symbols);
  std::vector<std::vector<Scalar>> out;
  std::size_t r = 0;
  for (std::size_t rate : s.rates) {
    out.emplace_back(all.begin() + r, all.begin() + r + rate);
    r += rate;
  }
  return out;
}

// Destination i's decoder using only what it receives: `observed[j]` is the
// symbol of its j-th relay (ascending relay order).
inline std::vector<Scalar> decode_destination(const WiretapScheme& s, std::size_t destination,
                                              std::span<const Scalar> observed) {
  const auto& relays = s.network.relays_of(destination);
  if (observed.size() != relays.size()) {
    throw DomainError("destination observes exactly its own relays");
  }
  const FieldMatrix block = s.decoder.row_range(s.block_offset(destination), s.rates[destination])
                                .select_cols(relays);
  return block.apply(observed);
}

}  // namespace secnc
