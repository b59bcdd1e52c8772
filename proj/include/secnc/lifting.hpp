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

// Lifting a two-layer scheme onto a separable network.
//
// The child network has one relay per unit of M'_J. On the parent, the
// symbols of the relays created for label J are multicast over G'_J to every
// destination in J with random linear network coding, so each destination
// recovers exactly the relay symbols it would see in the child and decodes
// with the child's T. Security is re-checked on the parent edges: each edge
// carries g_e [M | V] (g_e its global coding vector), and the rank condition
// must hold for every set of at most k edges.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "secnc/errors.hpp"
#include "secnc/galois.hpp"
#include "secnc/network.hpp"
#include "secnc/rate_region.hpp"
#include "secnc/scheme.hpp"
#include "secnc/security.hpp"
#include "secnc/subsets.hpp"

namespace secnc {

inline constexpr std::size_t kDefaultRetryBound = 64;

// Recovers the payload of one label at one destination:
// payload = inverse * (symbols on `edges`).
struct PayloadDecoder {
  std::size_t destination;
  std::vector<std::size_t> edges;
  FieldMatrix inverse;
};

// Random linear multicast code on a single labeled subgraph.
struct MulticastCode {
  Subset label = 0;
  std::size_t payload = 0;
  std::vector<std::size_t> edges;  // subgraph edges in coding order
  // For a source edge: coefficients over the payload symbols. Otherwise:
  // coefficients over `inputs[e]`, the subgraph edges entering tail(e).
  std::map<std::size_t, std::vector<Scalar>> local;
  std::map<std::size_t, std::vector<std::size_t>> inputs;
  std::map<std::size_t, std::vector<Scalar>> global;  // over the payload symbols
  std::vector<PayloadDecoder> decoders;               // one per destination in the label
  std::size_t attempts = 0;
};

namespace detail {

inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

// Picks independent rows of `stack` greedily; returns the row indices, or
// nothing if the rows do not reach full column rank.
inline std::optional<std::vector<std::size_t>> full_rank_rows(const FieldMatrix& stack) {
  IncrementalSpan span(stack.cols(), stack.modulus());
  std::vector<std::size_t> picked;
  for (std::size_t r = 0; r < stack.rows() && picked.size() < stack.cols(); ++r) {
    if (span.add_if_independent(stack.row(r))) picked.push_back(r);
  }
  if (picked.size() != stack.cols()) return std::nullopt;
  return picked;
}

inline FieldMatrix invert(const FieldMatrix& square) {
  return right_inverse(square);
}

}  // namespace detail

// Multicasts `payload` symbols from the source to every destination of
// `label` over the edges carrying that label. Local coefficients are drawn
// uniformly from GF(q); a draw is accepted when every destination can invert
// its incoming coding vectors. Retries up to `max_attempts` times.
inline MulticastCode multicast_subgraph(const SeparableNetwork& net, Subset label,
                                        std::size_t payload, Scalar q, std::uint64_t seed,
                                        std::size_t max_attempts = kDefaultRetryBound) {
  const PrimeField field(q);
  for (std::size_t i : members(label)) {
    if (i >= net.destination_count()) throw DomainError("label outside [m]");
    const std::size_t cut = subgraph_min_cut(net, label, Subset{1} << i);
    if (cut < payload) {
      throw DomainError("subgraph " + subset_name(label) + " has min-cut " + std::to_string(cut) +
                        " to destination " + std::to_string(i + 1) + ", payload is " +
                        std::to_string(payload));
    }
  }

  std::vector<std::size_t> position(net.node_count());
  for (std::size_t p = 0; p < net.topological_order().size(); ++p) {
    position[net.topological_order()[p]] = p;
  }
  std::vector<std::size_t> edges = net.edges_with_label(label);
  std::stable_sort(edges.begin(), edges.end(), [&](std::size_t a, std::size_t b) {
    return position[net.edges()[a].tail] < position[net.edges()[b].tail];
  });

  MulticastCode code;
  code.label = label;
  code.payload = payload;
  code.edges = edges;
  for (std::size_t e : edges) {
    if (net.edges()[e].tail == net.source()) continue;
    std::vector<std::size_t> in;
    for (std::size_t f : edges) {
      if (net.edges()[f].head == net.edges()[e].tail) in.push_back(f);
    }
    std::sort(in.begin(), in.end());
    code.inputs[e] = std::move(in);
  }

  auto rng = detail::seeded_rng(seed, label, payload);
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    code.local.clear();
    code.global.clear();
    code.decoders.clear();
    code.attempts = attempt;
    for (std::size_t e : edges) {
      std::vector<Scalar> g(payload, 0);
      if (net.edges()[e].tail == net.source()) {
        std::vector<Scalar> c(payload);
        for (auto& x : c) x = static_cast<Scalar>(rng() % q);
        g = c;
        code.local[e] = std::move(c);
      } else {
        const auto& in = code.inputs[e];
        std::vector<Scalar> c(in.size());
        for (auto& x : c) x = static_cast<Scalar>(rng() % q);
        for (std::size_t j = 0; j < in.size(); ++j) {
          const auto& src = code.global.at(in[j]);
          for (std::size_t s = 0; s < payload; ++s) {
            g[s] = field.add(g[s], field.mul(c[j], src[s]));
          }
        }
        code.local[e] = std::move(c);
      }
      code.global[e] = std::move(g);
    }

    bool decodable = true;
    for (std::size_t i : members(label)) {
      std::vector<std::size_t> in;
      for (std::size_t e : edges) {
        if (net.edges()[e].head == net.destination(i)) in.push_back(e);
      }
      std::sort(in.begin(), in.end());
      FieldMatrix stack(in.size(), payload, q);
      for (std::size_t r = 0; r < in.size(); ++r) {
        const auto& g = code.global.at(in[r]);
        for (std::size_t s = 0; s < payload; ++s) stack(r, s) = g[s];
      }
      PayloadDecoder dec{i, {}, FieldMatrix(payload, 0, q)};
      if (payload > 0) {
        const auto rows = detail::full_rank_rows(stack);
        if (!rows) {
          decodable = false;
          break;
        }
        for (std::size_t r : *rows) dec.edges.push_back(in[r]);
        dec.inverse = detail::invert(stack.select_rows(*rows));
      }
      code.decoders.push_back(std::move(dec));
    }
    if (decodable) return code;
  }
  throw MulticastFailure(max_attempts, "no decodable multicast code for subgraph " +
                                           subset_name(label) + " after " +
                                           std::to_string(max_attempts) + " draws");
}

// Destination i's full decoder on the parent: W_i = matrix * (symbols on edges).
struct DestinationReceiver {
  std::size_t destination;
  std::vector<std::size_t> edges;
  FieldMatrix matrix;
};

struct LiftVerification {
  bool decodes = false;
  SecurityReport security;
  SecurityReport mds;
  bool rates_preserved = false;
};

struct LiftedScheme {
  SeparableNetwork parent;
  ChildNetwork child;
  WiretapScheme child_scheme;  // with the key matrix actually used
  std::vector<MulticastCode> codes;
  FieldMatrix edge_coefficients;  // G, |E| x t_child
  FieldMatrix global_rows;        // G [M | V], |E| x (Σ R_i + k)
  std::vector<DestinationReceiver> receivers;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
  bool key_matrix_redrawn = false;
  LiftVerification verification;

  FieldMatrix message_rows() const { return global_rows.col_range(0, child_scheme.total_rate()); }
  FieldMatrix key_rows() const {
    return global_rows.col_range(child_scheme.total_rate(), child_scheme.k);
  }
};

// Symbols on every parent edge for messages W and keys K.
inline std::vector<Scalar> lifted_transmit(const LiftedScheme& s,
                                           const std::vector<std::vector<Scalar>>& messages,
                                           std::span<const Scalar> keys) {
  const auto& cs = s.child_scheme;
  if (messages.size() != cs.rates.size()) throw DomainError("one message per destination expected");
  if (keys.size() != cs.k) throw DomainError("key length must equal k");
  std::vector<Scalar> input;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    if (messages[i].size() != cs.rates[i]) throw DomainError("message length differs from its rate");
    for (Scalar w : messages[i]) input.push_back(w % cs.q);
  }
  for (Scalar key : keys) input.push_back(key % cs.q);
  return s.global_rows.apply(input);
}

// Destination i's estimate of W_i from the full vector of edge symbols; only
// edges entering D_i are read.
inline std::vector<Scalar> lifted_decode(const LiftedScheme& s, std::size_t destination,
                                         std::span<const Scalar> edge_symbols) {
  const auto& rx = s.receivers.at(destination);
  std::vector<Scalar> seen;
  for (std::size_t e : rx.edges) seen.push_back(edge_symbols[e]);
  return rx.matrix.apply(seen);
}

namespace detail {

// Builds G, the global rows and each destination's composite decoder.
inline void assemble_lift(LiftedScheme& s) {
  const auto& parent = s.parent;
  const auto& cs = s.child_scheme;
  const Scalar q = cs.q;
  const std::size_t t = cs.network.relay_count();
  FieldMatrix g(parent.edges().size(), t, q);
  for (const auto& code : s.codes) {
    const auto& relays = s.child.relays_by_label.at(code.label);
    for (const auto& [e, vec] : code.global) {
      for (std::size_t j = 0; j < vec.size(); ++j) g(e, relays[j]) = vec[j];
    }
  }
  s.edge_coefficients = g;
  s.global_rows = g * cs.encoder();

  s.receivers.clear();
  const PrimeField f(q);
  for (std::size_t i = 0; i < parent.destination_count(); ++i) {
    const auto& child_relays = cs.network.relays_of(i);
    // Which (edge, inverse row) recovers each child relay symbol.
    std::map<std::size_t, std::pair<const PayloadDecoder*, std::size_t>> source_of;
    for (const auto& code : s.codes) {
      if (!contains(code.label, i)) continue;
      const auto& relays = s.child.relays_by_label.at(code.label);
      for (const auto& dec : code.decoders) {
        if (dec.destination != i) continue;
        for (std::size_t j = 0; j < relays.size(); ++j) source_of[relays[j]] = {&dec, j};
      }
    }
    std::vector<std::size_t> edges;
    for (const auto& [relay, src] : source_of) {
      for (std::size_t e : src.first->edges) edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    auto column = [&](std::size_t e) {
      return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
    };
    // recover: |M_i| x |edges|, row j gives X of child_relays[j].
    FieldMatrix recover(child_relays.size(), edges.size(), q);
    for (std::size_t j = 0; j < child_relays.size(); ++j) {
      const auto it = source_of.find(child_relays[j]);
      if (it == source_of.end()) continue;
      const auto& [dec, row] = it->second;
      for (std::size_t c = 0; c < dec->edges.size(); ++c) {
        recover(j, column(dec->edges[c])) = dec->inverse(row, c);
      }
    }
    const FieldMatrix block =
        cs.decoder.row_range(cs.block_offset(i), cs.rates[i]).select_cols(child_relays);
    s.receivers.push_back({i, std::move(edges), block * recover});
  }
}

// Exact algebraic check that receiver i maps the edge rows onto W_i.
inline bool receivers_decode(const LiftedScheme& s) {
  const auto& cs = s.child_scheme;
  const std::size_t width = cs.total_rate() + cs.k;
  for (const auto& rx : s.receivers) {
    const FieldMatrix seen = s.global_rows.select_rows(rx.edges);
    const FieldMatrix got = rx.matrix * seen;
    FieldMatrix want(cs.rates[rx.destination], width, cs.q);
    const std::size_t off = cs.block_offset(rx.destination);
    for (std::size_t r = 0; r < cs.rates[rx.destination]; ++r) want(r, off + r) = 1;
    if (!(got == want)) return false;
  }
  return true;
}

}  // namespace detail

struct LiftOptions {
  std::size_t max_attempts = kDefaultRetryBound;
};

// Lifts `child_scheme` (built on build_child(parent)) onto the parent.
//
// The first half of the attempts keep the child's key matrix and only
// re-draw the network code; later attempts also draw a uniform key matrix
// and rebuild the child scheme at the same rates. An attempt is accepted when
// every destination decodes exactly, the rank condition holds on all parent
// edge sets of size <= k, and the key matrix is MDS.
inline LiftedScheme lift_scheme(const SeparableNetwork& parent, const WiretapScheme& child_scheme,
                                std::uint64_t seed, LiftOptions options = {}) {
  ChildNetwork child = build_child(parent);
  if (!(child.network == child_scheme.network)) {
    throw DomainError("scheme was not built on the child network of this parent");
  }
  const Scalar q = child_scheme.q;
  const std::size_t k = child_scheme.k;
  const std::size_t t = child.network.relay_count();
  std::string last_failure = "none";

  for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    LiftedScheme s{parent, child, child_scheme, {}, FieldMatrix(0, 0, q), FieldMatrix(0, 0, q),
                   {}, seed, attempt + 1, false, {}};
    if (attempt >= (options.max_attempts + 1) / 2 && k > 0) {
      auto rng = detail::seeded_rng(seed, 0xfeedu, attempt);
      const FieldMatrix v = random_key_matrix(t, k, q, rng);
      try {
        s.child_scheme = child_scheme.permutation.empty()
                             ? build_scheme_for_rates(child.network, v, child_scheme.rates, seed)
                             : build_scheme_with_key(child.network, v, child_scheme.permutation);
      } catch (const Error&) {
        last_failure = "child scheme rebuild with re-drawn key matrix";
        continue;
      }
      s.key_matrix_redrawn = true;
    }
    s.verification.rates_preserved = s.child_scheme.rates == child_scheme.rates;
    if (!s.verification.rates_preserved) {
      last_failure = "rates changed under re-drawn key matrix";
      continue;
    }

    try {
      for (const auto& [label, relays] : child.relays_by_label) {
        s.codes.push_back(multicast_subgraph(parent, label, relays.size(), q,
                                             seed ^ (0x9e3779b97f4a7c15ull * (attempt + 1)),
                                             options.max_attempts));
      }
    } catch (const MulticastFailure&) {
      last_failure = "multicast";
      continue;
    }
    detail::assemble_lift(s);

    s.verification.decodes = detail::receivers_decode(s);
    s.verification.mds = k <= t ? mds_check(s.child_scheme.key_matrix, k) : SecurityReport{};
    s.verification.mds.condition = SecurityCondition::kMds;
    s.verification.security = rank_condition(s.message_rows(), s.key_rows(), k);
    if (!s.verification.decodes) {
      last_failure = "decoding";
    } else if (!s.verification.mds.pass) {
      last_failure = "mds";
    } else if (!s.verification.security.pass) {
      last_failure = "rank condition";
    } else {
      return s;
    }
  }
  throw LiftFailure(options.max_attempts, last_failure);
}

using Rational = boost::multiprecision::cpp_rational;

// Rational upper bound on Euler's number.
inline Rational euler_upper_bound() { return Rational(271829, 100000); }

// 1 - (e|E|/k)^k (1 - (1 - 1/q)^k) - C(M, k) (1 - (1 - 1/q)^k), a lower bound
// on the probability that a uniform key matrix is MDS and keeps every set of
// at most k edges secure.
inline Rational success_probability_lower_bound(std::size_t edge_count, std::size_t k,
                                                std::size_t message_space, std::uint64_t q) {
  if (k == 0) throw DomainError("probability bound needs k >= 1");
  if (q < 2) throw DomainError("probability bound needs q >= 2");
  if (message_space < k) throw DomainError("probability bound needs M >= k");
  const Rational keep = Rational(q - 1, q);
  Rational keep_k = 1;
  Rational union_base = euler_upper_bound() * Rational(edge_count) / Rational(k);
  Rational union_term = 1;
  for (std::size_t i = 0; i < k; ++i) {
    keep_k *= keep;
    union_term *= union_base;
  }
  const Rational deficit = 1 - keep_k;
  const Rational choose = Rational(boost::multiprecision::cpp_int(binomial(message_space, k)));
  return 1 - union_term * deficit - choose * deficit;
}

struct ProbabilityBound {
  Rational value;
  bool positive = false;
  std::optional<std::uint64_t> minimal_prime;  // smallest prime q making it positive
};

inline ProbabilityBound success_probability_bound(std::size_t edge_count, std::size_t k,
                                                  std::size_t message_space, std::uint64_t q,
                                                  std::uint64_t probe_limit = kMaxModulus) {
  ProbabilityBound out;
  out.value = success_probability_lower_bound(edge_count, k, message_space, q);
  out.positive = out.value > 0;
  // The bound increases with q: find the smallest positive integer q by
  // doubling then bisection, then the next prime at or above it.
  auto positive_at = [&](std::uint64_t x) {
    return success_probability_lower_bound(edge_count, k, message_space, x) > 0;
  };
  std::uint64_t hi = 2;
  while (hi < probe_limit && !positive_at(hi)) hi *= 2;
  if (hi >= probe_limit && !positive_at(probe_limit)) return out;
  hi = std::min(hi, probe_limit);
  std::uint64_t lo = hi / 2;  // not positive (or below 2)
  while (lo + 1 < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (positive_at(mid)) hi = mid; else lo = mid;
  }
  std::uint64_t p = hi;
  while (!is_prime(p)) ++p;
  if (p <= probe_limit) out.minimal_prime = p;
  return out;
}

// Field size for lifting: the default scheme field, raised when needed until
// the probability bound is positive.
inline Scalar lift_field_size(std::size_t child_relays, std::size_t k, std::size_t edge_count) {
  std::uint64_t q = default_field_size(child_relays, k);
  if (k >= 1 && child_relays >= k) {
    const auto bound = success_probability_bound(edge_count, k, child_relays, q);
    if (!bound.positive && bound.minimal_prime) q = std::max<std::uint64_t>(q, *bound.minimal_prime);
  }
  return static_cast<Scalar>(q);
}

}  // namespace secnc
