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

// Rate regions { R >= 0 : Σ_{i in A} R_i <= g(A) for all A } described by an
// integer set function g over destination subsets.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "secnc/errors.hpp"
#include "secnc/galois.hpp"
#include "secnc/network.hpp"
#include "secnc/scheme.hpp"
#include "secnc/subsets.hpp"

namespace secnc {

class RateRegion {
 public:
  explicit RateRegion(std::size_t destinations)
      : m_(destinations), bounds_(std::size_t{1} << destinations, 0) {
    if (destinations == 0 || destinations > kMaxDestinations) {
      throw DomainError("rate region needs 1..16 destinations");
    }
  }

  std::size_t destination_count() const { return m_; }
  Subset full() const { return full_set(m_); }

  // g(∅) is fixed at 0.
  long long bound(Subset a) const { return bounds_.at(a); }
  void set_bound(Subset a, long long g) {
    if (a == 0) throw DomainError("the empty set has no bound");
    bounds_.at(a) = g;
  }
  const std::vector<long long>& bounds() const { return bounds_; }

  // The subset whose constraint `rates` exceeds by the most (ties: smallest
  // bitmask), or nothing if `rates` lies in the region.
  std::optional<Subset> violated_subset(std::span<const std::size_t> rates) const {
    check_rates(rates);
    std::optional<Subset> worst;
    long long worst_excess = 0;
    for (Subset a = 1; a <= full(); ++a) {
      const long long excess = subset_sum(rates, a) - bounds_[a];
      if (excess > worst_excess) {
        worst_excess = excess;
        worst = a;
      }
    }
    return worst;
  }

  bool contains(std::span<const std::size_t> rates) const {
    return !violated_subset(rates).has_value();
  }

  static long long subset_sum(std::span<const std::size_t> rates, Subset a) {
    long long s = 0;
    for (std::size_t i : members(a)) s += static_cast<long long>(rates[i]);
    return s;
  }

  friend bool operator==(const RateRegion&, const RateRegion&) = default;

 private:
  void check_rates(std::span<const std::size_t> rates) const {
    if (rates.size() != m_) throw DomainError("rate tuple has wrong length");
  }

  std::size_t m_;
  std::vector<long long> bounds_;
};

// g(A) = dim(Σ_{i in A} N_i).
inline RateRegion achievable_region(std::span<const FieldMatrix> null_spaces) {
  RateRegion region(null_spaces.size());
  std::vector<FieldMatrix> parts;
  for (Subset a = 1; a <= region.full(); ++a) {
    parts.clear();
    for (std::size_t i : members(a)) parts.push_back(null_spaces[i]);
    region.set_bound(a, static_cast<long long>(subspace_sum_dim(parts)));
  }
  return region;
}

inline RateRegion achievable_region(const TwoLayerNetwork& net, std::size_t k, Scalar q) {
  const auto spaces = null_spaces(net, build_vandermonde(net.relay_count(), k, q));
  return achievable_region(spaces);
}

// dim of the intersection over i in A of the row spaces of [V^T; C_i].
// Dual to the achievable bound: t - g(A).
inline std::size_t constraint_intersection_dim(const TwoLayerNetwork& net, const FieldMatrix& v,
                                               Subset a) {
  net.check_subset(a);
  std::vector<FieldMatrix> parts;
  for (std::size_t i : members(a)) parts.push_back(build_constraint_matrix(v, net.relays_of(i)));
  return row_space_intersection(parts).rows();
}

// g(A) = M_A - k.
inline RateRegion outer_bound(const CutProfile& cuts, std::size_t k) {
  RateRegion region(cuts.destinations);
  for (std::size_t i = 0; i < cuts.destinations; ++i) {
    const std::size_t cut = cuts.at(Subset{1} << i);
    if (cut < k) throw SecureCommunicationImpossible(i, cut, k);
  }
  for (Subset a = 1; a <= region.full(); ++a) {
    region.set_bound(a, static_cast<long long>(cuts.at(a)) - static_cast<long long>(k));
  }
  return region;
}

// Capacity for a single wiretapped edge: g(A) = M_A - C_A, with C_A the
// number of components of the relay-overlap graph on A.
inline RateRegion single_key_capacity_region(const TwoLayerNetwork& net) {
  RateRegion region(net.destination_count());
  for (Subset a = 1; a <= region.full(); ++a) {
    region.set_bound(a, static_cast<long long>(min_cut_two_layer(net, a)) -
                            static_cast<long long>(connected_components(net, a)));
  }
  return region;
}

// Visits every set partition of `a`, each as a list of blocks.
template <typename Visit>
void for_each_partition(Subset a, Visit&& visit) {
  std::vector<Subset> blocks;
  auto recurse = [&](auto&& self, Subset rest) -> void {
    if (rest == 0) {
      visit(static_cast<const std::vector<Subset>&>(blocks));
      return;
    }
    const Subset lowest = rest & (~rest + 1);
    const Subset others = rest & ~lowest;
    // Blocks containing the lowest remaining element.
    for (Subset extra = others;; extra = (extra - 1) & others) {
      blocks.push_back(lowest | extra);
      self(self, rest & ~(lowest | extra));
      blocks.pop_back();
      if (extra == 0) break;
    }
  };
  recurse(recurse, a);
}

// Capacity for three destinations: g(A) = min over partitions P of A of
// Σ_{Q in P} M_Q - |P| k.
inline RateRegion three_destination_capacity_region(const TwoLayerNetwork& net, std::size_t k) {
  if (net.destination_count() != 3) {
    throw DomainError("three-destination capacity formula needs m = 3");
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (net.relays_of(i).size() < k) throw SecureCommunicationImpossible(i, net.relays_of(i).size(), k);
  }
  RateRegion region(3);
  for (Subset a = 1; a <= region.full(); ++a) {
    long long best = INT64_MAX;
    for_each_partition(a, [&](const std::vector<Subset>& blocks) {
      long long v = 0;
      for (Subset q : blocks) v += static_cast<long long>(min_cut_two_layer(net, q));
      v -= static_cast<long long>(blocks.size() * k);
      best = std::min(best, v);
    });
    region.set_bound(a, best);
  }
  return region;
}

// True iff every pair of destinations shares at least k relays; then the
// outer bound M_A - k is achieved.
inline bool pairwise_overlap_condition(const TwoLayerNetwork& net, std::size_t k) {
  const std::size_t m = net.destination_count();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (net.pair_overlap(i, j) < k) return false;
    }
  }
  return true;
}

// ĝ(A) = min over partitions P of A of Σ_{Q in P} g(Q). Same polyhedron,
// tight bounds; computed by dynamic programming over the block that holds
// the lowest element of A.
inline RateRegion canonicalize(const RateRegion& region) {
  RateRegion out(region.destination_count());
  for (Subset a = 1; a <= region.full(); ++a) {
    long long best = region.bound(a);
    const Subset lowest = a & (~a + 1);
    const Subset others = a & ~lowest;
    for (Subset extra = (others - 1) & others; extra != others; extra = (extra - 1) & others) {
      const Subset block = lowest | extra;
      best = std::min(best, out.bound(block) + out.bound(a & ~block));
      if (extra == 0) break;
    }
    out.set_bound(a, best);
  }
  return out;
}

struct PolymatroidCheck {
  bool monotone = true;
  bool submodular = true;
  // First failing witness: for monotonicity (A, A + i); for submodularity
  // (A + i, A + j) with A the common part.
  std::optional<std::pair<Subset, Subset>> witness;

  bool ok() const { return monotone && submodular; }
};

// Local checks: g(A) <= g(A + i) and g(A + i) + g(A + j) >= g(A + i + j) + g(A),
// with g(∅) = 0. Together these are equivalent to monotone + submodular.
inline PolymatroidCheck check_polymatroid(const RateRegion& region) {
  PolymatroidCheck out;
  const std::size_t m = region.destination_count();
  auto g = [&](Subset s) { return s == 0 ? 0LL : region.bound(s); };
  for (Subset a = 0; a <= region.full(); ++a) {
    if (g(a) < 0) {
      out.monotone = false;
      if (!out.witness) out.witness = std::pair{Subset{0}, a};
    }
    for (std::size_t i = 0; i < m; ++i) {
      const Subset ai = a | (Subset{1} << i);
      if (ai == a) continue;
      if (g(ai) < g(a)) {
        out.monotone = false;
        if (!out.witness) out.witness = std::pair{a, ai};
      }
      for (std::size_t j = i + 1; j < m; ++j) {
        const Subset aj = a | (Subset{1} << j);
        if (aj == a) continue;
        if (g(ai) + g(aj) < g(ai | aj) + g(a)) {
          out.submodular = false;
          if (!out.witness) out.witness = std::pair{ai, aj};
        }
      }
    }
  }
  return out;
}

// Corner of the polymatroid for a 0-based permutation:
// R_{π(l)} = g(S_l) - g(S_{l-1}), S_l = {π(1), ..., π(l)}, g(∅) = 0.
inline std::vector<std::size_t> corner_point(const RateRegion& region,
                                             const std::vector<std::size_t>& permutation) {
  check_permutation(permutation, region.destination_count());
  if (!check_polymatroid(region).ok()) {
    throw DomainError("corner points need a non-decreasing submodular set function");
  }
  std::vector<std::size_t> rates(region.destination_count(), 0);
  Subset prefix = 0;
  long long prev = 0;
  for (std::size_t dest : permutation) {
    prefix |= Subset{1} << dest;
    const long long cur = region.bound(prefix);
    rates[dest] = static_cast<std::size_t>(cur - prev);
    prev = cur;
  }
  return rates;
}

struct RegionComparison {
  bool equal = true;
  std::optional<Subset> witness;  // first subset where canonical bounds differ
  long long lhs = 0;
  long long rhs = 0;
};

// Compares the canonical forms, i.e. the polyhedra themselves.
inline RegionComparison regions_equal(const RateRegion& a, const RateRegion& b) {
  if (a.destination_count() != b.destination_count()) {
    throw DomainError("regions over different destination counts");
  }
  const RateRegion ca = canonicalize(a);
  const RateRegion cb = canonicalize(b);
  for (Subset s = 1; s <= ca.full(); ++s) {
    if (ca.bound(s) != cb.bound(s)) return {false, s, ca.bound(s), cb.bound(s)};
  }
  return {};
}

// Scheme at an arbitrary integer rate tuple of the achievable region.
//
// Tries every corner point first: if one dominates `rates`, its greedy
// selection truncated per destination is still independent. Otherwise draws
// seeded random vectors from each N_i until the stack has full row rank.
inline WiretapScheme build_scheme_for_rates(const TwoLayerNetwork& net, const FieldMatrix& v,
                                            const std::vector<std::size_t>& rates,
                                            std::uint64_t seed = 0,
                                            std::size_t max_random_attempts = 256) {
  const std::size_t m = net.destination_count();
  if (rates.size() != m) throw DomainError("rate tuple has wrong length");
  const auto spaces = null_spaces(net, v);
  const RateRegion region = achievable_region(spaces);
  if (auto bad = region.violated_subset(rates)) {
    const long long requested = RateRegion::subset_sum(rates, *bad);
    throw InfeasibleRates(*bad, region.bound(*bad), requested,
                          "rates violate the constraint on " + subset_name(*bad) + ": " +
                              std::to_string(requested) + " > " +
                              std::to_string(region.bound(*bad)));
  }
  const std::size_t t = net.relay_count();
  const Scalar q = v.modulus();

  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    const auto corner = corner_point(region, perm);
    bool dominated = true;
    for (std::size_t i = 0; i < m; ++i) dominated = dominated && rates[i] <= corner[i];
    if (!dominated) continue;
    const DecodingSelection full = select_decoding_vectors(spaces, perm);
    std::vector<std::size_t> keep;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t r = 0; r < rates[i]; ++r) keep.push_back(offset + r);
      offset += full.rates[i];
    }
    return assemble_scheme(net, v, {full.decoder.select_rows(keep), rates}, {});
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < max_random_attempts; ++attempt) {
    IncrementalSpan span(t, q);
    std::vector<std::vector<std::vector<Scalar>>> chosen(m);
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      for (std::size_t r = 0; r < rates[i] && ok; ++r) {
        std::vector<Scalar> coeffs(spaces[i].cols());
        for (auto& c : coeffs) c = static_cast<Scalar>(rng() % q);
        auto vec = spaces[i].apply(coeffs);
        ok = span.add_if_independent(vec);
        chosen[i].push_back(std::move(vec));
      }
    }
    if (ok) return assemble_scheme(net, v, detail::assemble_decoder(chosen, t, q), {});
  }
  throw Error("no independent decoding vectors found for the requested rates after " +
              std::to_string(max_random_attempts) + " random draws");
}

}  // namespace secnc
