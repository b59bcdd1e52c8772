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

// Destination subsets as bitmasks: bit i stands for destination i + 1.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "secnc/errors.hpp"

namespace secnc {

using Subset = std::uint32_t;

// Up to 16 destinations keeps 2^m-sized tables reasonable.
inline constexpr std::size_t kMaxDestinations = 16;

constexpr Subset full_set(std::size_t m) {
  return m >= 32 ? ~Subset{0} : (Subset{1} << m) - 1;
}

constexpr bool contains(Subset s, std::size_t i) { return (s >> i) & 1u; }
constexpr bool is_subset_of(Subset a, Subset b) { return (a & ~b) == 0; }
constexpr std::size_t cardinality(Subset s) { return std::popcount(s); }

// From 1-based destination indices.
inline Subset subset_of(std::span<const std::size_t> one_based) {
  Subset s = 0;
  for (std::size_t i : one_based) {
    if (i == 0 || i > kMaxDestinations) throw DomainError("destination index out of range");
    s |= Subset{1} << (i - 1);
  }
  return s;
}

inline Subset subset_of(std::initializer_list<std::size_t> one_based) {
  return subset_of(std::span<const std::size_t>(one_based.begin(), one_based.size()));
}

// 0-based members in ascending order.
inline std::vector<std::size_t> members(Subset s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s != 0; ++i, s >>= 1) {
    if (s & 1u) out.push_back(i);
  }
  return out;
}

// "{1,2,4}" with 1-based indices.
inline std::string subset_name(Subset s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : members(s)) {
    if (!first) out += ',';
    out += std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Visits every size-`size` subset of {0..n-1} in lexicographic order; stops
// early when `visit` returns false. Returns false iff stopped early.
template <typename Visit>
bool for_each_combination(std::size_t n, std::size_t size, Visit&& visit) {
  if (size > n) return true;
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    if (!visit(static_cast<const std::vector<std::size_t>&>(idx))) return false;
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == n - size + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// 0-based permutation from 1-based values; validates.
inline std::vector<std::size_t> permutation_from_one_based(
    const std::vector<std::size_t>& one_based, std::size_t m) {
  if (one_based.size() != m) throw DomainError("permutation has wrong length");
  std::vector<std::size_t> p;
  std::vector<bool> seen(m, false);
  for (std::size_t v : one_based) {
    if (v == 0 || v > m || seen[v - 1]) throw DomainError("not a permutation of [m]");
    seen[v - 1] = true;
    p.push_back(v - 1);
  }
  return p;
}

inline void check_permutation(const std::vector<std::size_t>& p, std::size_t m) {
  if (p.size() != m) throw DomainError("permutation has wrong length");
  std::vector<bool> seen(m, false);
  for (std::size_t v : p) {
    if (v >= m || seen[v]) throw DomainError("not a permutation of [m]");
    seen[v] = true;
  }
}

}  // namespace secnc
