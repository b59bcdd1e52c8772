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

// Perfect-secrecy checks for linear schemes.
//
// A linear scheme is described by the rows an eavesdropper can observe: row e
// maps (W, K) to the symbol on edge e, split into a message part and a key
// part. Two independent checks are offered:
//   * rank_condition: rk([msg | key]|_Z) == rk(key|_Z) for every |Z| <= k;
//   * entropy_oracle: enumerate every (W, K) and compare the distribution of
//     X_Z across all message values, using exact outcome counts.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "secnc/errors.hpp"
#include "secnc/galois.hpp"
#include "secnc/scheme.hpp"
#include "secnc/subsets.hpp"

namespace secnc {

enum class SecurityCondition { kRank, kEntropy, kMds };

inline std::string to_string(SecurityCondition c) {
  switch (c) {
    case SecurityCondition::kRank:
      return "rank";
    case SecurityCondition::kEntropy:
      return "entropy";
    case SecurityCondition::kMds:
      return "mds";
  }
  return {};
}

struct SecurityReport {
  std::string scheme_id;
  SecurityCondition condition = SecurityCondition::kRank;
  bool pass = true;
  std::optional<std::vector<std::size_t>> counterexample;  // failing rows/edges, 0-based
  std::uint64_t subsets_checked = 0;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

namespace detail {

inline void check_parts(const FieldMatrix& message_part, const FieldMatrix& key_part) {
  if (message_part.rows() != key_part.rows()) {
    throw DomainError("message and key parts must have the same number of rows");
  }
  if (message_part.modulus() != key_part.modulus()) throw DomainError("modulus mismatch");
}

// Sweeps every row subset of size 1..min(k, rows) in lexicographic order and
// stops at the first one `secure` rejects.
template <typename Check>
SecurityReport sweep_subsets(std::size_t rows, std::size_t k, SecurityCondition condition,
                             Check&& secure) {
  SecurityReport report;
  report.condition = condition;
  const std::size_t top = std::min(k, rows);
  for (std::size_t size = 1; size <= top && report.pass; ++size) {
    for_each_combination(rows, size, [&](const std::vector<std::size_t>& z) {
      ++report.subsets_checked;
      if (secure(z)) return true;
      report.pass = false;
      report.counterexample = z;
      return false;
    });
  }
  return report;
}

}  // namespace detail

// rk([msg | key]|_Z) == rk(key|_Z) for one row subset Z.
inline bool rank_condition_holds(const FieldMatrix& message_part, const FieldMatrix& key_part,
                                 std::span<const std::size_t> rows) {
  detail::check_parts(message_part, key_part);
  const FieldMatrix key_rows = key_part.select_rows(rows);
  const FieldMatrix both = hstack(message_part.select_rows(rows), key_rows);
  return detail::rank_unchecked(both) == detail::rank_unchecked(key_rows);
}

inline SecurityReport rank_condition(const FieldMatrix& message_part,
                                     const FieldMatrix& key_part, std::size_t k) {
  detail::check_parts(message_part, key_part);
  return detail::sweep_subsets(message_part.rows(), k, SecurityCondition::kRank,
                               [&](const std::vector<std::size_t>& z) {
                                 return rank_condition_holds(message_part, key_part, z);
                               });
}

// Every k-row submatrix of `v` (k columns) has rank k.
inline SecurityReport mds_check(const FieldMatrix& v, std::size_t k) {
  if (v.cols() != k) throw DomainError("MDS check expects exactly k columns");
  if (v.rows() < k) throw DomainError("MDS check needs at least k rows");
  SecurityReport report;
  report.condition = SecurityCondition::kMds;
  if (k == 0) return report;
  for_each_combination(v.rows(), k, [&](const std::vector<std::size_t>& z) {
    ++report.subsets_checked;
    if (detail::rank_unchecked(v.select_rows(z)) == k) return true;
    report.pass = false;
    report.counterexample = z;
    return false;
  });
  return report;
}

// q^(message columns + key columns), the number of (W, K) outcomes.
inline double enumeration_size(const FieldMatrix& message_part, const FieldMatrix& key_part) {
  return std::pow(static_cast<double>(message_part.modulus()),
                  static_cast<double>(message_part.cols() + key_part.cols()));
}

namespace detail {

inline void check_budget(const FieldMatrix& message_part, const FieldMatrix& key_part,
                         std::uint64_t budget) {
  const double need = enumeration_size(message_part, key_part);
  if (need > static_cast<double>(budget)) throw BudgetExceeded(need, budget);
}

// Advances a base-q odometer; false after the last value.
inline bool next_assignment(std::vector<Scalar>& digits, Scalar q) {
  for (auto& d : digits) {
    if (++d < q) return true;
    d = 0;
  }
  return false;
}

}  // namespace detail

// X_Z independent of W, decided by exhaustive enumeration with uniform keys:
// the histogram of X_Z over all K must be identical for every message W.
inline bool entropy_subset_secure(const FieldMatrix& message_part, const FieldMatrix& key_part,
                                  std::span<const std::size_t> rows,
                                  std::uint64_t budget = kDefaultEnumerationBudget) {
  detail::check_parts(message_part, key_part);
  detail::check_budget(message_part, key_part, budget);
  const Scalar q = message_part.modulus();
  const PrimeField f(q);
  const FieldMatrix gm = message_part.select_rows(rows);
  const FieldMatrix gk = key_part.select_rows(rows);
  const std::size_t z = rows.size();

  // Key contribution for every K.
  std::vector<std::vector<Scalar>> key_terms;
  {
    std::vector<Scalar> k_digits(gk.cols(), 0);
    do {
      key_terms.push_back(gk.apply(k_digits));
    } while (detail::next_assignment(k_digits, q));
  }

  // Sorted outcome codes over all K: equal lists <=> equal histograms.
  auto histogram = [&](const std::vector<Scalar>& w) {
    const auto base = gm.apply(w);
    std::vector<std::uint64_t> codes;
    codes.reserve(key_terms.size());
    for (const auto& term : key_terms) {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < z; ++i) code = code * q + f.add(base[i], term[i]);
      codes.push_back(code);
    }
    std::sort(codes.begin(), codes.end());
    return codes;
  };

  std::vector<Scalar> w(gm.cols(), 0);
  const auto reference = histogram(w);
  while (detail::next_assignment(w, q)) {
    if (histogram(w) != reference) return false;
  }
  return true;
}

inline SecurityReport entropy_oracle(const FieldMatrix& message_part,
                                     const FieldMatrix& key_part, std::size_t k,
                                     std::uint64_t budget = kDefaultEnumerationBudget) {
  detail::check_parts(message_part, key_part);
  detail::check_budget(message_part, key_part, budget);
  return detail::sweep_subsets(message_part.rows(), k, SecurityCondition::kEntropy,
                               [&](const std::vector<std::size_t>& z) {
                                 return entropy_subset_secure(message_part, key_part, z, budget);
                               });
}

struct WiretapEdge {
  std::string name;
  std::size_t row;  // index into the observable rows
};

// Observable rows of a scheme and the physical edges that carry each row.
struct EdgeModel {
  std::vector<WiretapEdge> edges;
  FieldMatrix message_rows;
  FieldMatrix key_rows;

  std::size_t distinct_rows() const { return message_rows.rows(); }
};

// In a two-layer network every edge touching relay r carries X_r, so the
// distinct observable rows are the t rows of [M | V].
inline EdgeModel wiretap_edge_model(const WiretapScheme& s) {
  const std::size_t t = s.network.relay_count();
  std::vector<WiretapEdge> edges;
  for (std::size_t r = 0; r < t; ++r) {
    edges.push_back({"S->R" + std::to_string(r + 1), r});
  }
  for (std::size_t i = 0; i < s.network.destination_count(); ++i) {
    for (std::size_t r : s.network.relays_of(i)) {
      edges.push_back({"R" + std::to_string(r + 1) + "->D" + std::to_string(i + 1), r});
    }
  }
  return {std::move(edges), s.message_matrix, s.key_matrix};
}

inline SecurityReport verify_rank(const WiretapScheme& s, std::size_t k) {
  return rank_condition(s.message_matrix, s.key_matrix, k);
}

inline SecurityReport verify_entropy(const WiretapScheme& s, std::size_t k,
                                     std::uint64_t budget = kDefaultEnumerationBudget) {
  return entropy_oracle(s.message_matrix, s.key_matrix, k, budget);
}

}  // namespace secnc
