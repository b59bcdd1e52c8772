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

// JSON forms of network specs, regions, schemes and reports.
//
// Everything is written with nlohmann::ordered_json so key order is fixed and
// serialize -> parse -> serialize is byte-identical. Node, relay and
// destination indices are 1-based in every document.

#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "secnc/errors.hpp"
#include "secnc/galois.hpp"
#include "secnc/lifting.hpp"
#include "secnc/network.hpp"
#include "secnc/rate_region.hpp"
#include "secnc/scheme.hpp"
#include "secnc/security.hpp"
#include "secnc/subsets.hpp"

namespace secnc {

using Json = nlohmann::ordered_json;

inline constexpr int kJsonIndent = 2;

struct NetworkSpec {
  std::variant<TwoLayerNetwork, SeparableNetwork> network;
  std::optional<Scalar> q;
  std::optional<std::size_t> k;
  std::optional<std::uint64_t> seed;

  bool two_layer() const { return std::holds_alternative<TwoLayerNetwork>(network); }
  const TwoLayerNetwork& two_layer_network() const { return std::get<TwoLayerNetwork>(network); }
  const SeparableNetwork& separable_network() const { return std::get<SeparableNetwork>(network); }
};

namespace detail {

inline const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

inline std::string child_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

inline std::uint64_t as_unsigned(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected a non-negative integer");
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  const auto v = j.get<std::int64_t>();
  if (v < 0) throw ParseError(path, "expected a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

inline std::vector<std::size_t> as_index_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected a list of integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(static_cast<std::size_t>(as_unsigned(j[i], index_path(path, i))));
  }
  return out;
}

inline std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

inline Subset as_label(const Json& j, std::size_t m, const std::string& path) {
  const auto list = as_index_list(j, path);
  if (list.empty()) throw ParseError(path, "subset must be nonempty");
  Subset s = 0;
  for (std::size_t v : list) {
    if (v < 1 || v > m) throw ParseError(path, "destination index outside [1.." + std::to_string(m) + "]");
    s |= Subset{1} << (v - 1);
  }
  return s;
}

inline Json label_json(Subset s) {
  Json out = Json::array();
  for (std::size_t i : members(s)) out.push_back(i + 1);
  return out;
}

template <typename Fn>
auto wrap_domain(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    throw ParseError(path, e.what());
  }
}

}  // namespace detail

inline Json matrix_to_json(const FieldMatrix& a) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline FieldMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, Scalar q,
                                    const std::string& path) {
  if (!j.is_array() || j.size() != rows) {
    throw ParseError(path, "expected " + std::to_string(rows) + " rows");
  }
  FieldMatrix a(rows, cols, q);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto rp = detail::index_path(path, r);
    if (!j[r].is_array() || j[r].size() != cols) {
      throw ParseError(rp, "expected " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = detail::as_unsigned(j[r][c], detail::index_path(rp, c));
      if (v >= q) throw ParseError(detail::index_path(rp, c), "entry not reduced mod q");
      a(r, c) = static_cast<Scalar>(v);
    }
  }
  return a;
}

// --- network specs ---------------------------------------------------------

inline Json two_layer_to_json(const TwoLayerNetwork& net) {
  Json conn = Json::array();
  for (const auto& set : net.connections()) {
    Json list = Json::array();
    for (std::size_t r : set) list.push_back(r + 1);
    conn.push_back(std::move(list));
  }
  Json j;
  j["kind"] = "two_layer";
  j["t"] = net.relay_count();
  j["m"] = net.destination_count();
  j["connections"] = std::move(conn);
  return j;
}

inline Json separable_to_json(const SeparableNetwork& net) {
  const auto& names = net.node_names();
  Json j;
  j["kind"] = "separable";
  j["nodes"] = names;
  j["source"] = names[net.source()];
  Json dest = Json::array();
  for (std::size_t d : net.destinations()) dest.push_back(names[d]);
  j["destinations"] = std::move(dest);
  Json edges = Json::array();
  for (const auto& e : net.edges()) {
    Json edge;
    edge["tail"] = names[e.tail];
    edge["head"] = names[e.head];
    edge["label"] = detail::label_json(e.label);
    edges.push_back(std::move(edge));
  }
  j["edges"] = std::move(edges);
  Json declared = Json::array();
  for (const auto& [label, cut] : net.declared()) {
    Json d;
    d["subset"] = detail::label_json(label);
    d["min_cut"] = cut;
    declared.push_back(std::move(d));
  }
  j["declared"] = std::move(declared);
  return j;
}

inline Json spec_to_json(const NetworkSpec& spec) {
  Json j = spec.two_layer() ? two_layer_to_json(spec.two_layer_network())
                            : separable_to_json(spec.separable_network());
  if (spec.q) j["q"] = *spec.q;
  if (spec.k) j["k"] = *spec.k;
  if (spec.seed) j["seed"] = *spec.seed;
  return j;
}

inline TwoLayerNetwork two_layer_from_json(const Json& j) {
  const auto t = detail::as_unsigned(detail::require(j, "t", ""), "t");
  const auto m = detail::as_unsigned(detail::require(j, "m", ""), "m");
  const Json& conn = detail::require(j, "connections", "");
  if (!conn.is_array() || conn.size() != m) {
    throw ParseError("connections", "expected " + std::to_string(m) + " relay lists, one per destination");
  }
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t i = 0; i < conn.size(); ++i) {
    const auto path = detail::index_path("connections", i);
    auto list = detail::as_index_list(conn[i], path);
    for (std::size_t r : list) {
      if (r < 1 || r > t) throw ParseError(path, "relay index outside [1.." + std::to_string(t) + "]");
    }
    sets.push_back(std::move(list));
  }
  return detail::wrap_domain("connections", [&] {
    return TwoLayerNetwork::from_one_based(static_cast<std::size_t>(t), sets);
  });
}

inline SeparableNetwork separable_from_json(const Json& j) {
  const Json& nodes_j = detail::require(j, "nodes", "");
  if (!nodes_j.is_array() || nodes_j.empty()) throw ParseError("nodes", "expected a nonempty list of names");
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < nodes_j.size(); ++i) {
    auto name = detail::as_string(nodes_j[i], detail::index_path("nodes", i));
    if (!index.emplace(name, i).second) throw ParseError(detail::index_path("nodes", i), "duplicate node " + name);
    names.push_back(std::move(name));
  }
  auto lookup = [&](const Json& v, const std::string& path) {
    const auto name = detail::as_string(v, path);
    auto it = index.find(name);
    if (it == index.end()) throw ParseError(path, "unknown node " + name);
    return it->second;
  };
  const std::size_t source = lookup(detail::require(j, "source", ""), "source");
  const Json& dest_j = detail::require(j, "destinations", "");
  if (!dest_j.is_array() || dest_j.empty()) throw ParseError("destinations", "expected a nonempty list");
  std::vector<std::size_t> destinations;
  for (std::size_t i = 0; i < dest_j.size(); ++i) {
    destinations.push_back(lookup(dest_j[i], detail::index_path("destinations", i)));
  }
  const std::size_t m = destinations.size();
  if (m > kMaxDestinations) throw ParseError("destinations", "too many destinations");

  const Json& edges_j = detail::require(j, "edges", "");
  if (!edges_j.is_array()) throw ParseError("edges", "expected a list");
  std::vector<LabeledEdge> edges;
  for (std::size_t e = 0; e < edges_j.size(); ++e) {
    const auto path = detail::index_path("edges", e);
    const Json& ej = edges_j[e];
    edges.push_back({lookup(detail::require(ej, "tail", path), detail::child_path(path, "tail")),
                     lookup(detail::require(ej, "head", path), detail::child_path(path, "head")),
                     detail::as_label(detail::require(ej, "label", path), m,
                                      detail::child_path(path, "label"))});
  }

  const Json& decl_j = detail::require(j, "declared", "");
  if (!decl_j.is_array()) throw ParseError("declared", "expected a list");
  std::map<Subset, std::size_t> declared;
  for (std::size_t d = 0; d < decl_j.size(); ++d) {
    const auto path = detail::index_path("declared", d);
    const Subset label = detail::as_label(detail::require(decl_j[d], "subset", path), m,
                                          detail::child_path(path, "subset"));
    const auto cut = detail::as_unsigned(detail::require(decl_j[d], "min_cut", path),
                                         detail::child_path(path, "min_cut"));
    if (!declared.emplace(label, static_cast<std::size_t>(cut)).second) {
      throw ParseError(path, "subset " + subset_name(label) + " declared twice");
    }
  }
  return detail::wrap_domain("edges", [&] {
    return SeparableNetwork(std::move(names), source, std::move(destinations), std::move(edges),
                            std::move(declared));
  });
}

inline NetworkSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("", "spec must be a JSON object");
  const auto kind = detail::as_string(detail::require(j, "kind", ""), "kind");
  std::optional<Scalar> q;
  std::optional<std::size_t> k;
  std::optional<std::uint64_t> seed;
  if (j.contains("q")) {
    const auto v = detail::as_unsigned(j["q"], "q");
    if (v > kMaxModulus || !is_prime(v)) throw ParseError("q", "must be a prime below 2^31");
    q = static_cast<Scalar>(v);
  }
  if (j.contains("k")) k = static_cast<std::size_t>(detail::as_unsigned(j["k"], "k"));
  if (j.contains("seed")) seed = detail::as_unsigned(j["seed"], "seed");
  if (kind == "two_layer") return {two_layer_from_json(j), q, k, seed};
  if (kind == "separable") return {separable_from_json(j), q, k, seed};
  throw ParseError("kind", "expected \"two_layer\" or \"separable\"");
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
}

inline NetworkSpec parse_spec(const std::string& text) { return spec_from_json(parse_json_text(text)); }

inline std::string dump(const Json& j) { return j.dump(kJsonIndent) + "\n"; }

// FNV-1a over the canonical serialization, as 16 hex digits.
inline std::string digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// --- regions ---------------------------------------------------------------

// Map from decimal bitmask (bit i-1 is destination i) to the bound on that subset.
inline Json region_to_json(const RateRegion& region) {
  Json j = Json::object();
  for (Subset a = 1; a <= region.full(); ++a) j[std::to_string(a)] = region.bound(a);
  return j;
}

inline RateRegion region_from_json(const Json& j) {
  if (!j.is_object() || j.empty()) throw ParseError("region", "expected a nonempty object");
  std::size_t m = 0;
  while ((std::size_t{1} << m) - 1 < j.size()) ++m;
  if ((std::size_t{1} << m) - 1 != j.size() || m > kMaxDestinations) {
    throw ParseError("region", "must list all 2^m - 1 nonempty subsets");
  }
  RateRegion region(m);
  for (Subset a = 1; a <= region.full(); ++a) {
    const auto key = std::to_string(a);
    if (!j.contains(key)) throw ParseError("region." + key, "missing subset");
    if (!j[key].is_number_integer()) throw ParseError("region." + key, "expected an integer");
    region.set_bound(a, j[key].get<long long>());
  }
  return region;
}

// --- schemes ---------------------------------------------------------------

inline Json scheme_to_json(const WiretapScheme& s) {
  Json j;
  j["kind"] = "wiretap_scheme";
  j["network"] = two_layer_to_json(s.network);
  j["q"] = s.q;
  j["k"] = s.k;
  j["rates"] = s.rates;
  if (s.permutation.empty()) {
    j["permutation"] = nullptr;
  } else {
    Json p = Json::array();
    for (std::size_t i : s.permutation) p.push_back(i + 1);
    j["permutation"] = std::move(p);
  }
  j["key_matrix"] = matrix_to_json(s.key_matrix);
  j["message_matrix"] = matrix_to_json(s.message_matrix);
  j["decoder"] = matrix_to_json(s.decoder);
  return j;
}

// Reads a scheme document without checking that it is correct; the verify
// command is what judges it.
inline WiretapScheme scheme_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("", "scheme must be a JSON object");
  const auto kind = detail::as_string(detail::require(j, "kind", ""), "kind");
  if (kind != "wiretap_scheme") throw ParseError("kind", "expected \"wiretap_scheme\"");
  TwoLayerNetwork net = [&] {
    try {
      return two_layer_from_json(detail::require(j, "network", ""));
    } catch (const ParseError& e) {
      throw ParseError(detail::child_path("network", e.field()), e.what());
    }
  }();
  const auto qv = detail::as_unsigned(detail::require(j, "q", ""), "q");
  if (qv > kMaxModulus || !is_prime(qv)) throw ParseError("q", "must be a prime below 2^31");
  const auto q = static_cast<Scalar>(qv);
  const auto k = static_cast<std::size_t>(detail::as_unsigned(detail::require(j, "k", ""), "k"));
  auto rates = detail::as_index_list(detail::require(j, "rates", ""), "rates");
  if (rates.size() != net.destination_count()) throw ParseError("rates", "expected one rate per destination");
  std::vector<std::size_t> perm;
  const Json& pj = detail::require(j, "permutation", "");
  if (!pj.is_null()) {
    perm = detail::as_index_list(pj, "permutation");
    perm = detail::wrap_domain("permutation", [&] {
      return permutation_from_one_based(perm, net.destination_count());
    });
  }
  std::size_t total = 0;
  for (std::size_t r : rates) total += r;
  const std::size_t t = net.relay_count();
  FieldMatrix v = matrix_from_json(detail::require(j, "key_matrix", ""), t, k, q, "key_matrix");
  FieldMatrix m = matrix_from_json(detail::require(j, "message_matrix", ""), t, total, q, "message_matrix");
  FieldMatrix d = matrix_from_json(detail::require(j, "decoder", ""), total, t, q, "decoder");
  return {std::move(net), q, k, std::move(v), std::move(m), std::move(d), std::move(rates), std::move(perm)};
}

// --- security reports ------------------------------------------------------

inline Json report_to_json(const SecurityReport& r) {
  Json j;
  j["scheme_id"] = r.scheme_id;
  j["condition"] = to_string(r.condition);
  j["pass"] = r.pass;
  if (r.counterexample) {
    Json c = Json::array();
    for (std::size_t e : *r.counterexample) c.push_back(e + 1);
    j["counterexample"] = std::move(c);
  } else {
    j["counterexample"] = nullptr;
  }
  j["subsets_checked"] = r.subsets_checked;
  return j;
}

inline SecurityReport report_from_json(const Json& j) {
  SecurityReport r;
  r.scheme_id = detail::as_string(detail::require(j, "scheme_id", ""), "scheme_id");
  const auto cond = detail::as_string(detail::require(j, "condition", ""), "condition");
  if (cond == "rank") {
    r.condition = SecurityCondition::kRank;
  } else if (cond == "entropy") {
    r.condition = SecurityCondition::kEntropy;
  } else if (cond == "mds") {
    r.condition = SecurityCondition::kMds;
  } else {
    throw ParseError("condition", "unknown condition " + cond);
  }
  const Json& pass = detail::require(j, "pass", "");
  if (!pass.is_boolean()) throw ParseError("pass", "expected a boolean");
  r.pass = pass.get<bool>();
  const Json& ce = detail::require(j, "counterexample", "");
  if (!ce.is_null()) {
    std::vector<std::size_t> rows;
    for (std::size_t e : detail::as_index_list(ce, "counterexample")) {
      if (e == 0) throw ParseError("counterexample", "indices are 1-based");
      rows.push_back(e - 1);
    }
    r.counterexample = std::move(rows);
  }
  r.subsets_checked = detail::as_unsigned(detail::require(j, "subsets_checked", ""), "subsets_checked");
  return r;
}

// --- lifted schemes --------------------------------------------------------

inline Json lifted_to_json(const LiftedScheme& s) {
  const auto& names = s.parent.node_names();
  Json j;
  j["kind"] = "lifted_scheme";
  j["parent"] = separable_to_json(s.parent);
  j["child_scheme"] = scheme_to_json(s.child_scheme);
  Json relay_labels = Json::array();
  for (Subset label : s.child.relay_labels) relay_labels.push_back(detail::label_json(label));
  j["child_relay_labels"] = std::move(relay_labels);

  std::map<std::size_t, const MulticastCode*> code_of_edge;
  for (const auto& code : s.codes) {
    for (std::size_t e : code.edges) code_of_edge[e] = &code;
  }
  Json edges = Json::array();
  for (std::size_t e = 0; e < s.parent.edges().size(); ++e) {
    const auto& edge = s.parent.edges()[e];
    Json ej;
    ej["edge"] = e + 1;
    ej["tail"] = names[edge.tail];
    ej["head"] = names[edge.head];
    ej["label"] = detail::label_json(edge.label);
    auto it = code_of_edge.find(e);
    if (it != code_of_edge.end()) {
      const auto& code = *it->second;
      Json inputs = Json::array();
      if (auto in = code.inputs.find(e); in != code.inputs.end()) {
        for (std::size_t f : in->second) inputs.push_back(f + 1);
      }
      ej["inputs"] = std::move(inputs);
      ej["local"] = code.local.at(e);
    } else {
      ej["inputs"] = Json::array();
      ej["local"] = Json::array();
    }
    Json g = Json::array();
    for (std::size_t c = 0; c < s.edge_coefficients.cols(); ++c) g.push_back(s.edge_coefficients(e, c));
    ej["coefficients"] = std::move(g);
    edges.push_back(std::move(ej));
  }
  j["edges"] = std::move(edges);
  j["global_rows"] = matrix_to_json(s.global_rows);
  Json receivers = Json::array();
  for (const auto& rx : s.receivers) {
    Json r;
    r["destination"] = rx.destination + 1;
    Json e = Json::array();
    for (std::size_t x : rx.edges) e.push_back(x + 1);
    r["edges"] = std::move(e);
    r["matrix"] = matrix_to_json(rx.matrix);
    receivers.push_back(std::move(r));
  }
  j["receivers"] = std::move(receivers);
  j["seed"] = s.seed;
  Json v;
  v["attempts"] = s.attempts;
  v["key_matrix_redrawn"] = s.key_matrix_redrawn;
  v["decodes"] = s.verification.decodes;
  v["rates_preserved"] = s.verification.rates_preserved;
  v["security"] = report_to_json(s.verification.security);
  v["mds"] = report_to_json(s.verification.mds);
  j["verification"] = std::move(v);
  return j;
}

}  // namespace secnc
