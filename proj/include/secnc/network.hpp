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

// Network models: two-layer networks (source -> t relays -> m destinations)
// and labeled unit-capacity DAGs whose edge partition makes them separable.
//
// Relays, destinations and nodes are 0-based internally; text formats and
// printed subsets are 1-based.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "secnc/errors.hpp"
#include "secnc/subsets.hpp"

namespace secnc {

class TwoLayerNetwork {
 public:
  // `connections[i]` lists the (0-based) relays destination i is wired to.
  TwoLayerNetwork(std::size_t relays, std::vector<std::vector<std::size_t>> connections)
      : relays_(relays), connections_(std::move(connections)) {
    if (relays_ == 0) throw DomainError("two-layer network needs at least one relay");
    if (connections_.empty()) throw DomainError("two-layer network needs a destination");
    if (connections_.size() > kMaxDestinations) throw DomainError("too many destinations");
    for (std::size_t i = 0; i < connections_.size(); ++i) {
      auto& set = connections_[i];
      std::sort(set.begin(), set.end());
      if (set.empty()) {
        throw DomainError("destination " + std::to_string(i + 1) + " has no relays");
      }
      if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
        throw DomainError("destination " + std::to_string(i + 1) + " lists a relay twice");
      }
      if (set.back() >= relays_) {
        throw DomainError("destination " + std::to_string(i + 1) +
                          " references a relay outside [t]");
      }
    }
  }

  static TwoLayerNetwork from_one_based(
      std::size_t relays, const std::vector<std::vector<std::size_t>>& connections) {
    std::vector<std::vector<std::size_t>> zero(connections.size());
    for (std::size_t i = 0; i < connections.size(); ++i) {
      for (std::size_t r : connections[i]) {
        if (r == 0) throw DomainError("relay indices are 1-based");
        zero[i].push_back(r - 1);
      }
    }
    return TwoLayerNetwork(relays, std::move(zero));
  }

  std::size_t relay_count() const { return relays_; }
  std::size_t destination_count() const { return connections_.size(); }
  const std::vector<std::size_t>& relays_of(std::size_t i) const {
    return connections_.at(i);
  }
  const std::vector<std::vector<std::size_t>>& connections() const {
    return connections_;
  }

  bool connected(std::size_t destination, std::size_t relay) const {
    const auto& s = connections_.at(destination);
    return std::binary_search(s.begin(), s.end(), relay);
  }

  // Relays reached by at least one destination in `a`, ascending.
  std::vector<std::size_t> relay_union(Subset a) const {
    check_subset(a);
    std::vector<bool> hit(relays_, false);
    for (std::size_t i : members(a)) {
      for (std::size_t r : connections_[i]) hit[r] = true;
    }
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < relays_; ++r) {
      if (hit[r]) out.push_back(r);
    }
    return out;
  }

  // |M_i ∩ M_j|.
  std::size_t pair_overlap(std::size_t i, std::size_t j) const {
    return overlap(i, Subset{1} << j);
  }

  // |M_i ∩ (∪_{j in a} M_j)|.
  std::size_t overlap(std::size_t i, Subset a) const {
    const auto others = relay_union(a);
    std::size_t n = 0;
    for (std::size_t r : connections_.at(i)) {
      if (std::binary_search(others.begin(), others.end(), r)) ++n;
    }
    return n;
  }

  void check_subset(Subset a) const {
    if (!is_subset_of(a, full_set(destination_count()))) {
      throw DomainError("destination subset " + subset_name(a) + " not within [m]");
    }
  }

  friend bool operator==(const TwoLayerNetwork&, const TwoLayerNetwork&) = default;

 private:
  std::size_t relays_;
  std::vector<std::vector<std::size_t>> connections_;
};

// M_A = |∪_{i in A} M_i|. The empty set maps to the wiretap budget when one is
// supplied and is rejected otherwise.
inline std::size_t min_cut_two_layer(const TwoLayerNetwork& net, Subset a,
                                     std::optional<std::size_t> wiretap_budget = {}) {
  net.check_subset(a);
  if (a == 0) {
    if (wiretap_budget) return *wiretap_budget;
    throw DomainError("min-cut of the empty destination set");
  }
  return net.relay_union(a).size();
}

// Components of the overlap graph on `a`: i ~ j iff M_i and M_j share a relay.
inline std::size_t connected_components(const TwoLayerNetwork& net, Subset a) {
  net.check_subset(a);
  if (a == 0) throw DomainError("connected_components of the empty set");
  const auto nodes = members(a);
  std::vector<std::size_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = nodes.size();
  for (std::size_t x = 0; x < nodes.size(); ++x) {
    for (std::size_t y = x + 1; y < nodes.size(); ++y) {
      if (net.pair_overlap(nodes[x], nodes[y]) == 0) continue;
      const std::size_t rx = find(x), ry = find(y);
      if (rx != ry) {
        parent[rx] = ry;
        --components;
      }
    }
  }
  return components;
}

// Unit-capacity max flow from `source` to a super sink fed by every node in
// `sinks` through unbounded arcs. BFS augmenting paths with adjacency lists
// built in edge order, so the result and the search are deterministic.
inline std::size_t max_flow_unit(std::size_t node_count,
                                 std::span<const std::pair<std::size_t, std::size_t>> edges,
                                 std::size_t source, std::span<const std::size_t> sinks) {
  struct Arc {
    std::size_t to;
    std::size_t cap;
    std::size_t rev;
  };
  const std::size_t sink = node_count;
  std::vector<std::vector<Arc>> g(node_count + 1);
  auto add = [&](std::size_t u, std::size_t v, std::size_t cap) {
    g[u].push_back({v, cap, g[v].size()});
    g[v].push_back({u, 0, g[u].size() - 1});
  };
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) throw DomainError("edge endpoint out of range");
    add(u, v, 1);
  }
  const std::size_t unbounded = edges.size() + 1;
  for (std::size_t d : sinks) add(d, sink, unbounded);

  std::size_t flow = 0;
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> via(node_count + 1, {SIZE_MAX, 0});
    std::deque<std::size_t> frontier{source};
    via[source] = {source, 0};
    while (!frontier.empty() && via[sink].first == SIZE_MAX) {
      const std::size_t u = frontier.front();
      frontier.pop_front();
      for (std::size_t a = 0; a < g[u].size(); ++a) {
        const Arc& arc = g[u][a];
        if (arc.cap == 0 || via[arc.to].first != SIZE_MAX) continue;
        via[arc.to] = {u, a};
        frontier.push_back(arc.to);
      }
    }
    if (via[sink].first == SIZE_MAX) break;
    std::size_t push = SIZE_MAX;
    for (std::size_t v = sink; v != source; v = via[v].first) {
      push = std::min(push, g[via[v].first][via[v].second].cap);
    }
    for (std::size_t v = sink; v != source; v = via[v].first) {
      Arc& arc = g[via[v].first][via[v].second];
      arc.cap -= push;
      g[v][arc.rev].cap += push;
    }
    flow += push;
  }
  return flow;
}

struct LabeledEdge {
  std::size_t tail;
  std::size_t head;
  Subset label;  // nonempty J ⊆ [m]

  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

// A unit-capacity DAG with a source, m destinations, an edge partition into
// labeled subgraphs G'_J and the declared per-label min-cuts M'_J.
class SeparableNetwork {
 public:
  SeparableNetwork(std::vector<std::string> node_names, std::size_t source,
                   std::vector<std::size_t> destinations, std::vector<LabeledEdge> edges,
                   std::map<Subset, std::size_t> declared)
      : names_(std::move(node_names)),
        source_(source),
        destinations_(std::move(destinations)),
        edges_(std::move(edges)),
        declared_(std::move(declared)) {
    const std::size_t n = names_.size();
    if (source_ >= n) throw DomainError("source node out of range");
    if (destinations_.empty()) throw DomainError("network needs a destination");
    if (destinations_.size() > kMaxDestinations) throw DomainError("too many destinations");
    std::vector<bool> used(n, false);
    used[source_] = true;
    for (std::size_t d : destinations_) {
      if (d >= n) throw DomainError("destination node out of range");
      if (used[d]) throw DomainError("destination nodes must be distinct from each other and the source");
      used[d] = true;
    }
    const Subset all = full_set(destinations_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& edge = edges_[e];
      if (edge.tail >= n || edge.head >= n) throw DomainError("edge endpoint out of range");
      if (edge.tail == edge.head) throw DomainError("self-loop on edge " + std::to_string(e));
      if (edge.label == 0 || !is_subset_of(edge.label, all)) {
        throw DomainError("edge " + std::to_string(e) + " has label outside the nonempty subsets of [m]");
      }
    }
    for (const auto& [label, cut] : declared_) {
      if (label == 0 || !is_subset_of(label, all)) {
        throw DomainError("declared min-cut for invalid label " + subset_name(label));
      }
    }
    order_ = compute_topological_order();
    if (order_.size() != n) throw DomainError("network graph has a cycle");
  }

  std::size_t node_count() const { return names_.size(); }
  std::size_t destination_count() const { return destinations_.size(); }
  std::size_t source() const { return source_; }
  std::size_t destination(std::size_t i) const { return destinations_.at(i); }
  const std::vector<std::size_t>& destinations() const { return destinations_; }
  const std::vector<LabeledEdge>& edges() const { return edges_; }
  const std::vector<std::string>& node_names() const { return names_; }
  const std::map<Subset, std::size_t>& declared() const { return declared_; }
  const std::vector<std::size_t>& topological_order() const { return order_; }

  std::size_t declared_min_cut(Subset label) const {
    auto it = declared_.find(label);
    return it == declared_.end() ? 0 : it->second;
  }

  // Labels that carry edges or a nonzero declaration, ascending.
  std::vector<Subset> labels() const {
    std::vector<Subset> out;
    for (const auto& e : edges_) out.push_back(e.label);
    for (const auto& [label, cut] : declared_) {
      if (cut > 0) out.push_back(label);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<std::size_t> edges_with_label(Subset label) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (edges_[e].label == label) out.push_back(e);
    }
    return out;
  }

  std::vector<std::size_t> incoming(std::size_t node) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (edges_[e].head == node) out.push_back(e);
    }
    return out;
  }

  friend bool operator==(const SeparableNetwork& a, const SeparableNetwork& b) {
    return a.names_ == b.names_ && a.source_ == b.source_ &&
           a.destinations_ == b.destinations_ && a.edges_ == b.edges_ &&
           a.declared_ == b.declared_;
  }

 private:
  std::vector<std::size_t> compute_topological_order() const {
    const std::size_t n = names_.size();
    std::vector<std::size_t> indeg(n, 0);
    std::vector<std::vector<std::size_t>> out(n);
    for (const auto& e : edges_) {
      ++indeg[e.head];
      out[e.tail].push_back(e.head);
    }
    std::deque<std::size_t> ready;
    for (std::size_t v = 0; v < n; ++v) {
      if (indeg[v] == 0) ready.push_back(v);
    }
    std::vector<std::size_t> order;
    while (!ready.empty()) {
      const std::size_t v = ready.front();
      ready.pop_front();
      order.push_back(v);
      for (std::size_t w : out[v]) {
        if (--indeg[w] == 0) ready.push_back(w);
      }
    }
    return order;
  }

  std::vector<std::string> names_;
  std::size_t source_;
  std::vector<std::size_t> destinations_;
  std::vector<LabeledEdge> edges_;
  std::map<Subset, std::size_t> declared_;
  std::vector<std::size_t> order_;
};

namespace detail {

inline std::size_t min_cut_over(const SeparableNetwork& net,
                                std::span<const std::size_t> edge_ids, Subset a) {
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  arcs.reserve(edge_ids.size());
  for (std::size_t e : edge_ids) arcs.emplace_back(net.edges()[e].tail, net.edges()[e].head);
  std::vector<std::size_t> sinks;
  for (std::size_t i : members(a)) sinks.push_back(net.destination(i));
  return max_flow_unit(net.node_count(), arcs, net.source(), sinks);
}

inline void check_destination_subset(const SeparableNetwork& net, Subset a) {
  if (a == 0) throw DomainError("min-cut of the empty destination set");
  if (!is_subset_of(a, full_set(net.destination_count()))) {
    throw DomainError("destination subset " + subset_name(a) + " not within [m]");
  }
}

}  // namespace detail

// Max-flow value from the source to the destinations in `a`.
inline std::size_t min_cut_dag(const SeparableNetwork& net, Subset a) {
  detail::check_destination_subset(net, a);
  std::vector<std::size_t> all(net.edges().size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return detail::min_cut_over(net, all, a);
}

// Same, restricted to the edges labeled `label`.
inline std::size_t subgraph_min_cut(const SeparableNetwork& net, Subset label, Subset a) {
  detail::check_destination_subset(net, a);
  const auto ids = net.edges_with_label(label);
  return detail::min_cut_over(net, ids, a);
}

// M_A for every A ⊆ [m]; index 0 holds 0.
struct CutProfile {
  std::size_t destinations = 0;
  std::vector<std::size_t> values;

  std::size_t at(Subset a) const { return values.at(a); }

  bool monotone() const {
    for (Subset a = 1; a < values.size(); ++a) {
      for (std::size_t i = 0; i < destinations; ++i) {
        if (values[a | (Subset{1} << i)] < values[a]) return false;
      }
    }
    return true;
  }

  friend bool operator==(const CutProfile&, const CutProfile&) = default;
};

inline CutProfile cut_profile(const TwoLayerNetwork& net) {
  const std::size_t m = net.destination_count();
  CutProfile p{m, std::vector<std::size_t>(std::size_t{1} << m, 0)};
  for (Subset a = 1; a <= full_set(m); ++a) p.values[a] = min_cut_two_layer(net, a);
  return p;
}

inline CutProfile cut_profile(const SeparableNetwork& net) {
  const std::size_t m = net.destination_count();
  CutProfile p{m, std::vector<std::size_t>(std::size_t{1} << m, 0)};
  for (Subset a = 1; a <= full_set(m); ++a) p.values[a] = min_cut_dag(net, a);
  return p;
}

struct SeparabilityViolation {
  enum class Kind {
    kSubgraphCut,   // min-cut of G'_J to a nonempty B ⊆ J differs from M'_J
    kSubgraphLeak,  // G'_J reaches destinations outside J
    kCutSum,        // M_A differs from the sum of M'_J over J meeting A
  };
  Kind kind;
  Subset label;   // J (0 for kCutSum)
  Subset subset;  // the destination set the cut was measured to
  std::size_t expected;
  std::size_t actual;

  std::string describe() const {
    switch (kind) {
      case Kind::kSubgraphCut:
        return "subgraph " + subset_name(label) + ": min-cut to " + subset_name(subset) +
               " is " + std::to_string(actual) + ", declared " + std::to_string(expected);
      case Kind::kSubgraphLeak:
        return "subgraph " + subset_name(label) + ": min-cut to destinations " +
               subset_name(subset) + " outside the label is " + std::to_string(actual) +
               ", must be 0";
      case Kind::kCutSum:
        return "min-cut to " + subset_name(subset) + " is " + std::to_string(actual) +
               " but the subgraph decomposition gives " + std::to_string(expected);
    }
    return {};
  }
};

struct SeparabilityReport {
  std::vector<SeparabilityViolation> violations;

  bool separable() const { return violations.empty(); }

  std::string describe() const {
    std::string out;
    for (const auto& v : violations) out += v.describe() + "\n";
    return out;
  }
};

// Checks the declared decomposition: each G'_J has min-cut M'_J to every
// nonempty subset of J and none to the destinations outside J, and the whole
// graph satisfies M_A = Σ_{J ∩ A ≠ ∅} M'_J for every nonempty A.
inline SeparabilityReport verify_separable(const SeparableNetwork& net) {
  using Kind = SeparabilityViolation::Kind;
  SeparabilityReport report;
  const std::size_t m = net.destination_count();
  const Subset all = full_set(m);
  for (Subset label = 1; label <= all; ++label) {
    const std::size_t declared = net.declared_min_cut(label);
    for (Subset b = label; b != 0; b = (b - 1) & label) {
      const std::size_t cut = subgraph_min_cut(net, label, b);
      if (cut != declared) report.violations.push_back({Kind::kSubgraphCut, label, b, declared, cut});
    }
    const Subset outside = all & ~label;
    if (outside != 0) {
      const std::size_t leak = subgraph_min_cut(net, label, outside);
      if (leak != 0) report.violations.push_back({Kind::kSubgraphLeak, label, outside, 0, leak});
    }
  }
  for (Subset a = 1; a <= all; ++a) {
    std::size_t expected = 0;
    for (Subset label = 1; label <= all; ++label) {
      if (label & a) expected += net.declared_min_cut(label);
    }
    const std::size_t actual = min_cut_dag(net, a);
    if (actual != expected) report.violations.push_back({Kind::kCutSum, 0, a, expected, actual});
  }
  return report;
}

// The two-layer network with M'_J relays per label J, each wired to every
// destination in J. Relays are numbered label by label in ascending bitmask
// order.
struct ChildNetwork {
  TwoLayerNetwork network;
  std::vector<Subset> relay_labels;                       // label of each child relay
  std::map<Subset, std::vector<std::size_t>> relays_by_label;
};

inline ChildNetwork build_child(const SeparableNetwork& parent) {
  const auto report = verify_separable(parent);
  if (!report.separable()) {
    throw NotSeparable("network is not separable under the declared partition:\n" +
                       report.describe());
  }
  const std::size_t m = parent.destination_count();
  std::vector<Subset> relay_labels;
  std::map<Subset, std::vector<std::size_t>> by_label;
  std::vector<std::vector<std::size_t>> connections(m);
  for (Subset label = 1; label <= full_set(m); ++label) {
    for (std::size_t c = 0; c < parent.declared_min_cut(label); ++c) {
      const std::size_t relay = relay_labels.size();
      relay_labels.push_back(label);
      by_label[label].push_back(relay);
      for (std::size_t i : members(label)) connections[i].push_back(relay);
    }
  }
  if (relay_labels.empty()) throw DomainError("network carries no flow to any destination");
  return {TwoLayerNetwork(relay_labels.size(), std::move(connections)),
          std::move(relay_labels), std::move(by_label)};
}

// Re-encodes a two-layer network as a labeled DAG: edges touching relay r get
// label {i : r ∈ M_i}. Relays wired to no destination are dropped.
inline SeparableNetwork to_separable(const TwoLayerNetwork& net) {
  const std::size_t t = net.relay_count();
  const std::size_t m = net.destination_count();
  std::vector<std::string> names{"S"};
  for (std::size_t r = 0; r < t; ++r) names.push_back("R" + std::to_string(r + 1));
  std::vector<std::size_t> destinations;
  for (std::size_t i = 0; i < m; ++i) {
    destinations.push_back(names.size());
    names.push_back("D" + std::to_string(i + 1));
  }
  std::vector<LabeledEdge> edges;
  std::map<Subset, std::size_t> declared;
  for (std::size_t r = 0; r < t; ++r) {
    Subset label = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (net.connected(i, r)) label |= Subset{1} << i;
    }
    if (label == 0) continue;
    ++declared[label];
    edges.push_back({0, 1 + r, label});
    for (std::size_t i : members(label)) edges.push_back({1 + r, destinations[i], label});
  }
  return SeparableNetwork(std::move(names), 0, std::move(destinations), std::move(edges),
                          std::move(declared));
}

}  // namespace secnc
