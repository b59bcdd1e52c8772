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


// Hand-built separable networks shared by the lifting tests and the
// acceptance suite.

#pragma once

#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "secnc/secnc.hpp"

namespace fixtures {

using secnc::SeparableNetwork;
using secnc::Subset;

// Edges as "TAIL>HEAD:1,2" (1-based label); nodes are collected in order of
// first appearance, S is the source and D1..Dm the destinations.
inline SeparableNetwork build(std::size_t m, const std::vector<std::string>& edges,
                              const std::map<std::vector<std::size_t>, std::size_t>& declared) {
  std::vector<std::string> names{"S"};
  for (std::size_t i = 1; i <= m; ++i) names.push_back("D" + std::to_string(i));
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = i;
  auto node = [&](const std::string& n) {
    auto [it, fresh] = index.emplace(n, names.size());
    if (fresh) names.push_back(n);
    return it->second;
  };
  std::vector<secnc::LabeledEdge> out;
  for (const auto& spec : edges) {
    const auto gt = spec.find('>');
    const auto colon = spec.find(':');
    const std::size_t tail = node(spec.substr(0, gt));
    const std::size_t head = node(spec.substr(gt + 1, colon - gt - 1));
    std::vector<std::size_t> label;
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) label.push_back(std::stoul(item));
    out.push_back({tail, head, secnc::subset_of(label)});
  }
  std::map<Subset, std::size_t> decl;
  for (const auto& [label, cut] : declared) decl[secnc::subset_of(label)] = cut;
  std::vector<std::size_t> destinations;
  for (std::size_t i = 1; i <= m; ++i) destinations.push_back(i);
  return SeparableNetwork(std::move(names), 0, std::move(destinations), std::move(out), std::move(decl));
}

struct Fixture {
  std::string name;
  SeparableNetwork network;
  std::vector<std::size_t> keys;  // wiretap budgets to lift at
};

inline std::vector<Fixture> lifting_fixtures() {
  using secnc::TwoLayerNetwork;
  std::vector<Fixture> out;
  out.push_back({"m2_three_subgraphs",
                 build(2, {"S>A:1", "A>D1:1", "S>B:2", "B>D2:2", "S>C:1,2", "C>D1:1,2", "C>D2:1,2"},
                       {{{1}, 1}, {{2}, 1}, {{1, 2}, 1}}),
                 {1, 2}});
  out.push_back({"butterfly_plus_private",
                 build(2, {"S>X:1", "X>D1:1", "S>A:1,2", "S>B:1,2", "A>D1:1,2", "B>D2:1,2", "A>C:1,2",
                           "B>C:1,2", "C>E:1,2", "E>D1:1,2", "E>D2:1,2"},
                       {{{1}, 1}, {{1, 2}, 2}}),
                 {1, 2}});
  out.push_back({"butterfly",
                 build(2, {"S>A:1,2", "S>B:1,2", "A>D1:1,2", "B>D2:1,2", "A>C:1,2", "B>C:1,2",
                           "C>E:1,2", "E>D1:1,2", "E>D2:1,2"},
                       {{{1, 2}, 2}}),
                 {1}});
  out.push_back({"m3_stars_and_shared_path",
                 build(3, {"S>P1:1", "P1>D1:1", "S>P2:2", "P2>D2:2", "S>P3:3", "P3>D3:3", "S>U:1,2,3",
                           "U>V:1,2,3", "V>D1:1,2,3", "V>D2:1,2,3", "V>D3:1,2,3"},
                       {{{1}, 1}, {{2}, 1}, {{3}, 1}, {{1, 2, 3}, 1}}),
                 {1, 2}});
  out.push_back({"two_layer_t6_m3",
                 secnc::to_separable(TwoLayerNetwork::from_one_based(6, {{1, 2, 4}, {3, 4, 5, 6}, {2, 3}})),
                 {1, 2}});
  out.push_back({"m3_butterfly_pair_parallel_third",
                 build(3, {"S>A:1,2", "S>B:1,2", "A>D1:1,2", "B>D2:1,2", "A>C:1,2", "B>C:1,2", "C>E:1,2",
                           "E>D1:1,2", "E>D2:1,2", "S>Y1:3", "Y1>D3:3", "S>Y2:3", "Y2>D3:3", "S>Z:1,3",
                           "Z>D1:1,3", "Z>D3:1,3"},
                       {{{1, 2}, 2}, {{3}, 2}, {{1, 3}, 1}}),
                 {1, 2}});
  out.push_back({"m2_chain_and_direct_edge",
                 build(2, {"S>A:1,2", "A>B:1,2", "B>D1:1,2", "B>D2:1,2", "S>C:1", "C>D1:1", "S>D1:1"},
                       {{{1, 2}, 1}, {{1}, 2}}),
                 {1}});
  out.push_back({"m2_two_trees",
                 build(2, {"S>A:1,2", "S>B:1,2", "A>C:1,2", "C>D1:1,2", "C>D2:1,2", "B>F:1,2", "F>D1:1,2",
                           "F>D2:1,2", "S>E:2", "E>G:2", "G>D2:2"},
                       {{{1, 2}, 2}, {{2}, 1}}),
                 {1, 2}});
  out.push_back({"m3_butterfly_23",
                 build(3, {"S>A:2,3", "S>B:2,3", "A>D2:2,3", "B>D3:2,3", "A>C:2,3", "B>C:2,3", "C>E:2,3",
                           "E>D2:2,3", "E>D3:2,3", "S>P:1", "P>D1:1", "S>Q:1", "Q>D1:1", "S>H:1,2,3",
                           "H>D1:1,2,3", "H>D2:1,2,3", "H>D3:1,2,3"},
                       {{{2, 3}, 2}, {{1}, 2}, {{1, 2, 3}, 1}}),
                 {1, 2}});
  out.push_back({"m2_parallel_private_and_shared",
                 build(2, {"S>A1:1", "A1>D1:1", "S>A2:1", "A2>D1:1", "S>B1:2", "B1>D2:2", "S>B2:2",
                           "B2>D2:2", "S>R:1,2", "R>D1:1,2", "R>D2:1,2"},
                       {{{1}, 2}, {{2}, 2}, {{1, 2}, 1}}),
                 {1, 2}});
  out.push_back({"two_layer_t5_m3",
                 secnc::to_separable(TwoLayerNetwork::from_one_based(5, {{1, 2}, {2, 3, 4}, {4, 5}})),
                 {1, 2}});
  return out;
}

}  // namespace fixtures
