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


// Lifts a two-destination scheme onto a butterfly network with an extra
// private path to the first destination.

#include <iostream>

#include "secnc/secnc.hpp"

int main() {
  using namespace secnc;
  const std::vector<std::string> names{"S", "X", "A", "B", "C", "E", "D1", "D2"};
  const Subset one = subset_of({1});
  const Subset both = subset_of({1, 2});
  const std::vector<LabeledEdge> edges{
      {0, 1, one},  {1, 6, one},  {0, 2, both}, {0, 3, both}, {2, 6, both}, {3, 7, both},
      {2, 4, both}, {3, 4, both}, {4, 5, both}, {5, 6, both}, {5, 7, both}};
  const SeparableNetwork net(names, 0, {6, 7}, edges, {{one, 1}, {both, 2}});

  const ChildNetwork child = build_child(net);
  const std::size_t k = 1;
  const Scalar q = lift_field_size(child.network.relay_count(), k, edges.size());
  const WiretapScheme scheme = build_scheme(child.network, k, q, {1, 0});
  const LiftedScheme lifted = lift_scheme(net, scheme, 0);

  std::cout << "q=" << q << " rates " << scheme.rates[0] << ',' << scheme.rates[1]
            << " attempts " << lifted.attempts << '\n';
  const auto symbols = lifted_transmit(lifted, {{3}, {4}}, std::vector<Scalar>{9});
  const bool ok = lifted_decode(lifted, 0, symbols) == std::vector<Scalar>{3} &&
                  lifted_decode(lifted, 1, symbols) == std::vector<Scalar>{4} &&
                  lifted.verification.security.pass;
  std::cout << (ok ? "decoded and secure" : "FAILED") << '\n';
  return ok ? 0 : 1;
}
