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


// Builds the scheme at every corner of a small two-layer network and sends
// one message tuple through it.

#include <iostream>
#include <numeric>
#include <vector>

#include "secnc/secnc.hpp"

int main() {
  using namespace secnc;
  const auto net = TwoLayerNetwork::from_one_based(6, {{1, 2, 4}, {3, 4, 5, 6}, {2, 3}});
  const std::size_t k = 1;
  const Scalar q = default_field_size(net.relay_count(), k);

  std::vector<std::size_t> perm{0, 1, 2};
  int status = 0;
  do {
    const WiretapScheme s = build_scheme(net, k, q, perm);
    std::vector<std::vector<Scalar>> w(3);
    for (std::size_t i = 0; i < 3; ++i) {
      w[i].resize(s.rates[i]);
      std::iota(w[i].begin(), w[i].end(), Scalar(i + 1));
    }
    const std::vector<Scalar> key{5};
    const auto x = encode(s, w, key);
    const bool ok = decode(s, x) == w && verify_rank(s, k).pass;
    std::cout << "order";
    for (std::size_t d : perm) std::cout << ' ' << d + 1;
    std::cout << ": rates";
    for (std::size_t r : s.rates) std::cout << ' ' << r;
    std::cout << (ok ? "  ok" : "  FAILED") << '\n';
    if (!ok) status = 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return status;
}
