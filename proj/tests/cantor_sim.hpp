// Copyright 2026 The madmat Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MADMAT_TESTS_CANTOR_SIM_HPP_
#define MADMAT_TESTS_CANTOR_SIM_HPP_

// Test-only explicit simulation of a 1-dimensional removal scheme.  Intervals
// are materialized as tree nodes; at step k every alive node spawns R_k
// children and an adversary removes, per alive generation-h_k ancestor, up to
// ⌊r_k⌋ of the new children descending from it, chosen at random.  This is an
// independent oracle for the survival analysis: whatever the adversary does
// within the caps, the counting inequality
//
//   #J_{k+1} ≥ R_k·#J_k − r_k·#J_{h_k}
//
// must hold at every step, and when every t_k is positive the final
// generation must be non-empty with #J_k at least the prefix product of the
// t-sequence.

#include <algorithm>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "madmat/cantor.hpp"
#include "madmat/rational.hpp"

namespace madmat_test {

struct RemovalSimulation {
  std::vector<long long> j_counts;  // #J_0 .. #J_{K+1}
  bool cantor2_ok = true;           // counting inequality at every step
};

// Runs steps 0..K of `scheme` (which must have l = 1) with adversarial
// random removals; `max_removals` removes the full cap whenever possible.
inline RemovalSimulation simulate_adversarial_removals(
    const madmat::CantorScheme& scheme, int K, std::mt19937_64& rng,
    bool max_removals) {
  using madmat::Rational;

  // parents[g][i] = index (into generation g−1) of the parent of the i-th
  // alive node of generation g.
  std::vector<std::vector<int>> parents;
  parents.push_back({-1});

  RemovalSimulation sim;
  sim.j_counts.push_back(1);

  for (int k = 0; k <= K; ++k) {
    const long long fanout = scheme.R[static_cast<std::size_t>(k)];
    const int h = static_cast<int>(scheme.h[static_cast<std::size_t>(k)]);
    const Rational& cap = scheme.r[static_cast<std::size_t>(k)];
    const std::vector<int>& alive = parents[static_cast<std::size_t>(k)];

    const auto ancestor_of = [&](int node) {
      for (int g = k; g > h; --g) {
        node = parents[static_cast<std::size_t>(g)][
            static_cast<std::size_t>(node)];
      }
      return node;
    };

    // New children grouped by their generation-h ancestor.
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < static_cast<int>(alive.size()); ++i) {
      const int anc = ancestor_of(i);
      for (long long slot = 0; slot < fanout; ++slot) {
        groups[anc].push_back(i);
      }
    }

    const long long int_cap =
        madmat::to_long_long_checked(madmat::rational_floor(cap), "cap");
    std::vector<int> next;
    for (auto& [anc, kids] : groups) {
      (void)anc;
      long long removals =
          std::min<long long>(int_cap, static_cast<long long>(kids.size()));
      if (!max_removals && removals > 0) {
        removals = static_cast<long long>(rng() %
                                          static_cast<unsigned long long>(
                                              removals + 1));
      }
      for (std::size_t i = kids.size(); i > 1; --i) {
        std::swap(kids[i - 1], kids[rng() % i]);
      }
      for (std::size_t i = static_cast<std::size_t>(removals);
           i < kids.size(); ++i) {
        next.push_back(kids[i]);
      }
    }
    std::sort(next.begin(), next.end());

    const long long produced = static_cast<long long>(next.size());
    const Rational lhs(static_cast<long>(produced));
    const Rational rhs =
        Rational(static_cast<long>(fanout)) *
            Rational(static_cast<long>(sim.j_counts.back())) -
        cap * Rational(static_cast<long>(
                  sim.j_counts[static_cast<std::size_t>(h)]));
    if (lhs < rhs) sim.cantor2_ok = false;

    parents.push_back(std::move(next));
    sim.j_counts.push_back(produced);
    if (produced == 0) {
      // Everything below is empty; record the zeros and stop splitting.
      for (int rest = k + 1; rest <= K; ++rest) {
        sim.j_counts.push_back(0);
        parents.push_back({});
      }
      break;
    }
  }
  return sim;
}

// Random 1-dimensional scheme with R_k ∈ [2,4], h_k ∈ [0,k] and removal caps
// r_k ∈ {0, 1/2, 1, …, max_cap} (half-integer grid).
inline madmat::CantorScheme random_interval_scheme(std::mt19937_64& rng, int K,
                                                   long long max_cap) {
  madmat::CantorScheme scheme;
  scheme.l = 1;
  for (int k = 0; k <= K; ++k) {
    scheme.R.push_back(2 + static_cast<long long>(rng() % 3));
    scheme.h.push_back(static_cast<long long>(
        rng() % static_cast<unsigned long long>(k + 1)));
    scheme.r.push_back(madmat::make_rational(
        static_cast<long long>(rng() %
                               static_cast<unsigned long long>(2 * max_cap + 1)),
        2));
  }
  return scheme;
}

}  // namespace madmat_test

#endif  // MADMAT_TESTS_CANTOR_SIM_HPP_
