// Copyright 2026 The Authors.
//
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

#include <algorithm>
#include <cmath>
#include <vector>

#include "hca/auction_core.hpp"
#include "hca/errors.hpp"
#include "hca/solvers.hpp"

namespace hca {

namespace {

struct Ranked {
  std::size_t bid;
  std::size_t atom;
  BidderId bidder;
  double value;
  bool zero_norm;
  double key;  // value / sqrt(norm); unused when zero_norm
};

bool ranks_before(const Ranked& a, const Ranked& b) {
  if (a.zero_norm != b.zero_norm) return a.zero_norm;
  const double ka = a.zero_norm ? a.value : a.key;
  const double kb = b.zero_norm ? b.value : b.key;
  if (ka != kb) return ka > kb;
  if (a.bidder != b.bidder) return a.bidder < b.bidder;
  return a.atom < b.atom;
}

SolverReport run_greedy(const WdpInstance& instance) {
  if (instance.sellers.size() != 1) {
    throw ContractError("greedy: expects exactly one seller");
  }
  const bool antennas = instance.antenna_constrained();
  std::vector<Ranked> ranked;
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    const Bid& bid = instance.bids[i];
    for (std::size_t a = 0; a < bid.atoms.size(); ++a) {
      const double norm =
          bundle_norm(bid.atoms[a].bundle, instance.weights, antennas);
      const double value = bid.atoms[a].value;
      ranked.push_back(Ranked{i, a, bid.bidder, value, norm == 0.0,
                              norm == 0.0 ? 0.0 : value / std::sqrt(norm)});
    }
  }
  std::sort(ranked.begin(), ranked.end(), ranks_before);

  CapacityVector residual = instance.sellers.front();
  std::vector<bool> owner_served(instance.bids.size(), false);
  std::map<BidderId, Grant> grants;
  for (const Ranked& r : ranked) {
    if (owner_served[r.bid]) continue;
    const ResourceBundle& b = instance.bids[r.bid].atoms[r.atom].bundle;
    if (!fits(b, residual)) continue;
    residual.subchannel_slots -= b.subchannels;
    residual.power_units -= b.power;
    if (residual.antenna_units) *residual.antenna_units -= b.antennas;
    owner_served[r.bid] = true;
    grants.emplace(r.bidder, Grant{0, r.atom});
  }
  SolverReport report;
  report.allocation = make_allocation(instance, std::move(grants));
  report.optimal = false;
  report.nodes_explored = ranked.size();
  return report;
}

}  // namespace

SolverReport solve_greedy_single_minded(const WdpInstance& instance) {
  validate(instance);
  if (!all_single_minded(instance)) {
    throw ContractError("solve_greedy_single_minded: every bid must have one atom");
  }
  return run_greedy(instance);
}

SolverReport solve_greedy_general_xor(const WdpInstance& instance) {
  validate(instance);
  return run_greedy(instance);
}

}  // namespace hca
