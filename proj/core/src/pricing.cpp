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

#include "hca/pricing.hpp"

#include <algorithm>
#include <cmath>

#include "hca/auction_core.hpp"
#include "hca/errors.hpp"

namespace hca {

double base_price(const ResourceBundle& bundle, const BasePrices& base,
                  bool include_antennas) {
  double price = base.subchannel * static_cast<double>(bundle.subchannels) +
                 base.power * static_cast<double>(bundle.power);
  if (include_antennas) price += base.antenna * static_cast<double>(bundle.antennas);
  return price;
}

WdpInstance drop_unaffordable(const WdpInstance& instance,
                              const BasePrices& base) {
  const bool antennas = instance.antenna_constrained();
  WdpInstance out;
  out.sellers = instance.sellers;
  out.weights = instance.weights;
  for (const Bid& bid : instance.bids) {
    Bid kept{bid.bidder, {}, bid.xor_bid};
    for (const Atom& atom : bid.atoms) {
      if (!(atom.value < base_price(atom.bundle, base, antennas))) {
        kept.atoms.push_back(atom);
      }
    }
    if (!kept.atoms.empty()) out.bids.push_back(std::move(kept));
  }
  return out;
}

namespace {

void fill_utilities(const WdpInstance& instance, PricedOutcome& outcome) {
  for (const Bid& bid : instance.bids) {
    auto it = outcome.allocation.grants.find(bid.bidder);
    if (it == outcome.allocation.grants.end()) {
      outcome.utilities[bid.bidder] = 0.0;
    } else {
      outcome.utilities[bid.bidder] =
          bid.atoms[it->second.atom].value - outcome.prices.at(bid.bidder);
    }
  }
}

}  // namespace

PricedOutcome vcg_prices(const WdpInstance& instance, const Solver& exact,
                         const BasePrices& base) {
  const SolverReport report = exact(instance);
  if (!report.optimal) {
    throw PolicyError("VCG pricing needs an exact winner determination");
  }
  const bool antennas = instance.antenna_constrained();
  PricedOutcome outcome;
  outcome.allocation = report.allocation;
  for (const auto& [id, grant] : report.allocation.grants) {
    const SolverReport without = exact(without_bidder(instance, id));
    if (!without.optimal) {
      throw PolicyError("VCG pricing needs an exact winner determination");
    }
    std::map<BidderId, Grant> others = report.allocation.grants;
    others.erase(id);
    // Canonical sum: an unchanged optimum yields a price of exactly zero.
    const double others_with = canonical_welfare(instance, others);
    const double externality = std::max(0.0, without.allocation.welfare - others_with);
    const Atom& atom = granted_atom(instance, report.allocation, id);
    outcome.prices[id] =
        std::max(base_price(atom.bundle, base, antennas), externality);
  }
  fill_utilities(instance, outcome);
  return outcome;
}

std::set<BidderId> blocking_set(BidderId winner, const WdpInstance& instance,
                                const Solver& greedy) {
  const SolverReport with = greedy(instance);
  if (!with.allocation.wins(winner)) {
    throw ContractError("blocking_set: bidder is not a greedy winner");
  }
  const SolverReport without = greedy(without_bidder(instance, winner));
  std::set<BidderId> blocked;
  for (const auto& [id, grant] : without.allocation.grants) {
    if (!with.allocation.wins(id)) blocked.insert(id);
  }
  return blocked;
}

PricedOutcome greedy_critical_prices(const WdpInstance& instance,
                                     const Solver& greedy,
                                     const BasePrices& base,
                                     bool allow_general) {
  if (!allow_general && !all_single_minded(instance)) {
    throw PolicyError(
        "critical-value pricing is only truthful for single-minded bids");
  }
  const bool antennas = instance.antenna_constrained();
  const SolverReport report = greedy(instance);
  PricedOutcome outcome;
  outcome.allocation = report.allocation;
  for (const auto& [id, grant] : report.allocation.grants) {
    const WdpInstance reduced = without_bidder(instance, id);
    const SolverReport without = greedy(reduced);
    const Atom& own = granted_atom(instance, report.allocation, id);
    const double own_root =
        std::sqrt(bundle_norm(own.bundle, instance.weights, antennas));
    double critical = 0.0;
    for (const auto& [other, other_grant] : without.allocation.grants) {
      if (report.allocation.wins(other)) continue;
      const Atom& blocked = granted_atom(reduced, without.allocation, other);
      const double norm = bundle_norm(blocked.bundle, instance.weights, antennas);
      if (norm == 0.0) continue;
      critical = std::max(critical, blocked.value / std::sqrt(norm) * own_root);
    }
    outcome.prices[id] =
        std::max(base_price(own.bundle, base, antennas), critical);
  }
  fill_utilities(instance, outcome);
  return outcome;
}

PricedOutcome apply_pricing(const WdpInstance& instance, const Solver& solver,
                            const PricingPolicy& policy) {
  switch (policy.kind) {
    case PricingKind::kVcg:
      return vcg_prices(instance, solver, policy.base);
    case PricingKind::kGreedyCritical:
      return greedy_critical_prices(instance, solver, policy.base,
                                    policy.allow_general);
  }
  throw ContractError("unknown pricing kind");
}

}  // namespace hca
