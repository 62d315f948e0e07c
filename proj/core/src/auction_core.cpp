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

#include "hca/auction_core.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "hca/errors.hpp"

namespace hca {

double PricedOutcome::revenue() const {
  double total = 0.0;
  for (auto it = prices.rbegin(); it != prices.rend(); ++it) total += it->second;
  return total;
}

double bundle_norm(const ResourceBundle& bundle, const Weights& weights,
                   bool include_antennas) {
  double norm = weights.subchannel * static_cast<double>(bundle.subchannels) +
                weights.power * static_cast<double>(bundle.power);
  if (include_antennas) {
    norm += weights.antenna * static_cast<double>(bundle.antennas);
  }
  return norm;
}

namespace {

std::string describe(BidderId id) {
  std::ostringstream os;
  os << "bidder " << id;
  return os.str();
}

}  // namespace

void validate(const WdpInstance& instance) {
  const Weights& w = instance.weights;
  if (!(w.subchannel > 0.0) || !(w.power > 0.0) || !(w.antenna > 0.0)) {
    throw ContractError("bundle-norm weights must be strictly positive");
  }
  if (instance.sellers.empty()) {
    throw ContractError("instance has no seller capacity");
  }
  const bool antennas = instance.sellers.front().antenna_units.has_value();
  for (const CapacityVector& cap : instance.sellers) {
    if (cap.subchannel_slots < 0 || cap.power_units < 0 ||
        (cap.antenna_units && *cap.antenna_units < 0)) {
      throw ContractError("negative seller capacity");
    }
    if (cap.antenna_units.has_value() != antennas) {
      throw ContractError("sellers disagree on whether antennas are capacity");
    }
  }
  std::set<BidderId> seen;
  for (const Bid& bid : instance.bids) {
    if (!seen.insert(bid.bidder).second) {
      throw ContractError("duplicate " + describe(bid.bidder));
    }
    if (bid.atoms.empty()) {
      throw ContractError(describe(bid.bidder) + " has no atoms");
    }
    if (bid.atoms.size() > 1 && !bid.xor_bid) {
      throw ContractError(describe(bid.bidder) +
                          ": multi-atom bids must be XOR bids");
    }
    for (const Atom& atom : bid.atoms) {
      const ResourceBundle& b = atom.bundle;
      if (b.subchannels < 0 || b.power < 0 || b.antennas < 0) {
        throw ContractError(describe(bid.bidder) + " has a negative bundle");
      }
      if (!std::isfinite(atom.value) || atom.value < 0.0) {
        throw ContractError(describe(bid.bidder) +
                            " has a negative or non-finite value");
      }
    }
    for (const Atom& small : bid.atoms) {
      for (const Atom& large : bid.atoms) {
        if (contained_in(small.bundle, large.bundle) &&
            small.value > large.value) {
          throw ContractError(describe(bid.bidder) +
                              ": values not monotone over nested bundles");
        }
      }
    }
  }
}

bool all_single_minded(const WdpInstance& instance) {
  for (const Bid& bid : instance.bids) {
    if (!bid.single_minded()) return false;
  }
  return true;
}

std::map<BidderId, std::size_t> index_bidders(const WdpInstance& instance) {
  std::map<BidderId, std::size_t> index;
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    index.emplace(instance.bids[i].bidder, i);
  }
  return index;
}

namespace {

const Atom& lookup(const WdpInstance& instance,
                   const std::map<BidderId, std::size_t>& index, BidderId id,
                   const Grant& grant) {
  auto it = index.find(id);
  if (it == index.end()) {
    throw StructuralError("allocation grants unknown " + describe(id));
  }
  const Bid& bid = instance.bids[it->second];
  if (grant.atom >= bid.atoms.size()) {
    throw StructuralError("allocation grants missing atom of " + describe(id));
  }
  if (grant.seller >= instance.sellers.size()) {
    throw StructuralError("allocation uses unknown seller for " + describe(id));
  }
  return bid.atoms[grant.atom];
}

}  // namespace

double canonical_welfare(const WdpInstance& instance,
                         const std::map<BidderId, Grant>& grants) {
  const auto index = index_bidders(instance);
  double welfare = 0.0;
  for (auto it = grants.rbegin(); it != grants.rend(); ++it) {
    welfare += lookup(instance, index, it->first, it->second).value;
  }
  return welfare;
}

Allocation make_allocation(const WdpInstance& instance,
                           std::map<BidderId, Grant> grants) {
  Allocation allocation;
  allocation.welfare = canonical_welfare(instance, grants);
  allocation.grants = std::move(grants);
  return allocation;
}

bool fits(const ResourceBundle& bundle, const CapacityVector& capacity) {
  if (bundle.subchannels > capacity.subchannel_slots) return false;
  if (bundle.power > capacity.power_units) return false;
  if (capacity.antenna_units && bundle.antennas > *capacity.antenna_units) {
    return false;
  }
  return true;
}

bool check_feasible(const Allocation& allocation, const WdpInstance& instance) {
  const auto index = index_bidders(instance);
  std::vector<ResourceBundle> used(instance.sellers.size());
  for (const auto& [id, grant] : allocation.grants) {
    used[grant.seller] += lookup(instance, index, id, grant).bundle;
  }
  for (std::size_t s = 0; s < used.size(); ++s) {
    if (!fits(used[s], instance.sellers[s])) return false;
  }
  return allocation.welfare == canonical_welfare(instance, allocation.grants);
}

CapacityVector pooled_capacity(const std::vector<CapacityVector>& sellers) {
  CapacityVector pooled;
  for (const CapacityVector& cap : sellers) {
    pooled.subchannel_slots += cap.subchannel_slots;
    pooled.power_units += cap.power_units;
    if (cap.antenna_units) {
      pooled.antenna_units = pooled.antenna_units.value_or(0) + *cap.antenna_units;
    }
  }
  return pooled;
}

WdpInstance without_bidder(const WdpInstance& instance, BidderId bidder) {
  WdpInstance reduced;
  reduced.sellers = instance.sellers;
  reduced.weights = instance.weights;
  reduced.bids.reserve(instance.bids.size());
  for (const Bid& bid : instance.bids) {
    if (bid.bidder != bidder) reduced.bids.push_back(bid);
  }
  return reduced;
}

const Atom& granted_atom(const WdpInstance& instance,
                         const Allocation& allocation, BidderId bidder) {
  auto it = allocation.grants.find(bidder);
  if (it == allocation.grants.end()) {
    throw StructuralError(describe(bidder) + " is not a winner");
  }
  return lookup(instance, index_bidders(instance), bidder, it->second);
}

}  // namespace hca
