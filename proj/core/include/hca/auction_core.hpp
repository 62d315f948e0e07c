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

// Capacity arithmetic and feasibility checks shared by the solvers.

#ifndef HCA_AUCTION_CORE_HPP_
#define HCA_AUCTION_CORE_HPP_

#include <map>
#include <vector>

#include "hca/types.hpp"

namespace hca {

// omega_c * subchannels + omega_p * power (+ omega_a * antennas when
// `include_antennas`). Zero for the empty bundle; callers that divide by
// sqrt(norm) must handle that case themselves.
double bundle_norm(const ResourceBundle& bundle, const Weights& weights,
                   bool include_antennas = false);

// Throws ContractError on duplicate bidder ids, empty or non-XOR multi-atom
// bids, negative or non-finite values, negative bundles, non-positive
// weights, an empty seller list, mixed antenna handling across sellers, or
// nested atoms of one bidder whose values are not monotone.
void validate(const WdpInstance& instance);

// True iff every bid has exactly one atom.
bool all_single_minded(const WdpInstance& instance);

// Position of each bidder in instance.bids.
std::map<BidderId, std::size_t> index_bidders(const WdpInstance& instance);

// Sum of accepted atom values in descending bidder-id order. Throws
// StructuralError on unknown bidders, atoms or sellers.
double canonical_welfare(const WdpInstance& instance,
                         const std::map<BidderId, Grant>& grants);

Allocation make_allocation(const WdpInstance& instance,
                           std::map<BidderId, Grant> grants);

// True iff per-seller capacities hold, each bidder has at most one grant and
// `welfare` equals canonical_welfare of the grants. Throws StructuralError
// when the allocation refers to anything absent from the instance.
bool check_feasible(const Allocation& allocation, const WdpInstance& instance);

// Does `bundle` fit into `capacity` (antennas ignored when unconstrained)?
bool fits(const ResourceBundle& bundle, const CapacityVector& capacity);

// Component-wise sum of all sellers' capacities.
CapacityVector pooled_capacity(const std::vector<CapacityVector>& sellers);

// Copy of `instance` with one bidder's bid removed.
WdpInstance without_bidder(const WdpInstance& instance, BidderId bidder);

// The atom granted to `bidder`. Throws StructuralError if it is not a winner.
const Atom& granted_atom(const WdpInstance& instance,
                         const Allocation& allocation, BidderId bidder);

}  // namespace hca

#endif  // HCA_AUCTION_CORE_HPP_
