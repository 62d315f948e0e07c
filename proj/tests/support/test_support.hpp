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

// Random instance generators and an exhaustive reference solver for tests.
// Generated values are multiples of 1/4; every welfare sum is exact.

#ifndef HCA_TESTS_TEST_SUPPORT_HPP_
#define HCA_TESTS_TEST_SUPPORT_HPP_

#include <cstdint>
#include <string>

#include "hca/hierarchy.hpp"
#include "hca/rng.hpp"
#include "hca/types.hpp"

namespace hca::testing {

// k / 4 for k uniform in [lo_quarters, hi_quarters].
double dyadic(SplitMix64& rng, std::int64_t lo_quarters, std::int64_t hi_quarters);

// One seller with capacity up to (20 slots, 40 power), 1..max_bids bids.
WdpInstance random_single_minded(SplitMix64& rng, std::size_t max_bids = 12);

// One seller, 1..max_bidders XOR bids of 1..max_atoms atoms each.
WdpInstance random_xor(SplitMix64& rng, std::size_t max_bidders = 6,
                       std::size_t max_atoms = 4);

// One antenna-constrained seller, 2 bidders x 3 atoms whose subchannel
// counts are multiples of `group_size`.
WdpInstance random_upper(SplitMix64& rng, std::int64_t group_size);

// Two sellers, 1..max_bids single-minded bids.
WdpInstance random_multiseller(SplitMix64& rng, std::size_t max_bids = 8);

// Raises atom values until nested atoms of each bid are value-monotone.
void make_monotone(Bid& bid);

// Best welfare by exhaustive search, written independently of the library
// solvers: every bidder declines or takes one (atom, seller) option.
double reference_welfare(const WdpInstance& instance);

// Value a bidder with true bid `truth` draws from `granted`: the best true
// atom it contains, 0 if none.
double true_value(const Bid& truth, const ResourceBundle& granted,
                  bool include_antennas);

// Desk-shaped scenario small enough for repeated end-to-end runs: 2 MVNOs
// with `users_per_mvno` users each over an InP of (8, 40, 16).
Scenario small_scenario(std::uint64_t seed, std::int64_t users_per_mvno = 4);

}  // namespace hca::testing

#endif  // HCA_TESTS_TEST_SUPPORT_HPP_
