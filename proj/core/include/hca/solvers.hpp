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

// Winner-determination solvers.
//
// Tie-breaking is shared by every exact solver: among allocations of equal
// welfare the preferred one is lexicographically best when bidders are
// visited in ascending id order, where for a single bidder an accepted atom
// beats declining, a lower seller index beats a higher one and, within one
// seller, a lower atom index beats a higher one. Exact solvers therefore
// return bit-identical allocations on the same instance.

#ifndef HCA_SOLVERS_HPP_
#define HCA_SOLVERS_HPP_

#include <cstdint>
#include <functional>
#include <optional>

#include "hca/types.hpp"

namespace hca {

struct SolverReport {
  Allocation allocation;
  bool optimal = false;
  std::optional<double> upper_bound;  // branch-and-bound only
  std::uint64_t nodes_explored = 0;
};

using Solver = std::function<SolverReport(const WdpInstance&)>;

// Exhaustive enumeration. Throws SizeError when the instance has more than
// kBruteForceMaxAtoms (atom, seller) options or more than
// kBruteForceMaxCombinations XOR-respecting combinations.
inline constexpr std::size_t kBruteForceMaxAtoms = 25;
inline constexpr std::uint64_t kBruteForceMaxCombinations = 1ULL << 25;
SolverReport solve_brute_force(const WdpInstance& instance);

// Dense dynamic program over the (slots x power) lattice, one stage per
// bidder with accept/decline transitions. Single seller, single-minded bids;
// ContractError otherwise.
SolverReport solve_dp_single_minded(const WdpInstance& instance);

// Same lattice, with every XOR atom of a bidder as a candidate transition.
SolverReport solve_dp_general_xor(const WdpInstance& instance);

// Upper-level DP: subchannels are sold in groups of `group_size`, so the slot
// axis is measured in groups; antennas are a third lattice axis when the
// seller constrains them. ContractError if an atom's subchannel count is not
// a multiple of group_size.
SolverReport solve_upper_dp(const WdpInstance& instance,
                            std::int64_t group_size);

// Rank atoms by value / sqrt(bundle norm) (descending; ties by lower bidder
// id, then lower atom index) and admit while capacity remains. Zero-norm
// atoms rank ahead of everything, highest value first.
SolverReport solve_greedy_single_minded(const WdpInstance& instance);
SolverReport solve_greedy_general_xor(const WdpInstance& instance);

// Pool every seller's capacity into one and solve the pooled problem exactly.
// Never below the multi-seller optimum.
double surrogate_bound(const WdpInstance& instance);

struct BranchAndBoundOptions {
  std::uint64_t node_budget = 20'000'000;
  // Use solve_ms_heuristic as the starting incumbent when bids allow it.
  bool seed_with_heuristic = true;
};

// Exact multi-seller solver: depth-first over bidders (highest normalized
// value first), options ordered by the shared tie-break, bounded by
// fixed value + pooled-capacity DP of the undecided bidders. Reports
// optimal=false if the node budget runs out.
SolverReport solve_ms_branch_and_bound(const WdpInstance& instance,
                                       BranchAndBoundOptions options = {});

// Intermediate solutions of the multi-seller local-exchange heuristic.
struct HeuristicTrace {
  Allocation initial;          // greedy first-fit over sellers
  Allocation rearranged;       // after rearrangement + greedy refill
  Allocation first_improved;   // after pairwise swaps admitting a loser
  Allocation final;            // after replacing a winner by better losers
  bool rearrangement_kept = false;  // false if it lost welfare and was undone
};

// Single-minded bids only (ContractError otherwise).
HeuristicTrace trace_ms_heuristic(const WdpInstance& instance);
SolverReport solve_ms_heuristic(const WdpInstance& instance);

}  // namespace hca

#endif  // HCA_SOLVERS_HPP_
