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

#include <gtest/gtest.h>

#include <cmath>

#include "hca/auction_core.hpp"
#include "hca/errors.hpp"
#include "hca/rng.hpp"
#include "hca/solvers.hpp"
#include "test_support.hpp"

namespace hca {
namespace {

using testing::random_multiseller;
using testing::random_single_minded;
using testing::random_upper;
using testing::random_xor;
using testing::reference_welfare;

WdpInstance sellers(std::initializer_list<CapacityVector> caps) {
  WdpInstance inst;
  inst.sellers = caps;
  return inst;
}

void add(WdpInstance& inst, std::int64_t id, ResourceBundle b, double v) {
  inst.bids.push_back(Bid{BidderId{id}, {Atom{b, v}}, true});
}

// Two single-slot bids of 10 and 6 over 4 power units.
WdpInstance two_bids(std::int64_t slots) {
  WdpInstance inst = sellers({CapacityVector{slots, 4, std::nullopt}});
  add(inst, 1, {1, 2, 0}, 10.0);
  add(inst, 2, {1, 2, 0}, 6.0);
  return inst;
}

// A blocks B and C at capacity (2, 2).
WdpInstance greedy_example() {
  WdpInstance inst = sellers({CapacityVector{2, 2, std::nullopt}});
  add(inst, 1, {2, 2, 0}, 10.0);
  add(inst, 2, {1, 1, 0}, 6.0);
  add(inst, 3, {1, 1, 0}, 5.0);
  return inst;
}

TEST(BruteForce, NoBidsIsEmpty) {
  const SolverReport r = solve_brute_force(sellers({CapacityVector{3, 3, std::nullopt}}));
  EXPECT_TRUE(r.allocation.grants.empty());
  EXPECT_EQ(r.allocation.welfare, 0.0);
  EXPECT_TRUE(r.optimal);
}

TEST(BruteForce, OneSlotTakesHigherBid) {
  const SolverReport r = solve_brute_force(two_bids(1));
  EXPECT_EQ(r.allocation.welfare, 10.0);
  EXPECT_TRUE(r.allocation.wins(BidderId{1}));
  EXPECT_FALSE(r.allocation.wins(BidderId{2}));
}

TEST(BruteForce, TwoSlotsTakeBoth) {
  EXPECT_EQ(solve_brute_force(two_bids(2)).allocation.welfare, 16.0);
}

TEST(BruteForce, SizeGuard) {
  WdpInstance inst = sellers({CapacityVector{50, 50, std::nullopt}});
  for (std::int64_t i = 1; i <= 26; ++i) add(inst, i, {1, 1, 0}, 1.0);
  EXPECT_THROW(solve_brute_force(inst), SizeError);
}

TEST(BruteForce, MatchesReference) {
  SplitMix64 rng = SplitMix64::stream(101, 0);
  for (int i = 0; i < 60; ++i) {
    const WdpInstance a = random_xor(rng);
    EXPECT_EQ(solve_brute_force(a).allocation.welfare, reference_welfare(a));
    const WdpInstance b = random_multiseller(rng);
    EXPECT_EQ(solve_brute_force(b).allocation.welfare, reference_welfare(b));
    const WdpInstance c = random_upper(rng, 2);
    EXPECT_EQ(solve_brute_force(c).allocation.welfare, reference_welfare(c));
  }
}

TEST(DpSingleMinded, RejectsXorBids) {
  WdpInstance inst = sellers({CapacityVector{2, 2, std::nullopt}});
  inst.bids.push_back(Bid{BidderId{1}, {Atom{{1, 0, 0}, 1.0}, Atom{{0, 1, 0}, 1.0}}, true});
  EXPECT_THROW(solve_dp_single_minded(inst), ContractError);
}

TEST(DpSingleMinded, ExactFitAccepted) {
  WdpInstance inst = sellers({CapacityVector{3, 7, std::nullopt}});
  add(inst, 4, {3, 7, 0}, 2.5);
  const SolverReport r = solve_dp_single_minded(inst);
  EXPECT_EQ(r.allocation.welfare, 2.5);
  EXPECT_TRUE(r.allocation.wins(BidderId{4}));
}

TEST(DpSingleMinded, OversizedBidNeverAccepted) {
  WdpInstance inst = sellers({CapacityVector{3, 7, std::nullopt}});
  add(inst, 1, {3, 8, 0}, 100.0);
  add(inst, 2, {4, 1, 0}, 100.0);
  add(inst, 3, {1, 1, 0}, 1.0);
  const SolverReport r = solve_dp_single_minded(inst);
  EXPECT_FALSE(r.allocation.wins(BidderId{1}));
  EXPECT_FALSE(r.allocation.wins(BidderId{2}));
  EXPECT_EQ(r.allocation.welfare, 1.0);
}

TEST(DpSingleMinded, MatchesBruteForce) {
  SplitMix64 rng = SplitMix64::stream(102, 0);
  for (int i = 0; i < 200; ++i) {
    const WdpInstance inst = random_single_minded(rng);
    const SolverReport dp = solve_dp_single_minded(inst);
    const SolverReport bf = solve_brute_force(inst);
    ASSERT_EQ(dp.allocation.welfare, bf.allocation.welfare) << "instance " << i;
    EXPECT_EQ(dp.allocation, bf.allocation) << "instance " << i;
    EXPECT_TRUE(check_feasible(dp.allocation, inst));
  }
}

TEST(DpGeneralXor, DegeneratesToSingleMinded) {
  SplitMix64 rng = SplitMix64::stream(103, 0);
  for (int i = 0; i < 50; ++i) {
    const WdpInstance inst = random_single_minded(rng);
    EXPECT_EQ(solve_dp_general_xor(inst).allocation,
              solve_dp_single_minded(inst).allocation);
  }
}

TEST(DpGeneralXor, MatchesBruteForce) {
  SplitMix64 rng = SplitMix64::stream(104, 0);
  for (int i = 0; i < 200; ++i) {
    const WdpInstance inst = random_xor(rng);
    const SolverReport dp = solve_dp_general_xor(inst);
    const SolverReport bf = solve_brute_force(inst);
    ASSERT_EQ(dp.allocation.welfare, bf.allocation.welfare) << "instance " << i;
    EXPECT_EQ(dp.allocation, bf.allocation) << "instance " << i;
  }
}

TEST(DpGeneralXor, InfeasibleBidderLosesAlone) {
  WdpInstance inst = sellers({CapacityVector{2, 2, std::nullopt}});
  inst.bids.push_back(Bid{BidderId{1}, {Atom{{3, 0, 0}, 9.0}, Atom{{0, 3, 0}, 9.0}}, true});
  add(inst, 2, {1, 1, 0}, 1.0);
  add(inst, 3, {1, 1, 0}, 2.0);
  const SolverReport r = solve_dp_general_xor(inst);
  EXPECT_FALSE(r.allocation.wins(BidderId{1}));
  EXPECT_EQ(r.allocation.welfare, 3.0);
}

TEST(GreedySingleMinded, NormalizedRankingExample) {
  const WdpInstance inst = greedy_example();
  const SolverReport r = solve_greedy_single_minded(inst);
  EXPECT_TRUE(r.allocation.wins(BidderId{1}));
  EXPECT_FALSE(r.allocation.wins(BidderId{2}));
  EXPECT_FALSE(r.allocation.wins(BidderId{3}));
  EXPECT_EQ(r.allocation.welfare, 10.0);
  EXPECT_EQ(solve_brute_force(inst).allocation.welfare, 11.0);
}

TEST(GreedySingleMinded, DisjointBidsAllAdmitted) {
  WdpInstance inst = sellers({CapacityVector{6, 6, std::nullopt}});
  add(inst, 1, {1, 2, 0}, 1.0);
  add(inst, 2, {2, 1, 0}, 7.0);
  add(inst, 3, {3, 3, 0}, 2.0);
  const SolverReport r = solve_greedy_single_minded(inst);
  EXPECT_EQ(r.allocation.grants.size(), 3U);
  EXPECT_EQ(r.allocation.welfare, solve_brute_force(inst).allocation.welfare);
}

TEST(GreedySingleMinded, Deterministic) {
  SplitMix64 rng = SplitMix64::stream(105, 0);
  for (int i = 0; i < 20; ++i) {
    const WdpInstance inst = random_single_minded(rng);
    EXPECT_EQ(solve_greedy_single_minded(inst).allocation,
              solve_greedy_single_minded(inst).allocation);
  }
}

TEST(GreedyGeneralXor, PrefersBetterNormalizedAtom) {
  WdpInstance inst = sellers({CapacityVector{10, 10, std::nullopt}});
  inst.bids.push_back(Bid{BidderId{1}, {Atom{{2, 2, 0}, 8.0}, Atom{{1, 0, 0}, 6.0}}, true});
  const SolverReport r = solve_greedy_general_xor(inst);
  ASSERT_TRUE(r.allocation.wins(BidderId{1}));
  EXPECT_EQ(r.allocation.grants.at(BidderId{1}).atom, 1U);
  EXPECT_EQ(r.allocation.welfare, 6.0);
}

TEST(GreedyGeneralXor, SingleMindedIdenticalToSingleMindedGreedy) {
  SplitMix64 rng = SplitMix64::stream(106, 0);
  for (int i = 0; i < 50; ++i) {
    const WdpInstance inst = random_single_minded(rng);
    EXPECT_EQ(solve_greedy_general_xor(inst).allocation,
              solve_greedy_single_minded(inst).allocation);
  }
}

TEST(GreedyGeneralXor, AtMostOneAtomPerBidder) {
  SplitMix64 rng = SplitMix64::stream(107, 0);
  for (int i = 0; i < 100; ++i) {
    const WdpInstance inst = random_xor(rng);
    const SolverReport r = solve_greedy_general_xor(inst);
    EXPECT_TRUE(check_feasible(r.allocation, inst));
    EXPECT_LE(r.allocation.welfare, reference_welfare(inst));
  }
}

TEST(UpperDp, RejectsUngroupedAtoms) {
  WdpInstance inst = sellers({CapacityVector{10, 10, 10}});
  add(inst, 0, {3, 1, 1}, 4.0);
  EXPECT_THROW(solve_upper_dp(inst, 2), ContractError);
}

TEST(UpperDp, GroupOneEqualsTwoDimensionalDp) {
  SplitMix64 rng = SplitMix64::stream(108, 0);
  for (int i = 0; i < 50; ++i) {
    const WdpInstance inst = random_xor(rng);
    const Allocation planar = solve_dp_general_xor(inst).allocation;
    EXPECT_EQ(solve_upper_dp(inst, 1).allocation, planar);
    WdpInstance with_antennas = inst;
    with_antennas.sellers.front().antenna_units = 0;
    EXPECT_EQ(solve_upper_dp(with_antennas, 1).allocation, planar);
  }
}

TEST(UpperDp, MatchesBruteForce) {
  SplitMix64 rng = SplitMix64::stream(109, 0);
  for (int i = 0; i < 100; ++i) {
    const WdpInstance inst = random_upper(rng, 1);
    EXPECT_EQ(solve_upper_dp(inst, 1).allocation, solve_brute_force(inst).allocation);
  }
}

TEST(UpperDp, CoarseGroupsNeverBeatFineGroups) {
  SplitMix64 rng = SplitMix64::stream(110, 0);
  for (int i = 0; i < 100; ++i) {
    const WdpInstance coarse = random_upper(rng, 5);
    EXPECT_LE(solve_upper_dp(coarse, 5).allocation.welfare,
              solve_upper_dp(coarse, 1).allocation.welfare);
  }
}

TEST(SurrogateBound, SingleSellerEqualsOptimum) {
  SplitMix64 rng = SplitMix64::stream(111, 0);
  for (int i = 0; i < 50; ++i) {
    const WdpInstance inst = random_xor(rng);
    EXPECT_EQ(surrogate_bound(inst), solve_dp_general_xor(inst).allocation.welfare);
  }
}

TEST(SurrogateBound, StrictSlackExample) {
  WdpInstance inst = sellers({CapacityVector{1, 2, std::nullopt},
                              CapacityVector{1, 2, std::nullopt}});
  add(inst, 1, {2, 4, 0}, 9.0);
  EXPECT_EQ(solve_ms_branch_and_bound(inst).allocation.welfare, 0.0);
  EXPECT_EQ(surrogate_bound(inst), 9.0);
}

TEST(BranchAndBound, MatchesBruteForce) {
  SplitMix64 rng = SplitMix64::stream(112, 0);
  for (int i = 0; i < 100; ++i) {
    const WdpInstance inst = random_multiseller(rng);
    const SolverReport bb = solve_ms_branch_and_bound(inst);
    EXPECT_TRUE(bb.optimal);
    EXPECT_EQ(bb.allocation, solve_brute_force(inst).allocation) << "instance " << i;
    EXPECT_GE(surrogate_bound(inst), bb.allocation.welfare);
    EXPECT_GE(bb.allocation.welfare, solve_ms_heuristic(inst).allocation.welfare);
  }
}

TEST(BranchAndBound, SingleSellerEqualsDp) {
  SplitMix64 rng = SplitMix64::stream(113, 0);
  for (int i = 0; i < 50; ++i) {
    const WdpInstance inst = random_xor(rng);
    EXPECT_EQ(solve_ms_branch_and_bound(inst).allocation,
              solve_dp_general_xor(inst).allocation);
  }
}

TEST(BranchAndBound, BudgetExhaustionIsReported) {
  SplitMix64 rng = SplitMix64::stream(114, 0);
  WdpInstance inst = random_multiseller(rng, 8);
  while (inst.bids.size() < 6) inst = random_multiseller(rng, 8);
  const SolverReport r =
      solve_ms_branch_and_bound(inst, BranchAndBoundOptions{2, false});
  EXPECT_FALSE(r.optimal);
  ASSERT_TRUE(r.upper_bound.has_value());
  EXPECT_GE(*r.upper_bound, r.allocation.welfare);
  EXPECT_TRUE(check_feasible(r.allocation, inst));
}

// Users ranked A (6 / 1), B (4 / sqrt 3), C (3 / 2); sellers tie at norm 6.
// Greedy puts A and B on seller 0 and C fits nowhere; rearrangement lands
// at the same welfare; swapping B to seller 1 frees (1, 1) at seller 0,
// enough for C.
WdpInstance swap_example() {
  WdpInstance inst = sellers({CapacityVector{3, 3, std::nullopt},
                              CapacityVector{4, 2, std::nullopt}});
  add(inst, 1, {1, 0, 0}, 6.0);
  add(inst, 2, {2, 1, 0}, 4.0);
  add(inst, 3, {1, 3, 0}, 3.0);
  return inst;
}

TEST(MsHeuristic, FirstImprovementAdmitsExtraBid) {
  const HeuristicTrace t = trace_ms_heuristic(swap_example());
  EXPECT_EQ(t.initial.welfare, 10.0);
  EXPECT_EQ(t.rearranged.welfare, 10.0);
  EXPECT_EQ(t.first_improved.welfare, 13.0);
  EXPECT_EQ(t.final.welfare, 13.0);
  EXPECT_EQ(t.final.grants.at(BidderId{1}).seller, 0U);
  EXPECT_EQ(t.final.grants.at(BidderId{2}).seller, 1U);
  EXPECT_EQ(t.final.grants.at(BidderId{3}).seller, 0U);
}

TEST(MsHeuristic, OptimalGreedyIsLeftAlone) {
  WdpInstance inst = sellers({CapacityVector{2, 2, std::nullopt},
                              CapacityVector{2, 2, std::nullopt}});
  add(inst, 1, {2, 2, 0}, 5.0);
  add(inst, 2, {2, 2, 0}, 4.0);
  const HeuristicTrace t = trace_ms_heuristic(inst);
  EXPECT_EQ(t.initial.welfare, 9.0);
  EXPECT_EQ(t.final.welfare, 9.0);
}

TEST(MsHeuristic, NeverWorseThanInitialAndFeasible) {
  SplitMix64 rng = SplitMix64::stream(115, 0);
  for (int i = 0; i < 200; ++i) {
    const WdpInstance inst = random_multiseller(rng);
    const HeuristicTrace t = trace_ms_heuristic(inst);
    EXPECT_GE(t.final.welfare, t.initial.welfare);
    EXPECT_GE(t.first_improved.welfare, t.rearranged.welfare);
    EXPECT_TRUE(check_feasible(t.final, inst));
  }
}

TEST(MsHeuristic, RejectsXorBids) {
  WdpInstance inst = sellers({CapacityVector{2, 2, std::nullopt}});
  inst.bids.push_back(Bid{BidderId{1}, {Atom{{1, 0, 0}, 1.0}, Atom{{0, 1, 0}, 1.0}}, true});
  EXPECT_THROW(solve_ms_heuristic(inst), ContractError);
}

}  // namespace
}  // namespace hca
