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
#include "hca/pricing.hpp"
#include "hca/rng.hpp"
#include "hca/solvers.hpp"
#include "test_support.hpp"

namespace hca {
namespace {

WdpInstance one_seller(std::int64_t slots, std::int64_t power) {
  WdpInstance inst;
  inst.sellers.push_back(CapacityVector{slots, power, std::nullopt});
  return inst;
}

void add(WdpInstance& inst, std::int64_t id, ResourceBundle b, double v) {
  inst.bids.push_back(Bid{BidderId{id}, {Atom{b, v}}, true});
}

WdpInstance greedy_example() {
  WdpInstance inst = one_seller(2, 2);
  add(inst, 1, {2, 2, 0}, 10.0);
  add(inst, 2, {1, 1, 0}, 6.0);
  add(inst, 3, {1, 1, 0}, 5.0);
  return inst;
}

const Solver kDp = solve_dp_general_xor;
const Solver kGreedy = solve_greedy_single_minded;

TEST(BasePrice, LinearInBundle) {
  const BasePrices base{1.0, 0.5, 2.0};
  EXPECT_EQ(base_price({2, 4, 3}, base, false), 4.0);
  EXPECT_EQ(base_price({2, 4, 3}, base, true), 10.0);
}

TEST(DropUnaffordable, WithdrawsCheapAtoms) {
  WdpInstance inst = one_seller(5, 5);
  add(inst, 1, {2, 0, 0}, 1.0);
  add(inst, 2, {2, 0, 0}, 3.0);
  inst.bids.push_back(Bid{BidderId{3}, {Atom{{1, 0, 0}, 0.5}, Atom{{4, 0, 0}, 4.0}}, true});
  const WdpInstance kept = drop_unaffordable(inst, BasePrices{1.0, 0.0, 0.0});
  ASSERT_EQ(kept.bids.size(), 2U);
  EXPECT_EQ(kept.bids[0].bidder, BidderId{2});
  ASSERT_EQ(kept.bids[1].atoms.size(), 1U);
  EXPECT_EQ(kept.bids[1].atoms.front().value, 4.0);
}

TEST(Vcg, AbundanceMeansZeroPrices) {
  WdpInstance inst = one_seller(100, 100);
  add(inst, 1, {2, 3, 0}, 5.0);
  add(inst, 2, {4, 1, 0}, 7.0);
  add(inst, 3, {1, 9, 0}, 2.0);
  const PricedOutcome out = vcg_prices(inst, kDp);
  EXPECT_EQ(out.allocation.grants.size(), 3U);
  for (const auto& [id, price] : out.prices) EXPECT_EQ(price, 0.0) << id;
}

TEST(Vcg, SecondPriceCollapse) {
  WdpInstance inst = one_seller(1, 10);
  add(inst, 1, {1, 0, 0}, 10.0);
  add(inst, 2, {1, 0, 0}, 6.0);
  const PricedOutcome out = vcg_prices(inst, kDp);
  EXPECT_EQ(out.price(BidderId{1}), 6.0);
  EXPECT_EQ(out.utilities.at(BidderId{1}), 4.0);
  EXPECT_EQ(out.utilities.at(BidderId{2}), 0.0);
}

TEST(Vcg, BasePriceFloor) {
  WdpInstance inst = one_seller(10, 10);
  add(inst, 1, {3, 0, 0}, 5.0);
  const PricedOutcome out = vcg_prices(inst, kDp, BasePrices{1.0, 0.0, 0.0});
  EXPECT_EQ(out.price(BidderId{1}), 3.0);
}

TEST(Vcg, NonExactSolverRejected) {
  EXPECT_THROW(vcg_prices(greedy_example(), kGreedy), PolicyError);
}

TEST(BlockingSet, NoContentionIsEmpty) {
  WdpInstance inst = one_seller(10, 10);
  add(inst, 1, {1, 1, 0}, 1.0);
  add(inst, 2, {1, 1, 0}, 2.0);
  EXPECT_TRUE(blocking_set(BidderId{1}, inst, kGreedy).empty());
}

TEST(BlockingSet, GreedyExample) {
  EXPECT_EQ(blocking_set(BidderId{1}, greedy_example(), kGreedy),
            (std::set<BidderId>{BidderId{2}, BidderId{3}}));
}

TEST(BlockingSet, LoserRejected) {
  EXPECT_THROW(blocking_set(BidderId{2}, greedy_example(), kGreedy), ContractError);
}

// Winners ranked ahead of a removed winner see the same prefix and keep
// winning.
TEST(BlockingSet, RemovingWinnerKeepsEarlierWinners) {
  SplitMix64 rng = SplitMix64::stream(201, 0);
  const auto key = [](const WdpInstance& inst, BidderId id) {
    for (const Bid& bid : inst.bids) {
      if (bid.bidder == id) {
        const Atom& a = bid.atoms.front();
        return a.value / std::sqrt(bundle_norm(a.bundle, inst.weights, false));
      }
    }
    return 0.0;
  };
  for (int i = 0; i < 100; ++i) {
    const WdpInstance inst = testing::random_single_minded(rng);
    const Allocation with = kGreedy(inst).allocation;
    for (const auto& [winner, grant] : with.grants) {
      const Allocation without = kGreedy(without_bidder(inst, winner)).allocation;
      const double k = key(inst, winner);
      for (const auto& [other, g] : with.grants) {
        const double o = key(inst, other);
        if (o > k || (o == k && other < winner)) {
          EXPECT_TRUE(without.wins(other)) << "instance " << i;
        }
      }
    }
  }
}

TEST(CriticalPrice, GreedyExample) {
  const PricedOutcome out = greedy_critical_prices(greedy_example(), kGreedy);
  EXPECT_NEAR(out.price(BidderId{1}), 8.48528137423857, 1e-12);
}

TEST(CriticalPrice, EmptyBlockingSetIsFree) {
  WdpInstance inst = one_seller(10, 10);
  add(inst, 1, {1, 1, 0}, 1.0);
  const PricedOutcome out = greedy_critical_prices(inst, kGreedy);
  EXPECT_EQ(out.price(BidderId{1}), 0.0);
}

TEST(CriticalPrice, RebidAroundCriticalValue) {
  const double q = greedy_critical_prices(greedy_example(), kGreedy).price(BidderId{1});
  WdpInstance low = greedy_example();
  low.bids[0].atoms[0].value = q - 1e-6;
  EXPECT_FALSE(kGreedy(low).allocation.wins(BidderId{1}));
  WdpInstance high = greedy_example();
  high.bids[0].atoms[0].value = q + 1e-6;
  EXPECT_TRUE(kGreedy(high).allocation.wins(BidderId{1}));
}

TEST(CriticalPrice, XorBidsNeedOptIn) {
  WdpInstance inst = one_seller(4, 4);
  inst.bids.push_back(Bid{BidderId{1}, {Atom{{1, 0, 0}, 1.0}, Atom{{0, 1, 0}, 2.0}}, true});
  EXPECT_THROW(greedy_critical_prices(inst, solve_greedy_general_xor), PolicyError);
  EXPECT_NO_THROW(greedy_critical_prices(inst, solve_greedy_general_xor, {}, true));
}

TEST(ApplyPricing, Dispatches) {
  const WdpInstance inst = greedy_example();
  PricingPolicy vcg;
  EXPECT_EQ(apply_pricing(inst, kDp, vcg).prices, vcg_prices(inst, kDp).prices);
  PricingPolicy critical{PricingKind::kGreedyCritical, {}, false};
  EXPECT_EQ(apply_pricing(inst, kGreedy, critical).prices,
            greedy_critical_prices(inst, kGreedy).prices);
}

TEST(Utilities, WinnersValueMinusPriceLosersZero) {
  SplitMix64 rng = SplitMix64::stream(202, 0);
  for (int i = 0; i < 50; ++i) {
    const WdpInstance inst = testing::random_xor(rng);
    const PricedOutcome out = vcg_prices(inst, kDp);
    for (const Bid& bid : inst.bids) {
      const double u = out.utilities.at(bid.bidder);
      if (out.allocation.wins(bid.bidder)) {
        const Atom& atom = granted_atom(inst, out.allocation, bid.bidder);
        EXPECT_EQ(u, atom.value - out.price(bid.bidder));
        EXPECT_GE(u, 0.0);
      } else {
        EXPECT_EQ(u, 0.0);
      }
    }
  }
}

}  // namespace
}  // namespace hca
