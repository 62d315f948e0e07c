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

// Payment rules. Every winner pays max(base price, rule price); losers pay 0
// and a winner's utility is its accepted value minus its price.

#ifndef HCA_PRICING_HPP_
#define HCA_PRICING_HPP_

#include <set>

#include "hca/solvers.hpp"
#include "hca/types.hpp"

namespace hca {

// Per-unit access prices. The antenna coefficient applies only when antennas
// are a capacity dimension.
struct BasePrices {
  double subchannel = 0.0;
  double power = 0.0;
  double antenna = 0.0;
};

double base_price(const ResourceBundle& bundle, const BasePrices& base,
                  bool include_antennas);

enum class PricingKind { kVcg, kGreedyCritical };

struct PricingPolicy {
  PricingKind kind = PricingKind::kVcg;
  BasePrices base;
  // Lets critical pricing run on XOR bids. Truthfulness is then not implied.
  bool allow_general = false;
};

// The bids a truthful bidder submits when facing `base`: atoms worth less
// than their base price are withdrawn, and bidders left without atoms drop
// out.
WdpInstance drop_unaffordable(const WdpInstance& instance,
                              const BasePrices& base);

// Externality pricing. `exact` must report optimal=true on the instance and
// on every instance with one winner removed; PolicyError otherwise.
PricedOutcome vcg_prices(const WdpInstance& instance, const Solver& exact,
                         const BasePrices& base = {});

// Bidders who lose with `winner` present and win when it is removed.
// ContractError if `winner` does not win under `greedy`.
std::set<BidderId> blocking_set(BidderId winner, const WdpInstance& instance,
                                const Solver& greedy);

// Winner k pays max over its blocking set of (b_j / sqrt|S_j|) * sqrt|S_k|,
// 0 for an empty set. PolicyError on XOR bids unless `allow_general`.
PricedOutcome greedy_critical_prices(const WdpInstance& instance,
                                     const Solver& greedy,
                                     const BasePrices& base = {},
                                     bool allow_general = false);

// Dispatch on policy.kind.
PricedOutcome apply_pricing(const WdpInstance& instance, const Solver& solver,
                            const PricingPolicy& policy);

}  // namespace hca

#endif  // HCA_PRICING_HPP_
