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

// Value types shared by every solver, pricing rule and the hierarchy
// orchestrator. All of them are plain immutable-after-construction values.

#ifndef HCA_TYPES_HPP_
#define HCA_TYPES_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

namespace hca {

struct BidderId {
  std::int64_t value = 0;

  friend auto operator<=>(const BidderId&, const BidderId&) = default;
  friend std::ostream& operator<<(std::ostream& os, BidderId id) {
    return os << id.value;
  }
};

// Subchannel count, integer power units and antenna count.
struct ResourceBundle {
  std::int64_t subchannels = 0;
  std::int64_t power = 0;
  std::int64_t antennas = 0;

  bool empty() const { return subchannels == 0 && power == 0 && antennas == 0; }

  ResourceBundle& operator+=(const ResourceBundle& o) {
    subchannels += o.subchannels;
    power += o.power;
    antennas += o.antennas;
    return *this;
  }
  friend ResourceBundle operator+(ResourceBundle a, const ResourceBundle& b) {
    return a += b;
  }
  friend bool operator==(const ResourceBundle&, const ResourceBundle&) = default;
};

// Component-wise a <= b.
inline bool contained_in(const ResourceBundle& a, const ResourceBundle& b) {
  return a.subchannels <= b.subchannels && a.power <= b.power &&
         a.antennas <= b.antennas;
}

// One (bundle, value) pair of a bid.
struct Atom {
  ResourceBundle bundle;
  double value = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

// A single-minded bid has exactly one atom. Multi-atom bids must be XOR bids:
// at most one atom may be accepted.
struct Bid {
  BidderId bidder;
  std::vector<Atom> atoms;
  bool xor_bid = true;

  bool single_minded() const { return atoms.size() == 1; }
};

// Seller capacity. Subchannel capacity is counted in slots (subchannels times
// users per subchannel in the lower level). When antenna_units is empty the
// antenna dimension is not a capacity constraint: every lower-level user sees
// all of the slice's antennas.
struct CapacityVector {
  std::int64_t subchannel_slots = 0;
  std::int64_t power_units = 0;
  std::optional<std::int64_t> antenna_units;

  friend bool operator==(const CapacityVector&, const CapacityVector&) = default;
};

// Bundle-size weights for the normalized ranking b / sqrt(|S|).
struct Weights {
  double subchannel = 1.0;
  double power = 1.0;
  double antenna = 1.0;  // Only used when antennas are a capacity dimension.
};

// Winner-determination input. One entry in `sellers` is the single-seller
// problem; more entries give the multi-seller form where each bidder may be
// served by at most one seller.
struct WdpInstance {
  std::vector<Bid> bids;
  std::vector<CapacityVector> sellers;
  Weights weights;

  bool antenna_constrained() const {
    return !sellers.empty() && sellers.front().antenna_units.has_value();
  }
};

struct Grant {
  std::size_t seller = 0;
  std::size_t atom = 0;

  friend bool operator==(const Grant&, const Grant&) = default;
};

// Accepted bids. `welfare` is the sum of the accepted atoms' values,
// accumulated in descending bidder-id order starting from 0.0 (see
// canonical_welfare). Every solver reports welfare this way; equal grant sets
// compare bit-identical.
struct Allocation {
  std::map<BidderId, Grant> grants;
  double welfare = 0.0;

  bool wins(BidderId id) const { return grants.count(id) != 0; }
  friend bool operator==(const Allocation&, const Allocation&) = default;
};

struct PricedOutcome {
  Allocation allocation;
  std::map<BidderId, double> prices;     // winners only; losers pay 0
  std::map<BidderId, double> utilities;  // every bidder

  double price(BidderId id) const {
    auto it = prices.find(id);
    return it == prices.end() ? 0.0 : it->second;
  }
  double revenue() const;
};

}  // namespace hca

#endif  // HCA_TYPES_HPP_
