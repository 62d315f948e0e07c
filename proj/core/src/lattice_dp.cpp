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

#include "lattice_dp.hpp"

#include <algorithm>
#include <string>

#include "hca/errors.hpp"

namespace hca::internal {

Lattice Lattice::from_capacity(const CapacityVector& capacity,
                               std::int64_t group) {
  Lattice lattice;
  lattice.group = group;
  lattice.slots = capacity.subchannel_slots / group;
  lattice.power = capacity.power_units;
  lattice.antenna_axis = capacity.antenna_units.has_value();
  lattice.antennas = capacity.antenna_units.value_or(0);
  return lattice;
}

std::size_t Lattice::index_of(const CapacityVector& residual) const {
  const std::int64_t s = std::clamp<std::int64_t>(
      residual.subchannel_slots / group, 0, slots);
  const std::int64_t p = std::clamp<std::int64_t>(residual.power_units, 0, power);
  const std::int64_t a =
      antenna_axis ? std::clamp<std::int64_t>(residual.antenna_units.value_or(0),
                                              0, antennas)
                   : 0;
  return index(s, p, a);
}

LatticeTable::LatticeTable(const Lattice& lattice,
                           std::vector<const Bid*> stages)
    : lattice_(lattice), stages_(std::move(stages)) {
  const std::size_t cells = lattice_.size();
  if (cells * rows() > kMaxCells) {
    throw SizeError("DP table of " + std::to_string(cells * rows()) +
                    " cells exceeds the size guard");
  }
  moves_.resize(stages_.size());
  for (std::size_t t = 0; t < stages_.size(); ++t) {
    const Bid& bid = *stages_[t];
    for (std::size_t a = 0; a < bid.atoms.size(); ++a) {
      const ResourceBundle& b = bid.atoms[a].bundle;
      if (b.subchannels % lattice_.group != 0) {
        throw ContractError("atom subchannels not a multiple of the group size");
      }
      Move m;
      m.ds = b.subchannels / lattice_.group;
      m.dp = b.power;
      m.da = lattice_.antenna_axis ? b.antennas : 0;
      if (m.ds > lattice_.slots || m.dp > lattice_.power ||
          m.da > lattice_.antennas) {
        continue;
      }
      m.offset = lattice_.index(m.ds, m.dp, m.da);
      m.value = bid.atoms[a].value;
      m.atom = a;
      moves_[t].push_back(m);
    }
  }

  table_.assign(cells * rows(), 0.0);
  const std::int64_t S = lattice_.slots, P = lattice_.power, A = lattice_.antennas;
  for (std::size_t t = 0; t < stages_.size(); ++t) {
    const double* prev = table_.data() + t * cells;
    double* cur = table_.data() + (t + 1) * cells;
    std::copy(prev, prev + cells, cur);
    transitions_ += cells;
    for (const Move& m : moves_[t]) {
      for (std::int64_t s = m.ds; s <= S; ++s) {
        for (std::int64_t p = m.dp; p <= P; ++p) {
          const std::size_t base = lattice_.index(s, p, 0);
          for (std::int64_t a = m.da; a <= A; ++a) {
            const std::size_t i = base + static_cast<std::size_t>(a);
            const double candidate = prev[i - m.offset] + m.value;
            if (candidate > cur[i]) cur[i] = candidate;
          }
        }
      }
      transitions_ += static_cast<std::uint64_t>((S - m.ds + 1) *
                                                 (P - m.dp + 1) * (A - m.da + 1));
    }
  }
}

std::map<BidderId, Grant> LatticeTable::backtrace(std::size_t seller) const {
  return backtrace_from(lattice_.size() - 1, seller);
}

std::map<BidderId, Grant> LatticeTable::backtrace_from(std::size_t cell,
                                                       std::size_t seller) const {
  std::map<BidderId, Grant> grants;
  for (std::size_t t = stages_.size(); t > 0; --t) {
    const double target = value(t, cell);
    const auto rest = static_cast<std::int64_t>(cell);
    const std::int64_t a = rest % (lattice_.antennas + 1);
    const std::int64_t p = (rest / (lattice_.antennas + 1)) % (lattice_.power + 1);
    const std::int64_t s = rest / ((lattice_.antennas + 1) * (lattice_.power + 1));
    // Moves are stored in atom order, so the first match is the lowest index.
    for (const Move& m : moves_[t - 1]) {
      if (m.ds > s || m.dp > p || m.da > a) continue;
      if (value(t - 1, cell - m.offset) + m.value == target) {
        grants.emplace(stages_[t - 1]->bidder, Grant{seller, m.atom});
        cell -= m.offset;
        break;
      }
    }
  }
  return grants;
}

std::vector<const Bid*> descending_id_stages(const WdpInstance& instance) {
  std::vector<const Bid*> stages;
  stages.reserve(instance.bids.size());
  for (const Bid& bid : instance.bids) stages.push_back(&bid);
  std::sort(stages.begin(), stages.end(), [](const Bid* a, const Bid* b) {
    return a->bidder > b->bidder;
  });
  return stages;
}

}  // namespace hca::internal
