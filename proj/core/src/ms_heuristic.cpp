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

// Local-exchange heuristic for the multi-seller problem with single-minded
// bids: greedy first-fit, one rearrangement, one pass of pairwise swaps that
// admit a loser and one pass of winner-for-losers replacement.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hca/auction_core.hpp"
#include "hca/errors.hpp"
#include "hca/solvers.hpp"

namespace hca {

namespace {

constexpr int kUnassigned = -1;

// Signed three-component resource vector.
struct Amount {
  std::int64_t c = 0, p = 0, a = 0;
};

Amount operator+(Amount x, Amount y) { return {x.c + y.c, x.p + y.p, x.a + y.a}; }
Amount operator-(Amount x, Amount y) { return {x.c - y.c, x.p - y.p, x.a - y.a}; }

class Heuristic {
 public:
  explicit Heuristic(const WdpInstance& instance) : instance_(instance) {
    antennas_ = instance.antenna_constrained();
    order_users();
    order_sellers();
    x_.assign(users_.size(), kUnassigned);
  }

  HeuristicTrace run() {
    HeuristicTrace trace;
    initial_solution();
    trace.initial = snapshot();
    const std::vector<int> initial_x = x_;
    const std::vector<Amount> initial_res = residual_;

    rearrangement();
    Allocation rearranged = snapshot();
    trace.rearrangement_kept = !(rearranged.welfare < trace.initial.welfare);
    if (!trace.rearrangement_kept) {
      x_ = initial_x;
      residual_ = initial_res;
      rearranged = trace.initial;
    }
    trace.rearranged = rearranged;

    first_improvement();
    trace.first_improved = snapshot();
    second_improvement();
    trace.final = snapshot();
    return trace;
  }

 private:
  Amount need(std::size_t k) const {
    const ResourceBundle& b = instance_.bids[users_[k]].atoms.front().bundle;
    return {b.subchannels, b.power, antennas_ ? b.antennas : 0};
  }
  double value(std::size_t k) const {
    return instance_.bids[users_[k]].atoms.front().value;
  }
  static bool fits_in(const Amount& d, const Amount& cap) {
    return d.c <= cap.c && d.p <= cap.p && d.a <= cap.a;
  }

  // Users by value / sqrt(norm) descending, zero-norm bundles first.
  void order_users() {
    users_.resize(instance_.bids.size());
    std::iota(users_.begin(), users_.end(), 0);
    const auto key = [&](std::size_t i) {
      const Atom& atom = instance_.bids[i].atoms.front();
      const double norm = bundle_norm(atom.bundle, instance_.weights, antennas_);
      return std::pair<bool, double>{norm == 0.0,
                                     norm == 0.0 ? atom.value
                                                 : atom.value / std::sqrt(norm)};
    };
    std::sort(users_.begin(), users_.end(), [&](std::size_t i, std::size_t j) {
      const auto ki = key(i), kj = key(j);
      if (ki.first != kj.first) return ki.first;
      if (ki.second != kj.second) return ki.second > kj.second;
      return instance_.bids[i].bidder < instance_.bids[j].bidder;
    });
  }

  // Sellers by aggregated capacity ascending.
  void order_sellers() {
    sellers_.resize(instance_.sellers.size());
    std::iota(sellers_.begin(), sellers_.end(), 0);
    const auto aggregate = [&](std::size_t m) {
      const CapacityVector& cap = instance_.sellers[m];
      return bundle_norm(ResourceBundle{cap.subchannel_slots, cap.power_units,
                                        cap.antenna_units.value_or(0)},
                         instance_.weights, antennas_);
    };
    std::stable_sort(sellers_.begin(), sellers_.end(),
                     [&](std::size_t a, std::size_t b) {
                       return aggregate(a) < aggregate(b);
                     });
    full_.clear();
    for (std::size_t m : sellers_) {
      const CapacityVector& cap = instance_.sellers[m];
      full_.push_back(Amount{cap.subchannel_slots, cap.power_units,
                             cap.antenna_units.value_or(0)});
    }
    residual_ = full_;
  }

  void assign(std::size_t k, std::size_t m) {
    x_[k] = static_cast<int>(m);
    residual_[m] = residual_[m] - need(k);
  }

  void greedy(std::size_t m) {
    for (std::size_t k = 0; k < users_.size(); ++k) {
      if (x_[k] == kUnassigned && fits_in(need(k), residual_[m])) assign(k, m);
    }
  }

  void initial_solution() {
    std::fill(x_.begin(), x_.end(), kUnassigned);
    residual_ = full_;
    for (std::size_t m = 0; m < full_.size(); ++m) greedy(m);
  }

  // Reassign current winners from the lowest-ranked up, round-robin over
  // sellers from a moving cursor, then refill greedily.
  void rearrangement() {
    const std::size_t sellers = full_.size();
    residual_ = full_;
    std::size_t cursor = 0;
    for (std::size_t k = users_.size(); k-- > 0;) {
      if (x_[k] == kUnassigned) continue;
      x_[k] = kUnassigned;
      for (std::size_t step = 0; step < sellers; ++step) {
        const std::size_t l = (cursor + step) % sellers;
        if (fits_in(need(k), residual_[l])) {
          assign(k, l);
          cursor = l + 1 < sellers ? l + 1 : 0;
          break;
        }
      }
    }
    for (std::size_t m = 0; m < sellers; ++m) greedy(m);
  }

  // For winners k, j at different sellers: move the larger bid (h) to the
  // smaller one's seller (l) when that seller can absorb the difference,
  // provided the freed room at h's seller admits an unassigned bid t.
  void first_improvement() {
    const std::size_t n = users_.size();
    for (std::size_t k = 0; k < n; ++k) {
      if (x_[k] == kUnassigned) continue;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (x_[j] == kUnassigned || x_[j] == x_[k]) continue;
        const std::size_t h = need(j).c > need(k).c ? j : k;
        const std::size_t l = h == j ? k : j;
        const Amount d = need(h) - need(l);
        const auto sh = static_cast<std::size_t>(x_[h]);
        const auto sl = static_cast<std::size_t>(x_[l]);
        if (!fits_in(d, residual_[sl])) continue;
        const Amount room = residual_[sh] + d;
        std::size_t t = n;
        for (std::size_t u = 0; u < n; ++u) {
          if (x_[u] != kUnassigned || !fits_in(need(u), room)) continue;
          if (t == n || value(u) > value(t)) t = u;
        }
        if (t == n) continue;
        residual_[sh] = room - need(t);
        residual_[sl] = residual_[sl] - d;
        x_[t] = static_cast<int>(sh);
        x_[h] = static_cast<int>(sl);
        x_[l] = static_cast<int>(sh);
      }
    }
  }

  // Evict winner k when the losers that fit greedily into the room it frees
  // are worth more than k.
  void second_improvement() {
    const std::size_t n = users_.size();
    for (std::size_t k = n; k-- > 0;) {
      if (x_[k] == kUnassigned) continue;
      const auto m = static_cast<std::size_t>(x_[k]);
      Amount room = residual_[m] + need(k);
      std::vector<std::size_t> chosen;
      double gain = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (x_[j] != kUnassigned || !fits_in(need(j), room)) continue;
        chosen.push_back(j);
        room = room - need(j);
        gain += value(j);
      }
      if (gain > value(k)) {
        for (std::size_t j : chosen) x_[j] = static_cast<int>(m);
        residual_[m] = room;
        x_[k] = kUnassigned;
      }
    }
  }

  Allocation snapshot() const {
    std::map<BidderId, Grant> grants;
    for (std::size_t k = 0; k < users_.size(); ++k) {
      if (x_[k] == kUnassigned) continue;
      grants.emplace(instance_.bids[users_[k]].bidder,
                     Grant{sellers_[static_cast<std::size_t>(x_[k])], 0});
    }
    return make_allocation(instance_, std::move(grants));
  }

  const WdpInstance& instance_;
  bool antennas_ = false;
  std::vector<std::size_t> users_;    // rank -> bid index
  std::vector<std::size_t> sellers_;  // rank -> seller index
  std::vector<Amount> full_;
  std::vector<Amount> residual_;
  std::vector<int> x_;                // rank -> seller rank or kUnassigned
};

}  // namespace

HeuristicTrace trace_ms_heuristic(const WdpInstance& instance) {
  validate(instance);
  if (!all_single_minded(instance)) {
    throw ContractError("trace_ms_heuristic: every bid must have one atom");
  }
  return Heuristic(instance).run();
}

SolverReport solve_ms_heuristic(const WdpInstance& instance) {
  HeuristicTrace trace = trace_ms_heuristic(instance);
  SolverReport report;
  report.allocation = std::move(trace.final);
  report.optimal = false;
  report.nodes_explored = instance.bids.size();
  return report;
}

}  // namespace hca
