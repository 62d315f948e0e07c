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

#include <algorithm>
#include <string>
#include <vector>

#include "hca/auction_core.hpp"
#include "hca/errors.hpp"
#include "hca/solvers.hpp"

namespace hca {

namespace {

struct Option {
  std::size_t seller;
  std::size_t atom;
};

// Depth-first enumeration in ascending bidder id, options in preference
// order with declining last. Leaves are therefore met in tie-break order and
// only a strictly larger welfare replaces the incumbent.
class Enumerator {
 public:
  explicit Enumerator(const WdpInstance& instance) : instance_(instance) {
    for (const Bid& bid : instance.bids) bids_.push_back(&bid);
    std::sort(bids_.begin(), bids_.end(),
              [](const Bid* a, const Bid* b) { return a->bidder < b->bidder; });
    residual_ = instance.sellers;
    choice_.assign(bids_.size(), -1);
  }

  void run(std::size_t depth) {
    if (depth == bids_.size()) {
      ++leaves_;
      // Descending-id accumulation, as in canonical_welfare.
      double welfare = 0.0;
      for (std::size_t i = bids_.size(); i > 0; --i) {
        if (choice_[i - 1] >= 0) {
          welfare += bids_[i - 1]->atoms[options_[i - 1][choice_[i - 1]].atom].value;
        }
      }
      if (!found_ || welfare > best_welfare_) {
        found_ = true;
        best_welfare_ = welfare;
        best_choice_ = choice_;
      }
      return;
    }
    const Bid& bid = *bids_[depth];
    for (std::size_t o = 0; o < options_[depth].size(); ++o) {
      const Option& opt = options_[depth][o];
      const ResourceBundle& b = bid.atoms[opt.atom].bundle;
      CapacityVector& cap = residual_[opt.seller];
      if (!fits(b, cap)) continue;
      cap.subchannel_slots -= b.subchannels;
      cap.power_units -= b.power;
      if (cap.antenna_units) *cap.antenna_units -= b.antennas;
      choice_[depth] = static_cast<int>(o);
      run(depth + 1);
      cap.subchannel_slots += b.subchannels;
      cap.power_units += b.power;
      if (cap.antenna_units) *cap.antenna_units += b.antennas;
    }
    choice_[depth] = -1;
    run(depth + 1);
  }

  void build_options() {
    options_.resize(bids_.size());
    for (std::size_t i = 0; i < bids_.size(); ++i) {
      for (std::size_t s = 0; s < instance_.sellers.size(); ++s) {
        for (std::size_t a = 0; a < bids_[i]->atoms.size(); ++a) {
          options_[i].push_back(Option{s, a});
        }
      }
    }
  }

  std::size_t option_count() const {
    std::size_t n = 0;
    for (const auto& o : options_) n += o.size();
    return n;
  }

  std::uint64_t combinations() const {
    std::uint64_t total = 1;
    for (const auto& o : options_) {
      total *= o.size() + 1;
      if (total > kBruteForceMaxCombinations) return total;
    }
    return total;
  }

  std::map<BidderId, Grant> best_grants() const {
    std::map<BidderId, Grant> grants;
    for (std::size_t i = 0; i < bids_.size(); ++i) {
      if (best_choice_[i] < 0) continue;
      const Option& opt = options_[i][best_choice_[i]];
      grants.emplace(bids_[i]->bidder, Grant{opt.seller, opt.atom});
    }
    return grants;
  }

  std::uint64_t leaves() const { return leaves_; }

 private:
  const WdpInstance& instance_;
  std::vector<const Bid*> bids_;
  std::vector<std::vector<Option>> options_;
  std::vector<CapacityVector> residual_;
  std::vector<int> choice_;
  std::vector<int> best_choice_;
  double best_welfare_ = 0.0;
  bool found_ = false;
  std::uint64_t leaves_ = 0;
};

}  // namespace

SolverReport solve_brute_force(const WdpInstance& instance) {
  validate(instance);
  Enumerator enumerator(instance);
  enumerator.build_options();
  if (enumerator.option_count() > kBruteForceMaxAtoms) {
    throw SizeError("brute force: " + std::to_string(enumerator.option_count()) +
                    " atom options exceed the guard of " +
                    std::to_string(kBruteForceMaxAtoms));
  }
  if (enumerator.combinations() > kBruteForceMaxCombinations) {
    throw SizeError("brute force: too many XOR-respecting combinations");
  }
  enumerator.run(0);
  SolverReport report;
  report.allocation = make_allocation(instance, enumerator.best_grants());
  report.optimal = true;
  report.nodes_explored = enumerator.leaves();
  return report;
}

}  // namespace hca
