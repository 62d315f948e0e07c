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
#include <climits>
#include <cmath>
#include <vector>

#include "hca/auction_core.hpp"
#include "hca/errors.hpp"
#include "hca/solvers.hpp"
#include "lattice_dp.hpp"

namespace hca {

namespace {

constexpr int kDecline = INT_MAX;

// Relative slack on the pooled bound: rounding in the partial sums never
// prunes the optimum.
constexpr double kBoundSlack = 1e-9;

// Depth-first search over bidders in ascending id. At each bidder the
// options are tried in tie-break order (seller-major, then atom, decline
// last), so the search meets allocations in tie-break order. The bound at
// depth d is the pooled-capacity optimum of the undecided bidders, read from
// one table built over the suffixes of the bidder order.
class Search {
 public:
  Search(const WdpInstance& instance, const BranchAndBoundOptions& options)
      : options_(options),
        table_(internal::Lattice::from_capacity(pooled_capacity(instance.sellers)),
               internal::descending_id_stages(instance)) {
    for (const Bid& bid : instance.bids) bids_.push_back(&bid);
    std::sort(bids_.begin(), bids_.end(),
              [](const Bid* a, const Bid* b) { return a->bidder < b->bidder; });
    for (const Bid* b : bids_) max_atoms_ = std::max(max_atoms_, b->atoms.size());
    residual_ = instance.sellers;
    pooled_ = pooled_capacity(instance.sellers);
    choice_.assign(bids_.size(), kDecline);
    incumbent_key_.assign(bids_.size(), kDecline);
  }

  void seed(const Allocation& allocation) {
    for (std::size_t i = 0; i < bids_.size(); ++i) {
      auto it = allocation.grants.find(bids_[i]->bidder);
      if (it != allocation.grants.end()) incumbent_key_[i] = rank(i, it->second);
    }
    incumbent_ = allocation.welfare;
  }

  void run() { descend(0, 0.0, 0); }

  double root_bound() const {
    return table_.value(table_.rows() - 1, table_.lattice().size() - 1);
  }
  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }

  std::map<BidderId, Grant> incumbent_grants() const {
    std::map<BidderId, Grant> grants;
    const std::size_t atoms = max_atoms_;
    for (std::size_t i = 0; i < bids_.size(); ++i) {
      if (incumbent_key_[i] == kDecline) continue;
      const auto r = static_cast<std::size_t>(incumbent_key_[i]);
      grants.emplace(bids_[i]->bidder, Grant{r / atoms, r % atoms});
    }
    return grants;
  }

 private:
  int rank(std::size_t /*bid*/, const Grant& grant) const {
    return static_cast<int>(grant.seller * max_atoms_ + grant.atom);
  }

  // cmp: sign of the decided prefix against the incumbent's prefix.
  void descend(std::size_t depth, double fixed, int cmp) {
    if (exhausted_) return;
    if (++nodes_ > options_.node_budget) {
      exhausted_ = true;
      return;
    }
    if (found_in_search_) cmp = 1;
    const std::size_t n = bids_.size();
    if (depth == n) {
      double welfare = 0.0;
      for (std::size_t i = n; i > 0; --i) {
        if (choice_[i - 1] == kDecline) continue;
        const auto r = static_cast<std::size_t>(choice_[i - 1]);
        welfare += bids_[i - 1]->atoms[r % max_atoms_].value;
      }
      if (welfare > incumbent_ || (welfare == incumbent_ && cmp < 0)) {
        incumbent_ = welfare;
        incumbent_key_ = choice_;
        found_in_search_ = true;
      }
      return;
    }
    const double bound =
        fixed + table_.value(n - depth, table_.lattice().index_of(pooled_));
    const double slack = kBoundSlack * std::max(1.0, std::abs(incumbent_));
    if (cmp > 0 ? bound <= incumbent_ : bound + slack < incumbent_) return;

    const Bid& bid = *bids_[depth];
    for (std::size_t s = 0; s < residual_.size(); ++s) {
      for (std::size_t a = 0; a < bid.atoms.size(); ++a) {
        const ResourceBundle& b = bid.atoms[a].bundle;
        if (!fits(b, residual_[s])) continue;
        take(s, b, -1);
        choice_[depth] = static_cast<int>(s * max_atoms_ + a);
        descend(depth + 1, fixed + bid.atoms[a].value,
                cmp != 0 ? cmp : compare(choice_[depth], incumbent_key_[depth]));
        take(s, b, +1);
        if (exhausted_) return;
      }
    }
    choice_[depth] = kDecline;
    descend(depth + 1, fixed,
            cmp != 0 ? cmp : compare(kDecline, incumbent_key_[depth]));
  }

  static int compare(int a, int b) { return a < b ? -1 : (a > b ? 1 : 0); }

  void take(std::size_t seller, const ResourceBundle& b, int sign) {
    CapacityVector& cap = residual_[seller];
    cap.subchannel_slots += sign * b.subchannels;
    cap.power_units += sign * b.power;
    pooled_.subchannel_slots += sign * b.subchannels;
    pooled_.power_units += sign * b.power;
    if (cap.antenna_units) {
      *cap.antenna_units += sign * b.antennas;
      *pooled_.antenna_units += sign * b.antennas;
    }
  }

  BranchAndBoundOptions options_;
  internal::LatticeTable table_;
  std::vector<const Bid*> bids_;
  std::vector<CapacityVector> residual_;
  CapacityVector pooled_;
  std::vector<int> choice_;
  std::vector<int> incumbent_key_;
  double incumbent_ = 0.0;
  bool found_in_search_ = false;
  bool exhausted_ = false;
  std::uint64_t nodes_ = 0;
  std::size_t max_atoms_ = 1;
};

}  // namespace

SolverReport solve_ms_branch_and_bound(const WdpInstance& instance,
                                       BranchAndBoundOptions options) {
  validate(instance);
  Search search(instance, options);
  if (options.seed_with_heuristic && all_single_minded(instance)) {
    search.seed(solve_ms_heuristic(instance).allocation);
  }
  search.run();
  SolverReport report;
  report.allocation = make_allocation(instance, search.incumbent_grants());
  report.optimal = !search.exhausted();
  report.upper_bound = std::max(search.root_bound(), report.allocation.welfare);
  report.nodes_explored = search.nodes();
  return report;
}

}  // namespace hca
