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

// Two-level auction. The InP sells its unreserved resources to MVNOs; each
// MVNO resells its slice (reservation plus purchase) to its users. MVNO bids
// are derived by backward induction: every candidate bundle is valued by the
// revenue its lower-level auction would raise.

#ifndef HCA_HIERARCHY_HPP_
#define HCA_HIERARCHY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "hca/mimo.hpp"
#include "hca/pricing.hpp"
#include "hca/types.hpp"

namespace hca {

struct MvnoSpec {
  ResourceBundle reserved;        // C^res, P^res, A^res
  double reservation_cost = 0.0;  // q^res
  std::vector<UserProfile> users;
};

enum class SolverChoice { kDp, kGreedy };

struct LevelConfig {
  SolverChoice solver = SolverChoice::kDp;
  PricingPolicy policy;
};

// Candidate bundles offered by each MVNO: subchannels in multiples of the
// group size, power in `power_steps` equal steps of the leftover (rounded,
// endpoint always included), antennas likewise with `antenna_steps`.
struct UpperGrid {
  std::int64_t power_steps = 10;
  std::int64_t antenna_steps = 4;
  std::size_t atom_budget = 20'000;  // grid points per MVNO
};

struct Scenario {
  RadioConfig radio;
  ResourceBundle inp;  // total subchannels, power units, antennas
  std::vector<MvnoSpec> mvnos;
  std::int64_t users_per_subchannel = 1;  // J
  std::int64_t group_size = 1;
  std::int64_t max_profile_subchannels = 4;
  Weights weights;
  LevelConfig upper;
  LevelConfig lower;
  UpperGrid grid;
};

// ConfigError when reservations exceed the InP totals, J or the group size is
// below 1, or user ids repeat.
void validate(const Scenario& scenario);

// InP resources left after reservations.
ResourceBundle leftover(const Scenario& scenario);

// Lower-level instance of MVNO `mvno` when it holds its reservation plus
// `extra`: one seller with (subchannels * J) slots and the slice's power;
// user values use the slice's antenna count. Atoms worth less than their
// base price and worthless atoms are left out, as a truthful user would.
WdpInstance build_user_bids(const Scenario& scenario, std::size_t mvno,
                            const ResourceBundle& extra);

// max(0, lower-level revenue - q^res) for the slice reservation + extra.
double mvno_valuation(const Scenario& scenario, std::size_t mvno,
                      const ResourceBundle& extra);

// Upper-level bids. Bidder m is MVNO m. Each atom carries the best value of
// any grid bundle it contains, and resale[m][i] is the bundle that MVNO m
// resells when atom i is won.
struct UpperBids {
  WdpInstance instance;
  std::vector<std::vector<ResourceBundle>> resale;
};

// SizeError when the grid exceeds grid.atom_budget points.
UpperBids build_mvno_bids(const Scenario& scenario);

struct Metrics {
  double social_welfare = 0.0;  // accepted user values
  double upper_welfare = 0.0;   // accepted MVNO bid values
  double util_subchannel = 0.0;
  double util_power = 0.0;
  double util_antenna = 0.0;
  double satisfaction = 0.0;
  std::size_t winners = 0;
  std::size_t users = 0;
};

struct HierOutcome {
  std::optional<PricedOutcome> upper;
  std::vector<ResourceBundle> slices;          // per seller in the lower level
  std::vector<WdpInstance> lower_instances;    // per lower-level auction
  std::vector<PricedOutcome> lower;
  std::vector<double> mvno_utility;            // sum q_k - q_m - q^res
  Metrics metrics;
};

// Backward induction: build MVNO bids, clear the upper level, then clear each
// MVNO's lower level on its realized slice.
HierOutcome run_hierarchical(const Scenario& scenario);

// Same, with the upper-level bids supplied by the caller.
HierOutcome run_hierarchical(const Scenario& scenario, const UpperBids& bids);

// Every MVNO gets an equal share of the InP (rounded down, remainders to
// MVNO 0); only lower-level auctions run.
HierOutcome run_fixed_sharing(const Scenario& scenario);

// One pooled auction over all users with the whole InP; antennas = A.
HierOutcome run_general_sharing(const Scenario& scenario);

enum class MultiSellerMode { kExact, kHeuristic };

// Upper level as in run_hierarchical; the lower level pools all users over
// the MVNO slices as sellers. Each user keeps the value it has under its
// home MVNO's slice. kExact clears by branch-and-bound with VCG prices,
// kHeuristic by the local-exchange heuristic with critical-value prices.
HierOutcome run_multiseller(const Scenario& scenario, MultiSellerMode mode);

}  // namespace hca

#endif  // HCA_HIERARCHY_HPP_
