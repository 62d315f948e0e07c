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

#include "hca/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "hca/auction_core.hpp"
#include "hca/errors.hpp"
#include "hca/solvers.hpp"
#include "lattice_dp.hpp"

namespace hca {

namespace {

ResourceBundle operator-(const ResourceBundle& a, const ResourceBundle& b) {
  return {a.subchannels - b.subchannels, a.power - b.power,
          a.antennas - b.antennas};
}

Solver lower_solver(const LevelConfig& level) {
  if (level.solver == SolverChoice::kGreedy) return solve_greedy_general_xor;
  return solve_dp_general_xor;
}

Solver upper_solver(const LevelConfig& level, std::int64_t group_size) {
  if (level.solver == SolverChoice::kGreedy) return solve_greedy_general_xor;
  return [group_size](const WdpInstance& instance) {
    return solve_upper_dp(instance, group_size);
  };
}

CapacityVector lower_capacity(const Scenario& scenario,
                              const ResourceBundle& slice) {
  return CapacityVector{slice.subchannels * scenario.users_per_subchannel,
                        slice.power, std::nullopt};
}

// Truthful bids of `users` served by a slice with `antennas` antennas.
void append_user_bids(const Scenario& scenario,
                      const std::vector<UserProfile>& users,
                      std::int64_t antennas, std::vector<Bid>& out) {
  if (antennas <= 0) return;
  const BasePrices& base = scenario.lower.policy.base;
  for (const UserProfile& user : users) {
    std::vector<Atom> atoms;
    if (const auto* demand = std::get_if<ExplicitDemand>(&user.demand)) {
      ResourceBundle bundle = demand->bundle;
      bundle.antennas = antennas;
      atoms.push_back(Atom{bundle, explicit_value(user, antennas, scenario.radio)});
    } else {
      atoms = enumerate_profiles(user, scenario.max_profile_subchannels,
                                 antennas, scenario.radio);
    }
    Bid bid{user.id, {}, true};
    for (const Atom& atom : atoms) {
      if (atom.value > 0.0 && !(atom.value < base_price(atom.bundle, base, false))) {
        bid.atoms.push_back(atom);
      }
    }
    if (!bid.atoms.empty()) out.push_back(std::move(bid));
  }
}

WdpInstance slice_instance(const Scenario& scenario,
                           const std::vector<UserProfile>& users,
                           const ResourceBundle& slice) {
  WdpInstance instance;
  instance.weights = scenario.weights;
  instance.sellers.push_back(lower_capacity(scenario, slice));
  append_user_bids(scenario, users, slice.antennas, instance.bids);
  return instance;
}

std::vector<std::int64_t> axis_points(std::int64_t limit, std::int64_t step) {
  std::vector<std::int64_t> points;
  for (std::int64_t v = 0; v < limit; v += step) points.push_back(v);
  points.push_back(limit);
  return points;
}

std::int64_t rounded_step(std::int64_t limit, std::int64_t steps) {
  if (steps < 1) throw ConfigError("grid steps must be >= 1");
  return std::max<std::int64_t>(
      1, std::llround(static_cast<double>(limit) / static_cast<double>(steps)));
}

std::size_t total_users(const Scenario& scenario) {
  std::size_t n = 0;
  for (const MvnoSpec& m : scenario.mvnos) n += m.users.size();
  return n;
}

// Revenue of the lower level for every (subchannel, power) grid point at one
// antenna count, from one table per bidder subset instead of one solve per
// point. Matches apply_pricing with the DP solver and VCG bit for bit.
std::vector<double> dp_vcg_revenues(const Scenario& scenario, std::size_t mvno,
                                    std::int64_t extra_antennas,
                                    const std::vector<std::int64_t>& cs,
                                    const std::vector<std::int64_t>& ps) {
  const ResourceBundle up = leftover(scenario);
  const MvnoSpec& spec = scenario.mvnos[mvno];
  const ResourceBundle full =
      spec.reserved + ResourceBundle{up.subchannels, up.power, extra_antennas};
  const WdpInstance instance = slice_instance(scenario, spec.users, full);
  std::vector<double> revenue(cs.size() * ps.size(), 0.0);
  if (instance.bids.empty()) return revenue;

  const auto lattice = internal::Lattice::from_capacity(instance.sellers.front());
  const auto stages = internal::descending_id_stages(instance);
  const internal::LatticeTable table(lattice, stages);
  std::vector<std::vector<double>> without(stages.size());
  for (std::size_t k = 0; k < stages.size(); ++k) {
    std::vector<const Bid*> rest = stages;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    const internal::LatticeTable reduced(lattice, rest);
    without[k].resize(lattice.size());
    for (std::size_t cell = 0; cell < lattice.size(); ++cell) {
      without[k][cell] = reduced.value(reduced.rows() - 1, cell);
    }
  }
  std::map<BidderId, std::size_t> stage_of;
  for (std::size_t k = 0; k < stages.size(); ++k) stage_of[stages[k]->bidder] = k;

  const BasePrices& base = scenario.lower.policy.base;
  const std::int64_t J = scenario.users_per_subchannel;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = 0; j < ps.size(); ++j) {
      const std::size_t cell = lattice.index(
          (spec.reserved.subchannels + cs[i]) * J, spec.reserved.power + ps[j], 0);
      const auto grants = table.backtrace_from(cell);
      PricedOutcome outcome;
      for (const auto& [id, grant] : grants) {
        std::map<BidderId, Grant> others = grants;
        others.erase(id);
        const double others_with = canonical_welfare(instance, others);
        const double externality =
            std::max(0.0, without[stage_of.at(id)][cell] - others_with);
        const Atom& atom = stages[stage_of.at(id)]->atoms[grant.atom];
        outcome.prices[id] =
            std::max(base_price(atom.bundle, base, false), externality);
      }
      revenue[i * ps.size() + j] = outcome.revenue();
    }
  }
  return revenue;
}

void fill_metrics(const Scenario& scenario, HierOutcome& outcome,
                  const std::vector<bool>& slice_served) {
  Metrics& m = outcome.metrics;
  std::int64_t slots = 0, power = 0, antennas = 0;
  std::map<BidderId, double, std::greater<>> accepted;  // descending id
  for (std::size_t i = 0; i < outcome.lower.size(); ++i) {
    const PricedOutcome& lower = outcome.lower[i];
    for (const auto& [id, grant] : lower.allocation.grants) {
      const Atom& atom =
          granted_atom(outcome.lower_instances[i], lower.allocation, id);
      accepted[id] += atom.value;
      slots += atom.bundle.subchannels;
      power += atom.bundle.power;
      ++m.winners;
    }
  }
  for (const auto& [id, value] : accepted) m.social_welfare += value;
  for (std::size_t s = 0; s < outcome.slices.size(); ++s) {
    if (slice_served[s]) antennas += outcome.slices[s].antennas;
  }
  if (outcome.upper) m.upper_welfare = outcome.upper->allocation.welfare;
  const auto ratio = [](std::int64_t used, std::int64_t total) {
    return total > 0 ? static_cast<double>(used) / static_cast<double>(total) : 0.0;
  };
  m.util_subchannel =
      ratio(slots, scenario.inp.subchannels * scenario.users_per_subchannel);
  m.util_power = ratio(power, scenario.inp.power);
  m.util_antenna = ratio(antennas, scenario.inp.antennas);
  m.users = total_users(scenario);
  m.satisfaction = m.users > 0 ? static_cast<double>(m.winners) /
                                     static_cast<double>(m.users)
                               : 0.0;
}

// Upper level cleared and slices realized; lower levels not yet run.
struct UpperStage {
  std::optional<PricedOutcome> upper;
  std::vector<ResourceBundle> extras;
};

UpperStage clear_upper(const Scenario& scenario, const UpperBids& bids) {
  UpperStage stage;
  stage.extras.assign(scenario.mvnos.size(), ResourceBundle{});
  stage.upper = apply_pricing(bids.instance,
                              upper_solver(scenario.upper, scenario.group_size),
                              scenario.upper.policy);
  for (const auto& [id, grant] : stage.upper->allocation.grants) {
    const auto m = static_cast<std::size_t>(id.value);
    stage.extras[m] = bids.resale.at(m).at(grant.atom);
  }
  return stage;
}

}  // namespace

void validate(const Scenario& scenario) {
  validate(scenario.radio);
  if (scenario.users_per_subchannel < 1) throw ConfigError("J must be >= 1");
  if (scenario.group_size < 1) throw ConfigError("group_size must be >= 1");
  if (scenario.max_profile_subchannels < 1) {
    throw ConfigError("max_profile_subchannels must be >= 1");
  }
  const ResourceBundle& inp = scenario.inp;
  if (inp.subchannels < 0 || inp.power < 0 || inp.antennas < 0) {
    throw ConfigError("InP totals must be non-negative");
  }
  ResourceBundle reserved;
  std::set<BidderId> ids;
  for (const MvnoSpec& m : scenario.mvnos) {
    if (m.reserved.subchannels < 0 || m.reserved.power < 0 ||
        m.reserved.antennas < 0) {
      throw ConfigError("reservations must be non-negative");
    }
    reserved += m.reserved;
    for (const UserProfile& u : m.users) {
      if (!ids.insert(u.id).second) throw ConfigError("duplicate user id");
      if (!(u.delta > 0.0)) throw ConfigError("user delta must be positive");
    }
  }
  if (!contained_in(reserved, inp)) {
    throw ConfigError("reservations exceed the InP totals");
  }
}

ResourceBundle leftover(const Scenario& scenario) {
  ResourceBundle reserved;
  for (const MvnoSpec& m : scenario.mvnos) reserved += m.reserved;
  return scenario.inp - reserved;
}

WdpInstance build_user_bids(const Scenario& scenario, std::size_t mvno,
                            const ResourceBundle& extra) {
  const MvnoSpec& spec = scenario.mvnos.at(mvno);
  return slice_instance(scenario, spec.users, spec.reserved + extra);
}

double mvno_valuation(const Scenario& scenario, std::size_t mvno,
                      const ResourceBundle& extra) {
  const WdpInstance instance = build_user_bids(scenario, mvno, extra);
  const PricedOutcome outcome =
      apply_pricing(instance, lower_solver(scenario.lower), scenario.lower.policy);
  return std::max(0.0, outcome.revenue() - scenario.mvnos[mvno].reservation_cost);
}

UpperBids build_mvno_bids(const Scenario& scenario) {
  validate(scenario);
  const ResourceBundle up = leftover(scenario);
  const std::int64_t G = scenario.group_size;
  std::vector<std::int64_t> cs;
  for (std::int64_t c = 0; c + G <= up.subchannels; c += G) cs.push_back(c + G);
  cs.insert(cs.begin(), 0);
  const auto ps = axis_points(up.power, rounded_step(up.power, scenario.grid.power_steps));
  const auto as =
      axis_points(up.antennas, rounded_step(up.antennas, scenario.grid.antenna_steps));
  const std::size_t points = cs.size() * ps.size() * as.size();
  if (points > scenario.grid.atom_budget) {
    throw SizeError("upper-level grid has " + std::to_string(points) +
                    " bundles per MVNO, above the budget of " +
                    std::to_string(scenario.grid.atom_budget));
  }
  const bool fast = scenario.lower.solver == SolverChoice::kDp &&
                    scenario.lower.policy.kind == PricingKind::kVcg;
  const auto at = [&](std::size_t i, std::size_t j, std::size_t k) {
    return (i * ps.size() + j) * as.size() + k;
  };

  UpperBids bids;
  bids.instance.weights = scenario.weights;
  bids.instance.sellers.push_back(
      CapacityVector{up.subchannels, up.power, up.antennas});
  bids.resale.resize(scenario.mvnos.size());
  for (std::size_t m = 0; m < scenario.mvnos.size(); ++m) {
    std::vector<double> value(points, 0.0);
    for (std::size_t k = 0; k < as.size(); ++k) {
      if (fast) {
        const auto revenue = dp_vcg_revenues(scenario, m, as[k], cs, ps);
        for (std::size_t i = 0; i < cs.size(); ++i) {
          for (std::size_t j = 0; j < ps.size(); ++j) {
            value[at(i, j, k)] = std::max(
                0.0, revenue[i * ps.size() + j] - scenario.mvnos[m].reservation_cost);
          }
        }
      } else {
        for (std::size_t i = 0; i < cs.size(); ++i) {
          for (std::size_t j = 0; j < ps.size(); ++j) {
            value[at(i, j, k)] =
                mvno_valuation(scenario, m, ResourceBundle{cs[i], ps[j], as[k]});
          }
        }
      }
    }
    // Free disposal: a bundle is worth at least any grid bundle it contains.
    std::vector<std::size_t> source(points);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = 0; j < ps.size(); ++j) {
        for (std::size_t k = 0; k < as.size(); ++k) {
          const std::size_t here = at(i, j, k);
          source[here] = here;
          double best = value[here];
          const auto consider = [&](std::size_t below) {
            if (value[below] > best) {
              best = value[below];
              source[here] = source[below];
            }
          };
          if (i > 0) consider(at(i - 1, j, k));
          if (j > 0) consider(at(i, j - 1, k));
          if (k > 0) consider(at(i, j, k - 1));
          value[here] = best;
        }
      }
    }
    Bid bid{BidderId{static_cast<std::int64_t>(m)}, {}, true};
    const BasePrices& base = scenario.upper.policy.base;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = 0; j < ps.size(); ++j) {
        for (std::size_t k = 0; k < as.size(); ++k) {
          const std::size_t here = at(i, j, k);
          const ResourceBundle bundle{cs[i], ps[j], as[k]};
          if (!(value[here] > 0.0) || value[here] < base_price(bundle, base, true)) {
            continue;
          }
          const std::size_t src = source[here];
          const std::size_t si = src / (ps.size() * as.size());
          const std::size_t sj = (src / as.size()) % ps.size();
          const std::size_t sk = src % as.size();
          bid.atoms.push_back(Atom{bundle, value[here]});
          bids.resale[m].push_back(ResourceBundle{cs[si], ps[sj], as[sk]});
        }
      }
    }
    if (!bid.atoms.empty()) bids.instance.bids.push_back(std::move(bid));
  }
  return bids;
}

HierOutcome run_hierarchical(const Scenario& scenario) {
  return run_hierarchical(scenario, build_mvno_bids(scenario));
}

HierOutcome run_hierarchical(const Scenario& scenario, const UpperBids& bids) {
  validate(scenario);
  UpperStage stage = clear_upper(scenario, bids);
  HierOutcome outcome;
  outcome.upper = std::move(stage.upper);
  const Solver solver = lower_solver(scenario.lower);
  std::vector<bool> served;
  for (std::size_t m = 0; m < scenario.mvnos.size(); ++m) {
    const MvnoSpec& spec = scenario.mvnos[m];
    outcome.slices.push_back(spec.reserved + stage.extras[m]);
    outcome.lower_instances.push_back(
        slice_instance(scenario, spec.users, outcome.slices.back()));
    outcome.lower.push_back(apply_pricing(outcome.lower_instances.back(), solver,
                                          scenario.lower.policy));
    served.push_back(!outcome.lower.back().allocation.grants.empty());
    const double paid =
        outcome.upper->price(BidderId{static_cast<std::int64_t>(m)});
    outcome.mvno_utility.push_back(outcome.lower.back().revenue() - paid -
                                   spec.reservation_cost);
  }
  fill_metrics(scenario, outcome, served);
  return outcome;
}

HierOutcome run_fixed_sharing(const Scenario& scenario) {
  validate(scenario);
  const auto count = static_cast<std::int64_t>(scenario.mvnos.size());
  HierOutcome outcome;
  if (count == 0) return outcome;
  const ResourceBundle& inp = scenario.inp;
  const ResourceBundle share{inp.subchannels / count, inp.power / count,
                             inp.antennas / count};
  const ResourceBundle remainder{inp.subchannels % count, inp.power % count,
                                 inp.antennas % count};
  const Solver solver = lower_solver(scenario.lower);
  std::vector<bool> served;
  for (std::size_t m = 0; m < scenario.mvnos.size(); ++m) {
    const MvnoSpec& spec = scenario.mvnos[m];
    outcome.slices.push_back(m == 0 ? share + remainder : share);
    outcome.lower_instances.push_back(
        slice_instance(scenario, spec.users, outcome.slices.back()));
    outcome.lower.push_back(apply_pricing(outcome.lower_instances.back(), solver,
                                          scenario.lower.policy));
    served.push_back(!outcome.lower.back().allocation.grants.empty());
    outcome.mvno_utility.push_back(outcome.lower.back().revenue() -
                                   spec.reservation_cost);
  }
  fill_metrics(scenario, outcome, served);
  return outcome;
}

HierOutcome run_general_sharing(const Scenario& scenario) {
  validate(scenario);
  std::vector<UserProfile> everyone;
  for (const MvnoSpec& m : scenario.mvnos) {
    everyone.insert(everyone.end(), m.users.begin(), m.users.end());
  }
  HierOutcome outcome;
  outcome.slices.push_back(scenario.inp);
  outcome.lower_instances.push_back(slice_instance(scenario, everyone, scenario.inp));
  outcome.lower.push_back(apply_pricing(outcome.lower_instances.back(),
                                        lower_solver(scenario.lower),
                                        scenario.lower.policy));
  fill_metrics(scenario, outcome,
               {!outcome.lower.back().allocation.grants.empty()});
  return outcome;
}

HierOutcome run_multiseller(const Scenario& scenario, MultiSellerMode mode) {
  validate(scenario);
  UpperStage stage = clear_upper(scenario, build_mvno_bids(scenario));
  HierOutcome outcome;
  outcome.upper = std::move(stage.upper);

  WdpInstance pooled;
  pooled.weights = scenario.weights;
  for (std::size_t m = 0; m < scenario.mvnos.size(); ++m) {
    const MvnoSpec& spec = scenario.mvnos[m];
    outcome.slices.push_back(spec.reserved + stage.extras[m]);
    pooled.sellers.push_back(lower_capacity(scenario, outcome.slices.back()));
    append_user_bids(scenario, spec.users, outcome.slices.back().antennas,
                     pooled.bids);
  }
  if (pooled.sellers.empty()) {
    fill_metrics(scenario, outcome, {});
    return outcome;
  }
  PricingPolicy policy = scenario.lower.policy;
  Solver solver;
  if (mode == MultiSellerMode::kExact) {
    policy.kind = PricingKind::kVcg;
    solver = [](const WdpInstance& instance) {
      return solve_ms_branch_and_bound(instance);
    };
  } else {
    policy.kind = PricingKind::kGreedyCritical;
    policy.allow_general = true;
    solver = solve_ms_heuristic;
  }
  outcome.lower_instances.push_back(pooled);
  outcome.lower.push_back(apply_pricing(pooled, solver, policy));

  const PricedOutcome& lower = outcome.lower.back();
  std::vector<bool> served(scenario.mvnos.size(), false);
  std::vector<double> revenue(scenario.mvnos.size(), 0.0);
  for (auto it = lower.allocation.grants.rbegin();
       it != lower.allocation.grants.rend(); ++it) {
    served[it->second.seller] = true;
    revenue[it->second.seller] += lower.price(it->first);
  }
  for (std::size_t m = 0; m < scenario.mvnos.size(); ++m) {
    const double paid =
        outcome.upper->price(BidderId{static_cast<std::int64_t>(m)});
    outcome.mvno_utility.push_back(revenue[m] - paid -
                                   scenario.mvnos[m].reservation_cost);
  }
  fill_metrics(scenario, outcome, served);
  return outcome;
}

}  // namespace hca
