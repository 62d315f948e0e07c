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

#include <string>

#include "hca/auction_core.hpp"
#include "hca/errors.hpp"
#include "hca/solvers.hpp"
#include "lattice_dp.hpp"

namespace hca {

namespace {

SolverReport solve_on_lattice(const WdpInstance& instance,
                              const CapacityVector& capacity,
                              std::int64_t group) {
  const internal::LatticeTable table(
      internal::Lattice::from_capacity(capacity, group),
      internal::descending_id_stages(instance));
  SolverReport report;
  report.allocation = make_allocation(instance, table.backtrace(0));
  report.optimal = true;
  report.nodes_explored = table.transitions();
  return report;
}

void require_single_seller(const WdpInstance& instance, const char* who) {
  if (instance.sellers.size() != 1) {
    throw ContractError(std::string(who) + ": expects exactly one seller");
  }
}

}  // namespace

SolverReport solve_dp_single_minded(const WdpInstance& instance) {
  validate(instance);
  require_single_seller(instance, "solve_dp_single_minded");
  if (!all_single_minded(instance)) {
    throw ContractError("solve_dp_single_minded: every bid must have one atom");
  }
  return solve_on_lattice(instance, instance.sellers.front(), 1);
}

SolverReport solve_dp_general_xor(const WdpInstance& instance) {
  validate(instance);
  require_single_seller(instance, "solve_dp_general_xor");
  return solve_on_lattice(instance, instance.sellers.front(), 1);
}

SolverReport solve_upper_dp(const WdpInstance& instance,
                            std::int64_t group_size) {
  if (group_size < 1) throw ContractError("solve_upper_dp: group_size < 1");
  validate(instance);
  require_single_seller(instance, "solve_upper_dp");
  for (const Bid& bid : instance.bids) {
    for (const Atom& atom : bid.atoms) {
      if (atom.bundle.subchannels % group_size != 0) {
        throw ContractError(
            "solve_upper_dp: atom subchannels not a multiple of group_size");
      }
    }
  }
  return solve_on_lattice(instance, instance.sellers.front(), group_size);
}

double surrogate_bound(const WdpInstance& instance) {
  validate(instance);
  const CapacityVector pooled = pooled_capacity(instance.sellers);
  const internal::LatticeTable table(internal::Lattice::from_capacity(pooled),
                                     internal::descending_id_stages(instance));
  return table.value(table.rows() - 1, table.lattice().size() - 1);
}

}  // namespace hca
