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

// Dense stage-by-state value table shared by the DP solvers, the surrogate
// bound and the branch-and-bound suffix bounds. Internal to the core library.

#ifndef HCA_SRC_LATTICE_DP_HPP_
#define HCA_SRC_LATTICE_DP_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "hca/types.hpp"

namespace hca::internal {

// Capacity lattice. `antennas` is the antenna capacity when it constrains,
// otherwise 0 and atom antennas are ignored. Slots are counted in groups.
struct Lattice {
  std::int64_t slots = 0;
  std::int64_t power = 0;
  std::int64_t antennas = 0;
  bool antenna_axis = false;
  std::int64_t group = 1;

  static Lattice from_capacity(const CapacityVector& capacity,
                               std::int64_t group = 1);

  std::size_t size() const {
    return static_cast<std::size_t>((slots + 1) * (power + 1) * (antennas + 1));
  }
  std::size_t index(std::int64_t s, std::int64_t p, std::int64_t a) const {
    return static_cast<std::size_t>((s * (power + 1) + p) * (antennas + 1) + a);
  }
  // Index of a residual capacity clamped to the lattice.
  std::size_t index_of(const CapacityVector& residual) const;
};

// f(t, e): best value of the first t stages within capacity e. Row 0 is the
// empty problem; each later row adds one stage (bid) with a decline move and
// one move per fitting atom.
class LatticeTable {
 public:
  // Throws SizeError when the table would exceed kMaxCells doubles.
  static constexpr std::size_t kMaxCells = 60'000'000;

  LatticeTable(const Lattice& lattice, std::vector<const Bid*> stages);

  const Lattice& lattice() const { return lattice_; }
  std::size_t rows() const { return stages_.size() + 1; }
  double value(std::size_t row, std::size_t cell) const {
    return table_[row * lattice_.size() + cell];
  }
  std::uint64_t transitions() const { return transitions_; }

  // Walk back from the last row at full capacity, deciding the last stage
  // first. A stage takes the lowest-index atom that attains the optimum and
  // declines only when no atom does.
  std::map<BidderId, Grant> backtrace(std::size_t seller = 0) const;
  // The same walk started from an arbitrary capacity cell.
  std::map<BidderId, Grant> backtrace_from(std::size_t cell,
                                           std::size_t seller = 0) const;

 private:
  struct Move {
    std::int64_t ds, dp, da;
    std::size_t offset;
    double value;
    std::size_t atom;
  };

  Lattice lattice_;
  std::vector<const Bid*> stages_;
  std::vector<std::vector<Move>> moves_;
  std::vector<double> table_;
  std::uint64_t transitions_ = 0;
};

// Bids sorted by descending bidder id, the stage order that makes the
// backtrace resolve ties in favour of low ids.
std::vector<const Bid*> descending_id_stages(const WdpInstance& instance);

}  // namespace hca::internal

#endif  // HCA_SRC_LATTICE_DP_HPP_
