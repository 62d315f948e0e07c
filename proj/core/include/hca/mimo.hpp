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

// Deterministic massive-MIMO rate model. The SINR of a user served with
// transmit SNR rho by `antennas` base-station antennas is
//
//   sinr = 1 / (Lbar / (rho * antennas) + alpha * (Lbar - 1)),
//   Lbar = 1 + alpha * (L - 1),
//
// where the alpha * (Lbar - 1) term is pilot contamination and caps the SINR.
// Subchannels assigned to one user are homogeneous, so power is split evenly
// and the rate is c * W * log2(1 + sinr(rho per subchannel)).

#ifndef HCA_MIMO_HPP_
#define HCA_MIMO_HPP_

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "hca/types.hpp"

namespace hca {

struct RadioConfig {
  double bandwidth = 1.0;     // W, Hz per subchannel
  std::int64_t cells = 7;     // L
  double alpha = 0.1;         // intercell interference factor
  double power_unit = 1.0;    // watts per power unit
  double noise_ref = 1.0;     // watts giving rho = 1 on one subchannel

  double effective_cells() const {
    return 1.0 + alpha * static_cast<double>(cells - 1);
  }
  double pilot_contamination() const {
    return alpha * (effective_cells() - 1.0);
  }
  // 1 / (alpha * (Lbar - 1)), or nullopt when there is no contamination.
  std::optional<double> sinr_ceiling() const;
};

// Throws ConfigError for L < 1, alpha outside [0, 1], or non-positive
// bandwidth, power unit or noise reference.
void validate(const RadioConfig& config);

struct ExplicitDemand {
  ResourceBundle bundle;  // antennas ignored: users get the whole slice
};

struct ImplicitDemand {
  double target_rate = 0.0;  // bits/s
};

struct UserProfile {
  BidderId id;
  double delta = 1.0;  // value per bit/s
  std::variant<ExplicitDemand, ImplicitDemand> demand;

  bool is_explicit() const {
    return std::holds_alternative<ExplicitDemand>(demand);
  }
};

// Throws DomainError when rho <= 0 or antennas == 0.
double sinr_approx(double rho, std::int64_t antennas, const RadioConfig& config);

// Transmit SNR per subchannel when `power_units` are spread over
// `subchannels`.
double snr_per_subchannel(std::int64_t subchannels, std::int64_t power_units,
                          const RadioConfig& config);

// Zero when either subchannels or power is zero.
double rate(std::int64_t subchannels, std::int64_t power_units,
            std::int64_t antennas, const RadioConfig& config);

// Smallest integer power-unit count whose rate on `subchannels` reaches
// `target_rate`, or nullopt when the target needs an SINR at or above the
// pilot-contamination ceiling.
std::optional<std::int64_t> required_power(double target_rate,
                                           std::int64_t subchannels,
                                           std::int64_t antennas,
                                           const RadioConfig& config);

// Feasible allocation profiles of an implicit-demand user, one per
// subchannel count in 1..max_subchannels, each valued delta * target_rate.
// These are the XOR atoms of the user's bid; empty if none is feasible.
std::vector<Atom> enumerate_profiles(const UserProfile& user,
                                     std::int64_t max_subchannels,
                                     std::int64_t antennas,
                                     const RadioConfig& config);

// delta * rate(bundle) for an explicit-demand user.
double explicit_value(const UserProfile& user, std::int64_t antennas,
                      const RadioConfig& config);

}  // namespace hca

#endif  // HCA_MIMO_HPP_
