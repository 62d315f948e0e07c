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

#include "hca/mimo.hpp"

#include <cmath>

#include "hca/errors.hpp"

namespace hca {

namespace {

// Beyond this many power units the inversion is treated as unreachable; the
// target sits so close to the ceiling that doubles cannot resolve it.
constexpr double kMaxPowerUnits = 1e12;

}  // namespace

std::optional<double> RadioConfig::sinr_ceiling() const {
  const double contamination = pilot_contamination();
  if (contamination > 0.0) return 1.0 / contamination;
  return std::nullopt;
}

void validate(const RadioConfig& config) {
  if (config.cells < 1) throw ConfigError("radio: cells must be >= 1");
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
    throw ConfigError("radio: alpha must lie in [0, 1]");
  }
  if (!(config.bandwidth > 0.0) || !(config.power_unit > 0.0) ||
      !(config.noise_ref > 0.0)) {
    throw ConfigError("radio: bandwidth, power_unit, noise_ref must be > 0");
  }
}

double sinr_approx(double rho, std::int64_t antennas,
                   const RadioConfig& config) {
  if (!(rho > 0.0)) throw DomainError("sinr_approx: rho must be positive");
  if (antennas <= 0) throw DomainError("sinr_approx: need at least one antenna");
  const double lbar = config.effective_cells();
  return 1.0 / (lbar / (rho * static_cast<double>(antennas)) +
                config.pilot_contamination());
}

double snr_per_subchannel(std::int64_t subchannels, std::int64_t power_units,
                          const RadioConfig& config) {
  return config.power_unit * static_cast<double>(power_units) /
         (static_cast<double>(subchannels) * config.noise_ref);
}

double rate(std::int64_t subchannels, std::int64_t power_units,
            std::int64_t antennas, const RadioConfig& config) {
  if (subchannels <= 0 || power_units <= 0) return 0.0;
  const double rho = snr_per_subchannel(subchannels, power_units, config);
  return static_cast<double>(subchannels) * config.bandwidth *
         std::log2(1.0 + sinr_approx(rho, antennas, config));
}

std::optional<std::int64_t> required_power(double target_rate,
                                           std::int64_t subchannels,
                                           std::int64_t antennas,
                                           const RadioConfig& config) {
  if (!(target_rate > 0.0)) {
    throw DomainError("required_power: target rate must be positive");
  }
  if (subchannels <= 0) {
    throw DomainError("required_power: need at least one subchannel");
  }
  if (antennas <= 0) throw DomainError("required_power: need an antenna");

  const double c = static_cast<double>(subchannels);
  const double sinr =
      std::exp2(target_rate / (c * config.bandwidth)) - 1.0;
  if (auto ceiling = config.sinr_ceiling(); ceiling && sinr >= *ceiling) {
    return std::nullopt;
  }
  const double rho =
      config.effective_cells() /
      (static_cast<double>(antennas) * (1.0 / sinr - config.pilot_contamination()));
  const double exact_units = rho * c * config.noise_ref / config.power_unit;
  if (!std::isfinite(exact_units) || exact_units > kMaxPowerUnits) {
    return std::nullopt;
  }

  // Settle rounding of the closed form against the forward model.
  auto units = static_cast<std::int64_t>(std::ceil(exact_units));
  if (units < 1) units = 1;
  while (rate(subchannels, units, antennas, config) < target_rate) {
    ++units;
    if (static_cast<double>(units) > kMaxPowerUnits) return std::nullopt;
  }
  while (units > 1 &&
         rate(subchannels, units - 1, antennas, config) >= target_rate) {
    --units;
  }
  return units;
}

std::vector<Atom> enumerate_profiles(const UserProfile& user,
                                     std::int64_t max_subchannels,
                                     std::int64_t antennas,
                                     const RadioConfig& config) {
  const auto* demand = std::get_if<ImplicitDemand>(&user.demand);
  if (demand == nullptr) {
    throw ContractError("enumerate_profiles: user has explicit demand");
  }
  std::vector<Atom> atoms;
  const double value = user.delta * demand->target_rate;
  for (std::int64_t c = 1; c <= max_subchannels; ++c) {
    auto units = required_power(demand->target_rate, c, antennas, config);
    if (!units) continue;
    atoms.push_back(Atom{ResourceBundle{c, *units, antennas}, value});
  }
  return atoms;
}

double explicit_value(const UserProfile& user, std::int64_t antennas,
                      const RadioConfig& config) {
  const auto* demand = std::get_if<ExplicitDemand>(&user.demand);
  if (demand == nullptr) {
    throw ContractError("explicit_value: user has implicit demand");
  }
  const ResourceBundle& b = demand->bundle;
  return user.delta * rate(b.subchannels, b.power, antennas, config);
}

}  // namespace hca
