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

// Scenario generation, multi-scheme experiments and result tables.

#ifndef HCA_HARNESS_HPP_
#define HCA_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hca/hierarchy.hpp"

namespace hca {

enum class SchemeKind { kFs, kGs, kDpa, kGa, kMs1, kMs2 };

struct Scheme {
  SchemeKind kind = SchemeKind::kGs;
  std::int64_t group_size = 1;  // kDpa only

  // "FS", "GS", "DPA:<g>", "GA", "MS1", "MS2". ConfigError otherwise.
  static Scheme parse(const std::string& text);
  std::string label() const;
  friend bool operator==(const Scheme&, const Scheme&) = default;
};

// Per-user demand draws. Explicit users draw c and p uniformly from
// {0..max}; implicit users draw a target rate from [rate_min, rate_max].
struct DemandModel {
  std::int64_t max_subchannels = 2;
  std::int64_t max_power = 10;
  double delta_min = 0.5;
  double delta_max = 1.5;
  double implicit_fraction = 0.0;
  double rate_min = 1.0;
  double rate_max = 6.0;
};

struct ScenarioTemplate {
  std::string name = "desk";
  RadioConfig radio;
  ResourceBundle inp{20, 100, 40};
  std::int64_t mvnos = 2;
  std::int64_t users_per_mvno = 10;
  ResourceBundle reserved_per_mvno{6, 30, 10};
  double reservation_cost = 0.0;
  std::int64_t users_per_subchannel = 1;
  std::int64_t max_profile_subchannels = 4;
  Weights weights;
  BasePrices lower_base{0.5, 0.05, 0.0};
  BasePrices upper_base{};
  UpperGrid grid;
  DemandModel demand;
};

// 100 subchannels, 500 power units, 200 antennas, 2 MVNOs reserving
// (30, 150, 50) each, 50 users each.
ScenarioTemplate paper_template();
// The same shape shrunk: 20 subchannels, 100 power units, 40 antennas,
// 2 MVNOs reserving (6, 30, 10) each, 10 users each.
ScenarioTemplate desk_template();
// ConfigError for an unknown name.
ScenarioTemplate template_by_name(const std::string& name);

// Deterministic in (template, seed). User ids are 1, 2, ... across MVNOs in
// order. ConfigError when reservations exceed the InP totals.
Scenario generate_scenario(const ScenarioTemplate& tmpl, std::uint64_t seed);

// Same draws as generate_scenario for `tmpl.mvnos * tmpl.users_per_mvno`
// users and the same total reservation, re-partitioned over `count` MVNOs:
// users round-robin, reservation shares rounded down with the remainders
// handed out one unit at a time from MVNO 0.
Scenario generate_partitioned(const ScenarioTemplate& tmpl, std::uint64_t seed,
                              std::int64_t count);

// Solver, pricing and grouping settings a scheme runs with.
Scenario configure_for(const Scenario& scenario, const Scheme& scheme);

// Runs one scheme on one scenario.
HierOutcome run_scheme(const Scenario& scenario, const Scheme& scheme);

struct ExperimentConfig {
  std::vector<Scheme> schemes;
  std::int64_t seeds = 1;
  std::uint64_t first_seed = 1;
  ScenarioTemplate tmpl = desk_template();
  std::vector<std::int64_t> sweep_counts;  // empty: no sweep
  std::string out;                         // empty: stdout
  int jobs = 1;
  bool force = false;
  double state_budget = 1e9;
};

// ConfigError on an empty scheme list, seeds < 1 or jobs < 1.
void validate(const ExperimentConfig& config);

// Applies a JSON document over `config` (keys absent keep their values).
// ConfigError on malformed documents.
void apply_json(const nlohmann::json& doc, ExperimentConfig& config);

// Dominant work per seed: upper-level DP transitions at the finest grouping.
double state_space_estimate(const ExperimentConfig& config);

struct ResultRow {
  std::string kind;  // "run", "skip", "mean" or "stderr"
  std::string scheme;
  std::int64_t seed = 0;  // 0 on aggregate rows
  std::int64_t mvnos = 0;
  Metrics metrics;
  double normalized_welfare = 0.0;
  bool has_normalized = false;
  bool optimal = true;
  std::string note;
};

struct ResultTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<ResultRow> rows;
};

// Rows ordered by (scheme in config order, seed), then aggregates per scheme.
ResultTable run_experiment(const ExperimentConfig& config);

// One block of rows per MVNO count, scheme list and seeds from `config`.
ResultTable sweep_mvno_count(const ExperimentConfig& config,
                             const std::vector<std::int64_t>& counts);

void write_csv(const ResultTable& table, std::ostream& out);

// Long-format series for plotting: figure, series, x, mean, stderr.
void write_plot_data(const ResultTable& table, std::ostream& out);

}  // namespace hca

#endif  // HCA_HARNESS_HPP_
