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

#include "hca/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <initializer_list>
#include <ostream>
#include <thread>

#include "hca/errors.hpp"
#include "hca/rng.hpp"

namespace hca {

namespace {

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

struct UserDraw {
  bool implicit;
  double delta;
  std::int64_t c, p;
  double rate;
};

std::vector<UserDraw> draw_users(const ScenarioTemplate& tmpl,
                                 std::uint64_t seed, std::int64_t count) {
  SplitMix64 rng = SplitMix64::stream(seed, 0);
  const DemandModel& d = tmpl.demand;
  std::vector<UserDraw> users;
  users.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    UserDraw u{};
    u.implicit = rng.uniform01() < d.implicit_fraction;
    u.delta = rng.uniform_real(d.delta_min, d.delta_max);
    u.c = rng.uniform_int(0, d.max_subchannels);
    u.p = rng.uniform_int(0, d.max_power);
    u.rate = rng.uniform_real(d.rate_min, d.rate_max);
    users.push_back(u);
  }
  return users;
}

UserProfile to_profile(const UserDraw& draw, std::int64_t id) {
  UserProfile user;
  user.id = BidderId{id};
  user.delta = draw.delta;
  if (draw.implicit) {
    user.demand = ImplicitDemand{draw.rate};
  } else {
    user.demand = ExplicitDemand{ResourceBundle{draw.c, draw.p, 0}};
  }
  return user;
}

Scenario base_scenario(const ScenarioTemplate& tmpl) {
  Scenario s;
  s.radio = tmpl.radio;
  s.inp = tmpl.inp;
  s.users_per_subchannel = tmpl.users_per_subchannel;
  s.max_profile_subchannels = tmpl.max_profile_subchannels;
  s.weights = tmpl.weights;
  s.grid = tmpl.grid;
  s.lower.policy.base = tmpl.lower_base;
  s.upper.policy.base = tmpl.upper_base;
  return s;
}

void validate_template(const ScenarioTemplate& tmpl) {
  if (tmpl.mvnos < 1) throw ConfigError("template needs at least one MVNO");
  if (tmpl.users_per_mvno < 0) throw ConfigError("users_per_mvno must be >= 0");
  const DemandModel& d = tmpl.demand;
  if (!(d.delta_min > 0.0) || d.delta_max < d.delta_min) {
    throw ConfigError("delta range must be positive and ordered");
  }
  if (d.max_subchannels < 0 || d.max_power < 0) {
    throw ConfigError("demand maxima must be non-negative");
  }
  if (!(d.rate_min > 0.0) || d.rate_max < d.rate_min) {
    throw ConfigError("rate range must be positive and ordered");
  }
}

bool is_exact(const Scheme& scheme) {
  return scheme.kind != SchemeKind::kGa && scheme.kind != SchemeKind::kMs2;
}

ResultRow run_row(const Scenario& scenario, const Scheme& scheme,
                  std::uint64_t seed, std::int64_t mvnos) {
  ResultRow row;
  row.scheme = scheme.label();
  row.seed = static_cast<std::int64_t>(seed);
  row.mvnos = mvnos;
  row.optimal = is_exact(scheme);
  try {
    row.metrics = run_scheme(scenario, scheme).metrics;
    row.kind = "run";
  } catch (const SizeError& e) {
    row.kind = "skip";
    row.note = e.what();
  } catch (const PolicyError& e) {
    // Exact schemes only reach this when the search budget leaves the
    // allocation unproven.
    if (!is_exact(scheme)) throw;
    row.kind = "skip";
    row.note = std::string("search budget exhausted: ") + e.what();
  }
  return row;
}

// Runs `work(seed)` for every seed on up to `jobs` threads; results land in
// seed order regardless of completion order. The first failure by seed order
// is rethrown after all threads finish.
template <typename Fn>
std::vector<std::vector<ResultRow>> per_seed(const ExperimentConfig& config,
                                             Fn&& work) {
  const auto n = static_cast<std::size_t>(config.seeds);
  std::vector<std::vector<ResultRow>> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = work(config.first_seed + i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, config.jobs)));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

double mean_of(const std::vector<double>& xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  return xs.empty() ? 0.0 : total / static_cast<double>(xs.size());
}

double stderr_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1)) /
         std::sqrt(static_cast<double>(xs.size()));
}

// Appends mean and stderr rows for one scheme block and fills the normalized
// column of its run rows.
void aggregate(std::vector<ResultRow>& rows, std::size_t begin, std::size_t end,
               const std::string& scheme, std::int64_t mvnos,
               double gs_mean, bool has_gs) {
  std::vector<ResultRow*> runs;
  for (std::size_t i = begin; i < end; ++i) {
    if (rows[i].kind == "run") runs.push_back(&rows[i]);
  }
  const bool normalize = has_gs && gs_mean > 0.0;
  for (ResultRow* r : runs) {
    r->has_normalized = normalize;
    if (normalize) r->normalized_welfare = r->metrics.social_welfare / gs_mean;
  }
  const auto column = [&](auto get) {
    std::vector<double> xs;
    for (const ResultRow* r : runs) xs.push_back(get(*r));
    return xs;
  };
  const std::vector<std::vector<double>> cols = {
      column([](const ResultRow& r) { return r.metrics.social_welfare; }),
      column([](const ResultRow& r) { return r.normalized_welfare; }),
      column([](const ResultRow& r) { return r.metrics.upper_welfare; }),
      column([](const ResultRow& r) { return r.metrics.util_subchannel; }),
      column([](const ResultRow& r) { return r.metrics.util_power; }),
      column([](const ResultRow& r) { return r.metrics.util_antenna; }),
      column([](const ResultRow& r) { return r.metrics.satisfaction; })};
  const bool optimal = !runs.empty() && runs.front()->optimal;
  const std::string note = "n=" + std::to_string(runs.size());
  for (const char* kind : {"mean", "stderr"}) {
    const bool is_mean = std::string(kind) == "mean";
    const auto stat = [&](std::size_t c) {
      return is_mean ? mean_of(cols[c]) : stderr_of(cols[c]);
    };
    ResultRow agg;
    agg.kind = kind;
    agg.scheme = scheme;
    agg.mvnos = mvnos;
    agg.metrics.social_welfare = stat(0);
    agg.normalized_welfare =
        is_mean ? (normalize ? agg.metrics.social_welfare / gs_mean : 0.0) : stat(1);
    agg.has_normalized = normalize;
    agg.metrics.upper_welfare = stat(2);
    agg.metrics.util_subchannel = stat(3);
    agg.metrics.util_power = stat(4);
    agg.metrics.util_antenna = stat(5);
    agg.metrics.satisfaction = stat(6);
    agg.optimal = optimal;
    agg.note = note;
    rows.push_back(agg);
  }
}

// Reorders seed-major results into scheme blocks and aggregates them.
void assemble(const ExperimentConfig& config,
              const std::vector<std::vector<ResultRow>>& by_seed,
              std::int64_t mvnos, std::vector<ResultRow>& out) {
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t s = 0; s < config.schemes.size(); ++s) {
    const std::size_t begin = out.size();
    for (const auto& seed_rows : by_seed) out.push_back(seed_rows[s]);
    blocks.emplace_back(begin, out.size());
  }
  double gs_mean = 0.0;
  bool has_gs = false;
  for (std::size_t s = 0; s < config.schemes.size(); ++s) {
    if (config.schemes[s].kind != SchemeKind::kGs) continue;
    std::vector<double> xs;
    for (std::size_t i = blocks[s].first; i < blocks[s].second; ++i) {
      if (out[i].kind == "run") xs.push_back(out[i].metrics.social_welfare);
    }
    gs_mean = mean_of(xs);
    has_gs = true;
    break;
  }
  for (std::size_t s = 0; s < config.schemes.size(); ++s) {
    aggregate(out, blocks[s].first, blocks[s].second, config.schemes[s].label(),
              mvnos, gs_mean, has_gs);
  }
}

std::vector<std::pair<std::string, std::string>> metadata(
    const ExperimentConfig& config) {
  const ScenarioTemplate& t = config.tmpl;
  std::string schemes;
  for (const Scheme& s : config.schemes) {
    if (!schemes.empty()) schemes += ';';
    schemes += s.label();
  }
  return {{"template", t.name},
          {"rng", "splitmix64"},
          {"first_seed", std::to_string(config.first_seed)},
          {"seeds", std::to_string(config.seeds)},
          {"schemes", schemes},
          {"inp", std::to_string(t.inp.subchannels) + "/" +
                      std::to_string(t.inp.power) + "/" +
                      std::to_string(t.inp.antennas)},
          {"mvnos", std::to_string(t.mvnos)},
          {"users_per_mvno", std::to_string(t.users_per_mvno)},
          {"delta_min", format_number(t.demand.delta_min)},
          {"delta_max", format_number(t.demand.delta_max)},
          {"bandwidth", format_number(t.radio.bandwidth)},
          {"cells", std::to_string(t.radio.cells)},
          {"alpha", format_number(t.radio.alpha)},
          {"J", std::to_string(t.users_per_subchannel)},
          {"lower_base", format_number(t.lower_base.subchannel) + "/" +
                             format_number(t.lower_base.power)},
          {"upper_base", format_number(t.upper_base.subchannel) + "/" +
                             format_number(t.upper_base.power) + "/" +
                             format_number(t.upper_base.antenna)}};
}

std::string csv_field(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '"') c = ';';
  }
  return text;
}

template <typename T>
void read(const nlohmann::json& doc, const char* key, T& target) {
  if (doc.contains(key)) target = doc.at(key).get<T>();
}

// ConfigError naming the first key of `doc` outside `known`.
void reject_unknown(const nlohmann::json& doc, std::initializer_list<const char*> known,
                    const std::string& where) {
  if (!doc.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& item : doc.items()) {
    const bool ok = std::any_of(known.begin(), known.end(),
                                [&](const char* k) { return item.key() == k; });
    if (!ok) throw ConfigError("unknown key '" + item.key() + "' in " + where);
  }
}

void read_bundle(const nlohmann::json& doc, const char* key,
                 ResourceBundle& bundle) {
  if (!doc.contains(key)) return;
  const auto& b = doc.at(key);
  reject_unknown(b, {"subchannels", "power", "antennas"}, key);
  read(b, "subchannels", bundle.subchannels);
  read(b, "power", bundle.power);
  read(b, "antennas", bundle.antennas);
}

void read_base(const nlohmann::json& doc, const char* key, BasePrices& base) {
  if (!doc.contains(key)) return;
  const auto& b = doc.at(key);
  reject_unknown(b, {"subchannel", "power", "antenna"}, key);
  read(b, "subchannel", base.subchannel);
  read(b, "power", base.power);
  read(b, "antenna", base.antenna);
}

}  // namespace

Scheme Scheme::parse(const std::string& text) {
  if (text == "FS") return {SchemeKind::kFs, 1};
  if (text == "GS") return {SchemeKind::kGs, 1};
  if (text == "GA") return {SchemeKind::kGa, 1};
  if (text == "MS1") return {SchemeKind::kMs1, 1};
  if (text == "MS2") return {SchemeKind::kMs2, 1};
  if (text.rfind("DPA:", 0) == 0) {
    std::int64_t g = 0;
    const char* first = text.data() + 4;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, g);
    if (ec == std::errc() && ptr == last && g >= 1) return {SchemeKind::kDpa, g};
  }
  throw ConfigError("unknown scheme '" + text + "'");
}

std::string Scheme::label() const {
  switch (kind) {
    case SchemeKind::kFs: return "FS";
    case SchemeKind::kGs: return "GS";
    case SchemeKind::kDpa: return "DPA:" + std::to_string(group_size);
    case SchemeKind::kGa: return "GA";
    case SchemeKind::kMs1: return "MS1";
    case SchemeKind::kMs2: return "MS2";
  }
  return "?";
}

ScenarioTemplate paper_template() {
  ScenarioTemplate t;
  t.name = "paper";
  t.inp = ResourceBundle{100, 500, 200};
  t.mvnos = 2;
  t.users_per_mvno = 50;
  t.reserved_per_mvno = ResourceBundle{30, 150, 50};
  return t;
}

ScenarioTemplate desk_template() { return ScenarioTemplate{}; }

ScenarioTemplate template_by_name(const std::string& name) {
  if (name == "paper") return paper_template();
  if (name == "desk") return desk_template();
  throw ConfigError("unknown template '" + name + "'");
}

Scenario generate_scenario(const ScenarioTemplate& tmpl, std::uint64_t seed) {
  validate_template(tmpl);
  Scenario s = base_scenario(tmpl);
  const auto users = draw_users(tmpl, seed, tmpl.mvnos * tmpl.users_per_mvno);
  std::int64_t id = 1;
  for (std::int64_t m = 0; m < tmpl.mvnos; ++m) {
    MvnoSpec spec;
    spec.reserved = tmpl.reserved_per_mvno;
    spec.reservation_cost = tmpl.reservation_cost;
    for (std::int64_t u = 0; u < tmpl.users_per_mvno; ++u, ++id) {
      spec.users.push_back(to_profile(users[static_cast<std::size_t>(id - 1)], id));
    }
    s.mvnos.push_back(std::move(spec));
  }
  validate(s);
  return s;
}

Scenario generate_partitioned(const ScenarioTemplate& tmpl, std::uint64_t seed,
                              std::int64_t count) {
  validate_template(tmpl);
  if (count < 1) throw ConfigError("MVNO count must be >= 1");
  Scenario s = base_scenario(tmpl);
  const std::int64_t total_users = tmpl.mvnos * tmpl.users_per_mvno;
  const auto users = draw_users(tmpl, seed, total_users);
  const ResourceBundle& r = tmpl.reserved_per_mvno;
  const ResourceBundle total{r.subchannels * tmpl.mvnos, r.power * tmpl.mvnos,
                             r.antennas * tmpl.mvnos};
  for (std::int64_t m = 0; m < count; ++m) {
    MvnoSpec spec;
    spec.reserved = ResourceBundle{
        total.subchannels / count + (m < total.subchannels % count ? 1 : 0),
        total.power / count + (m < total.power % count ? 1 : 0),
        total.antennas / count + (m < total.antennas % count ? 1 : 0)};
    spec.reservation_cost = tmpl.reservation_cost;
    s.mvnos.push_back(std::move(spec));
  }
  for (std::int64_t u = 0; u < total_users; ++u) {
    s.mvnos[static_cast<std::size_t>(u % count)].users.push_back(
        to_profile(users[static_cast<std::size_t>(u)], u + 1));
  }
  validate(s);
  return s;
}

Scenario configure_for(const Scenario& scenario, const Scheme& scheme) {
  Scenario s = scenario;
  s.group_size = 1;
  s.upper.solver = SolverChoice::kDp;
  s.upper.policy.kind = PricingKind::kVcg;
  s.upper.policy.allow_general = false;
  s.lower.solver = SolverChoice::kDp;
  s.lower.policy.kind = PricingKind::kVcg;
  s.lower.policy.allow_general = false;
  if (scheme.kind == SchemeKind::kDpa) s.group_size = scheme.group_size;
  if (scheme.kind == SchemeKind::kGa) {
    for (LevelConfig* level : {&s.upper, &s.lower}) {
      level->solver = SolverChoice::kGreedy;
      level->policy.kind = PricingKind::kGreedyCritical;
      level->policy.allow_general = true;
    }
  }
  return s;
}

HierOutcome run_scheme(const Scenario& scenario, const Scheme& scheme) {
  const Scenario s = configure_for(scenario, scheme);
  switch (scheme.kind) {
    case SchemeKind::kFs: return run_fixed_sharing(s);
    case SchemeKind::kGs: return run_general_sharing(s);
    case SchemeKind::kDpa:
    case SchemeKind::kGa: return run_hierarchical(s);
    case SchemeKind::kMs1: return run_multiseller(s, MultiSellerMode::kExact);
    case SchemeKind::kMs2: return run_multiseller(s, MultiSellerMode::kHeuristic);
  }
  throw ConfigError("unknown scheme");
}

void validate(const ExperimentConfig& config) {
  if (config.schemes.empty()) throw ConfigError("no schemes selected");
  if (config.seeds < 1) throw ConfigError("seeds must be >= 1");
  if (config.jobs < 1) throw ConfigError("jobs must be >= 1");
  for (std::int64_t c : config.sweep_counts) {
    if (c < 1) throw ConfigError("sweep counts must be >= 1");
  }
  validate_template(config.tmpl);
}

void apply_json(const nlohmann::json& doc, ExperimentConfig& config) {
  try {
    reject_unknown(doc,
                   {"template", "schemes", "seeds", "first_seed", "jobs", "out", "force",
                    "state_budget", "sweep", "scenario"},
                   "configuration");
    if (doc.contains("template")) {
      config.tmpl = template_by_name(doc.at("template").get<std::string>());
    }
    if (doc.contains("schemes")) {
      config.schemes.clear();
      for (const auto& s : doc.at("schemes")) {
        config.schemes.push_back(Scheme::parse(s.get<std::string>()));
      }
    }
    read(doc, "seeds", config.seeds);
    read(doc, "first_seed", config.first_seed);
    read(doc, "jobs", config.jobs);
    read(doc, "out", config.out);
    read(doc, "force", config.force);
    read(doc, "state_budget", config.state_budget);
    read(doc, "sweep", config.sweep_counts);
    if (doc.contains("scenario")) {
      const auto& sc = doc.at("scenario");
      reject_unknown(sc,
                     {"subchannels", "power_units", "antennas", "mvnos", "users_per_mvno",
                      "reserved", "reservation_cost", "users_per_subchannel",
                      "max_profile_subchannels", "weights", "radio", "lower_base",
                      "upper_base", "grid", "demand"},
                     "scenario");
      ScenarioTemplate& t = config.tmpl;
      read(sc, "subchannels", t.inp.subchannels);
      read(sc, "power_units", t.inp.power);
      read(sc, "antennas", t.inp.antennas);
      read(sc, "mvnos", t.mvnos);
      read(sc, "users_per_mvno", t.users_per_mvno);
      read_bundle(sc, "reserved", t.reserved_per_mvno);
      read(sc, "reservation_cost", t.reservation_cost);
      read(sc, "users_per_subchannel", t.users_per_subchannel);
      read(sc, "max_profile_subchannels", t.max_profile_subchannels);
      if (sc.contains("weights")) {
        const auto& w = sc.at("weights");
        reject_unknown(w, {"subchannel", "power", "antenna"}, "weights");
        read(w, "subchannel", t.weights.subchannel);
        read(w, "power", t.weights.power);
        read(w, "antenna", t.weights.antenna);
      }
      if (sc.contains("radio")) {
        const auto& r = sc.at("radio");
        reject_unknown(r, {"bandwidth", "cells", "alpha", "power_unit", "noise_ref"}, "radio");
        read(r, "bandwidth", t.radio.bandwidth);
        read(r, "cells", t.radio.cells);
        read(r, "alpha", t.radio.alpha);
        read(r, "power_unit", t.radio.power_unit);
        read(r, "noise_ref", t.radio.noise_ref);
      }
      read_base(sc, "lower_base", t.lower_base);
      read_base(sc, "upper_base", t.upper_base);
      if (sc.contains("grid")) {
        const auto& g = sc.at("grid");
        reject_unknown(g, {"power_steps", "antenna_steps", "atom_budget"}, "grid");
        read(g, "power_steps", t.grid.power_steps);
        read(g, "antenna_steps", t.grid.antenna_steps);
        read(g, "atom_budget", t.grid.atom_budget);
      }
      if (sc.contains("demand")) {
        const auto& d = sc.at("demand");
        reject_unknown(d, {"max_subchannels", "max_power", "delta_min", "delta_max",
                         "implicit_fraction", "rate_min", "rate_max"},
                        "demand");
        read(d, "max_subchannels", t.demand.max_subchannels);
        read(d, "max_power", t.demand.max_power);
        read(d, "delta_min", t.demand.delta_min);
        read(d, "delta_max", t.demand.delta_max);
        read(d, "implicit_fraction", t.demand.implicit_fraction);
        read(d, "rate_min", t.demand.rate_min);
        read(d, "rate_max", t.demand.rate_max);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("configuration: ") + e.what());
  }
}

double state_space_estimate(const ExperimentConfig& config) {
  const ScenarioTemplate& t = config.tmpl;
  std::int64_t group = 0;
  for (const Scheme& s : config.schemes) {
    if (s.kind == SchemeKind::kFs || s.kind == SchemeKind::kGs) continue;
    const std::int64_t g = s.kind == SchemeKind::kDpa ? s.group_size : 1;
    group = group == 0 ? g : std::min(group, g);
  }
  if (group == 0) return 0.0;
  const double m = static_cast<double>(t.mvnos);
  const double c = static_cast<double>(t.inp.subchannels - t.reserved_per_mvno.subchannels * t.mvnos);
  const double p = static_cast<double>(t.inp.power - t.reserved_per_mvno.power * t.mvnos);
  const double a = static_cast<double>(t.inp.antennas - t.reserved_per_mvno.antennas * t.mvnos);
  const double groups = std::floor(std::max(0.0, c) / static_cast<double>(group)) + 1.0;
  const double grid = groups * static_cast<double>(t.grid.power_steps + 1) *
                      static_cast<double>(t.grid.antenna_steps + 1);
  const double cells = groups * (std::max(0.0, p) + 1.0) * (std::max(0.0, a) + 1.0);
  return m * grid * cells * (1.0 + m);
}

ResultTable run_experiment(const ExperimentConfig& config) {
  validate(config);
  ResultTable table;
  table.metadata = metadata(config);
  const auto by_seed = per_seed(config, [&](std::uint64_t seed) {
    const Scenario scenario = generate_scenario(config.tmpl, seed);
    std::vector<ResultRow> rows;
    for (const Scheme& scheme : config.schemes) {
      rows.push_back(run_row(scenario, scheme, seed, config.tmpl.mvnos));
    }
    return rows;
  });
  assemble(config, by_seed, config.tmpl.mvnos, table.rows);
  return table;
}

ResultTable sweep_mvno_count(const ExperimentConfig& config,
                             const std::vector<std::int64_t>& counts) {
  validate(config);
  ResultTable table;
  table.metadata = metadata(config);
  std::string list;
  for (std::int64_t c : counts) {
    if (c < 1) throw ConfigError("MVNO counts must be >= 1");
    if (!list.empty()) list += ';';
    list += std::to_string(c);
  }
  table.metadata.emplace_back("sweep", list);
  const std::int64_t users = config.tmpl.mvnos * config.tmpl.users_per_mvno;
  for (std::int64_t count : counts) {
    if (users % count != 0) {
      table.metadata.emplace_back(
          "note_mvnos_" + std::to_string(count),
          "users do not divide evenly; assigned round-robin");
    }
    const auto by_seed = per_seed(config, [&](std::uint64_t seed) {
      const Scenario scenario = generate_partitioned(config.tmpl, seed, count);
      std::vector<ResultRow> rows;
      for (const Scheme& scheme : config.schemes) {
        rows.push_back(run_row(scenario, scheme, seed, count));
      }
      return rows;
    });
    assemble(config, by_seed, count, table.rows);
  }
  return table;
}

void write_csv(const ResultTable& table, std::ostream& out) {
  for (const auto& [key, value] : table.metadata) {
    out << "# " << key << '=' << value << '\n';
  }
  out << "kind,scheme,seed,mvnos,welfare,normalized_welfare,upper_welfare,"
         "util_subchannel,util_power,util_antenna,satisfaction,optimal,note\n";
  for (const ResultRow& r : table.rows) {
    const bool empty = r.kind == "skip";
    const auto num = [&](double v) { return empty ? std::string() : format_number(v); };
    out << r.kind << ',' << r.scheme << ',' << r.seed << ',' << r.mvnos << ','
        << num(r.metrics.social_welfare) << ','
        << (r.has_normalized && !empty ? format_number(r.normalized_welfare) : "")
        << ',' << num(r.metrics.upper_welfare) << ','
        << num(r.metrics.util_subchannel) << ',' << num(r.metrics.util_power)
        << ',' << num(r.metrics.util_antenna) << ','
        << num(r.metrics.satisfaction) << ',' << (r.optimal ? 1 : 0) << ','
        << csv_field(r.note) << '\n';
  }
}

void write_plot_data(const ResultTable& table, std::ostream& out) {
  out << "figure,series,x,mean,stderr\n";
  for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
    const ResultRow& m = table.rows[i];
    const ResultRow& s = table.rows[i + 1];
    if (m.kind != "mean" || s.kind != "stderr") continue;
    const auto emit = [&](const char* figure, double mean, double se) {
      out << figure << ',' << m.scheme << ',' << m.mvnos << ','
          << format_number(mean) << ',' << format_number(se) << '\n';
    };
    emit("welfare", m.metrics.social_welfare, s.metrics.social_welfare);
    if (m.has_normalized) {
      emit("normalized_welfare", m.normalized_welfare, s.normalized_welfare);
    }
    emit("util_subchannel", m.metrics.util_subchannel, s.metrics.util_subchannel);
    emit("util_power", m.metrics.util_power, s.metrics.util_power);
    emit("util_antenna", m.metrics.util_antenna, s.metrics.util_antenna);
    emit("satisfaction", m.metrics.satisfaction, s.metrics.satisfaction);
  }
}

}  // namespace hca
