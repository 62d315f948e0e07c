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

// Command-line front end.
//
//   hca run   --template desk --scheme GS --scheme DPA:1 --seeds 200 --out r.csv
//   hca sweep --template desk --scheme DPA:1 --mvnos 2,3,4,5 --seeds 200
//   hca solve --instance wdp.json --solver dp --pricing vcg
//
// Failures print one line `error: {"code": ..., "message": ...}` on stderr
// and exit nonzero.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hca/auction_core.hpp"
#include "hca/errors.hpp"
#include "hca/harness.hpp"
#include "hca/pricing.hpp"
#include "hca/solvers.hpp"

namespace {

using nlohmann::json;

struct ExperimentFlags {
  std::string config_path;
  std::vector<std::string> schemes;
  std::optional<std::int64_t> seeds;
  std::optional<std::uint64_t> first_seed;
  std::string out;
  std::string tmpl;
  std::vector<std::int64_t> mvnos;
  std::optional<int> jobs;
  bool force = false;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON configuration file");
  cmd->add_option("--scheme", f.schemes,
                  "FS, GS, DPA:<group>, GA, MS1 or MS2 (repeatable)");
  cmd->add_option("--seeds", f.seeds, "number of seeds");
  cmd->add_option("--first-seed", f.first_seed, "first seed");
  cmd->add_option("--out", f.out, "CSV output path (plot data goes to <out>.plot.csv)");
  cmd->add_option("--template", f.tmpl, "scenario template")
      ->check(CLI::IsMember({"paper", "desk"}));
  cmd->add_option("--mvnos", f.mvnos, "MVNO count(s)")->delimiter(',');
  cmd->add_option("--jobs", f.jobs, "concurrent seeds");
  cmd->add_flag("--force", f.force, "run even beyond the state-space budget");
}

hca::ExperimentConfig build_config(const ExperimentFlags& f) {
  hca::ExperimentConfig config;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw hca::ConfigError("cannot open " + f.config_path);
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      throw hca::ConfigError(std::string("configuration: ") + e.what());
    }
    hca::apply_json(doc, config);
  }
  if (!f.tmpl.empty()) config.tmpl = hca::template_by_name(f.tmpl);
  if (!f.schemes.empty()) {
    config.schemes.clear();
    for (const std::string& s : f.schemes) config.schemes.push_back(hca::Scheme::parse(s));
  }
  if (f.seeds) config.seeds = *f.seeds;
  if (f.first_seed) config.first_seed = *f.first_seed;
  if (!f.out.empty()) config.out = f.out;
  if (f.jobs) config.jobs = *f.jobs;
  if (f.force) config.force = true;
  if (config.schemes.empty()) {
    for (const char* s : {"FS", "GS", "DPA:1", "DPA:5", "GA", "MS1", "MS2"}) {
      config.schemes.push_back(hca::Scheme::parse(s));
    }
  }
  hca::validate(config);
  return config;
}

void check_budget(const hca::ExperimentConfig& config) {
  const double estimate = hca::state_space_estimate(config);
  std::cerr << "state-space estimate: " << estimate
            << " upper-level DP transitions per seed (budget "
            << config.state_budget << ")\n";
  if (estimate > config.state_budget && !config.force) {
    throw hca::SizeError(
        "state-space estimate exceeds the budget; rerun with --force or a "
        "coarser grid");
  }
}

void emit(const hca::ExperimentConfig& config, const hca::ResultTable& table) {
  if (config.out.empty()) {
    hca::write_csv(table, std::cout);
    return;
  }
  std::ofstream csv(config.out);
  std::ofstream plot(config.out + ".plot.csv");
  if (!csv || !plot) throw hca::ConfigError("cannot write " + config.out);
  hca::write_csv(table, csv);
  hca::write_plot_data(table, plot);
}

hca::WdpInstance parse_instance(const json& doc) {
  hca::WdpInstance instance;
  for (const json& s : doc.at("sellers")) {
    hca::CapacityVector cap;
    cap.subchannel_slots = s.at("subchannel_slots").get<std::int64_t>();
    cap.power_units = s.at("power_units").get<std::int64_t>();
    if (s.contains("antenna_units")) {
      cap.antenna_units = s.at("antenna_units").get<std::int64_t>();
    }
    instance.sellers.push_back(cap);
  }
  if (doc.contains("weights")) {
    const json& w = doc.at("weights");
    instance.weights.subchannel = w.value("subchannel", 1.0);
    instance.weights.power = w.value("power", 1.0);
    instance.weights.antenna = w.value("antenna", 1.0);
  }
  for (const json& b : doc.at("bids")) {
    hca::Bid bid;
    bid.bidder = hca::BidderId{b.at("bidder").get<std::int64_t>()};
    bid.xor_bid = b.value("xor", true);
    for (const json& a : b.at("atoms")) {
      bid.atoms.push_back(hca::Atom{
          hca::ResourceBundle{a.value("subchannels", std::int64_t{0}),
                              a.value("power", std::int64_t{0}),
                              a.value("antennas", std::int64_t{0})},
          a.at("value").get<double>()});
    }
    instance.bids.push_back(std::move(bid));
  }
  return instance;
}

hca::Solver solver_by_name(const std::string& name) {
  if (name == "brute") return hca::solve_brute_force;
  if (name == "dp") return hca::solve_dp_general_xor;
  if (name == "greedy") return hca::solve_greedy_general_xor;
  if (name == "bnb") {
    return [](const hca::WdpInstance& i) { return hca::solve_ms_branch_and_bound(i); };
  }
  if (name == "heuristic") return hca::solve_ms_heuristic;
  if (name.rfind("upper:", 0) == 0) {
    const std::int64_t g = std::stoll(name.substr(6));
    return [g](const hca::WdpInstance& i) { return hca::solve_upper_dp(i, g); };
  }
  throw hca::ConfigError("unknown solver '" + name + "'");
}

int run_solve(const std::string& path, const std::string& solver_name,
              const std::string& pricing) {
  std::ifstream in(path);
  if (!in) throw hca::ConfigError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw hca::ConfigError(std::string("instance: ") + e.what());
  }
  hca::WdpInstance instance;
  try {
    instance = parse_instance(doc);
  } catch (const json::exception& e) {
    throw hca::ConfigError(std::string("instance: ") + e.what());
  }
  const hca::Solver solver = solver_by_name(solver_name);
  const hca::SolverReport report = solver(instance);
  json out;
  out["welfare"] = report.allocation.welfare;
  out["optimal"] = report.optimal;
  out["nodes_explored"] = report.nodes_explored;
  if (report.upper_bound) out["upper_bound"] = *report.upper_bound;
  std::optional<hca::PricedOutcome> priced;
  if (pricing == "vcg") priced = hca::vcg_prices(instance, solver);
  if (pricing == "critical") priced = hca::greedy_critical_prices(instance, solver);
  json grants = json::array();
  for (const auto& [id, grant] : report.allocation.grants) {
    json g{{"bidder", id.value}, {"seller", grant.seller}, {"atom", grant.atom}};
    if (priced) g["price"] = priced->price(id);
    grants.push_back(g);
  }
  out["grants"] = grants;
  std::cout << out.dump(2) << '\n';
  return 0;
}

void print_error(const std::string& code, const std::string& message) {
  std::cerr << "error: " << json{{"code", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical combinatorial auctions for wireless resource slicing"};
  app.require_subcommand(1);

  ExperimentFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "run schemes over seeds");
  add_experiment_flags(run, run_flags);

  ExperimentFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "sweep the MVNO count");
  add_experiment_flags(sweep, sweep_flags);

  std::string instance_path, solver_name = "dp", pricing = "none";
  CLI::App* solve = app.add_subcommand("solve", "solve one WDP instance from JSON");
  solve->add_option("--instance", instance_path, "instance JSON")->required();
  solve->add_option("--solver", solver_name,
                    "brute, dp, greedy, bnb, heuristic or upper:<group>");
  solve->add_option("--pricing", pricing, "none, vcg or critical")
      ->check(CLI::IsMember({"none", "vcg", "critical"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 64;
  }

  try {
    if (run->parsed()) {
      hca::ExperimentConfig config = build_config(run_flags);
      if (run_flags.mvnos.size() == 1) config.tmpl.mvnos = run_flags.mvnos.front();
      check_budget(config);
      emit(config, hca::run_experiment(config));
    } else if (sweep->parsed()) {
      hca::ExperimentConfig config = build_config(sweep_flags);
      std::vector<std::int64_t> counts = sweep_flags.mvnos;
      if (counts.empty()) counts = config.sweep_counts;
      if (counts.empty()) counts = {2, 3, 4, 5};
      check_budget(config);
      emit(config, hca::sweep_mvno_count(config, counts));
    } else {
      return run_solve(instance_path, solver_name, pricing);
    }
  } catch (const hca::ConfigError& e) {
    print_error("config", e.what());
    return 2;
  } catch (const hca::SizeError& e) {
    print_error("size", e.what());
    return 3;
  } catch (const hca::ContractError& e) {
    print_error("contract", e.what());
    return 4;
  } catch (const hca::PolicyError& e) {
    print_error("policy", e.what());
    return 5;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 1;
  }
  return 0;
}
