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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hca/errors.hpp"
#include "hca/harness.hpp"
#include "hca/rng.hpp"

namespace hca {
namespace {

std::vector<Scheme> schemes(std::initializer_list<const char*> names) {
  std::vector<Scheme> out;
  for (const char* n : names) out.push_back(Scheme::parse(n));
  return out;
}

std::vector<const ResultRow*> rows_of(const ResultTable& t, const std::string& kind,
                                      const std::string& scheme) {
  std::vector<const ResultRow*> out;
  for (const ResultRow& r : t.rows) {
    if (r.kind == kind && r.scheme == scheme) out.push_back(&r);
  }
  return out;
}

TEST(SplitMix64, ReferenceSequence) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(SplitMix64, RangesRespected) {
  SplitMix64 rng = SplitMix64::stream(5, 0);
  for (int i = 0; i < 10'000; ++i) {
    const std::int64_t k = rng.uniform_int(-3, 4);
    EXPECT_GE(k, -3);
    EXPECT_LE(k, 4);
    const double u = rng.uniform01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(SplitMix64, StreamsDiffer) {
  EXPECT_NE(SplitMix64::stream(1, 0).next(), SplitMix64::stream(1, 1).next());
  EXPECT_NE(SplitMix64::stream(1, 0).next(), SplitMix64::stream(2, 0).next());
}

TEST(Scheme, ParseAndLabel) {
  for (const char* name : {"FS", "GS", "DPA:1", "DPA:5", "GA", "MS1", "MS2"}) {
    EXPECT_EQ(Scheme::parse(name).label(), name);
  }
  EXPECT_EQ(Scheme::parse("DPA:5").group_size, 5);
  for (const char* bad : {"", "DPA", "DPA:0", "DPA:x", "XX", "ms1"}) {
    EXPECT_THROW(Scheme::parse(bad), ConfigError) << bad;
  }
}

TEST(Templates, DeskCounts) {
  const Scenario s = generate_scenario(desk_template(), 1);
  EXPECT_EQ(s.inp, (ResourceBundle{20, 100, 40}));
  ASSERT_EQ(s.mvnos.size(), 2U);
  for (const MvnoSpec& m : s.mvnos) {
    EXPECT_EQ(m.users.size(), 10U);
    EXPECT_EQ(m.reserved, (ResourceBundle{6, 30, 10}));
  }
  EXPECT_EQ(s.mvnos[0].users.front().id, BidderId{1});
  EXPECT_EQ(s.mvnos[1].users.back().id, BidderId{20});
}

TEST(Templates, PaperCounts) {
  const Scenario s = generate_scenario(paper_template(), 1);
  EXPECT_EQ(s.mvnos.size(), 2U);
  EXPECT_EQ(s.mvnos[0].users.size(), 50U);
  EXPECT_EQ(s.mvnos[0].reserved, (ResourceBundle{30, 150, 50}));
}

TEST(Templates, UnknownName) {
  EXPECT_THROW(template_by_name("huge"), ConfigError);
}

TEST(GenerateScenario, SameSeedSameScenario) {
  const Scenario a = generate_scenario(desk_template(), 42);
  const Scenario b = generate_scenario(desk_template(), 42);
  ASSERT_EQ(a.mvnos.size(), b.mvnos.size());
  for (std::size_t m = 0; m < a.mvnos.size(); ++m) {
    ASSERT_EQ(a.mvnos[m].users.size(), b.mvnos[m].users.size());
    for (std::size_t k = 0; k < a.mvnos[m].users.size(); ++k) {
      const UserProfile& x = a.mvnos[m].users[k];
      const UserProfile& y = b.mvnos[m].users[k];
      EXPECT_EQ(x.id, y.id);
      EXPECT_EQ(x.delta, y.delta);
      EXPECT_EQ(std::get<ExplicitDemand>(x.demand).bundle,
                std::get<ExplicitDemand>(y.demand).bundle);
    }
  }
}

TEST(GenerateScenario, DrawRanges) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (const MvnoSpec& m : generate_scenario(desk_template(), seed).mvnos) {
      for (const UserProfile& u : m.users) {
        EXPECT_GE(u.delta, 0.5);
        EXPECT_LT(u.delta, 1.5);
        const ResourceBundle& b = std::get<ExplicitDemand>(u.demand).bundle;
        EXPECT_GE(b.subchannels, 0);
        EXPECT_LE(b.subchannels, 2);
        EXPECT_GE(b.power, 0);
        EXPECT_LE(b.power, 10);
      }
    }
  }
}

TEST(GenerateScenario, OverReservationIsConfigError) {
  ScenarioTemplate t = desk_template();
  t.reserved_per_mvno = ResourceBundle{11, 30, 10};
  EXPECT_THROW(generate_scenario(t, 1), ConfigError);
}

TEST(GeneratePartitioned, RemaindersRoundRobin) {
  const Scenario s = generate_partitioned(desk_template(), 3, 3);
  ASSERT_EQ(s.mvnos.size(), 3U);
  EXPECT_EQ(s.mvnos[0].users.size(), 7U);
  EXPECT_EQ(s.mvnos[1].users.size(), 7U);
  EXPECT_EQ(s.mvnos[2].users.size(), 6U);
  ResourceBundle total;
  for (const MvnoSpec& m : s.mvnos) total += m.reserved;
  EXPECT_EQ(total, (ResourceBundle{12, 60, 20}));
  EXPECT_EQ(s.mvnos[0].reserved, (ResourceBundle{4, 20, 7}));
  EXPECT_EQ(s.mvnos[2].reserved, (ResourceBundle{4, 20, 6}));
}

TEST(GeneratePartitioned, SameUsersAsBlockLayout) {
  const Scenario blocks = generate_scenario(desk_template(), 8);
  const Scenario spread = generate_partitioned(desk_template(), 8, 2);
  std::map<BidderId, double> deltas;
  for (const MvnoSpec& m : blocks.mvnos) {
    for (const UserProfile& u : m.users) deltas[u.id] = u.delta;
  }
  for (const MvnoSpec& m : spread.mvnos) {
    for (const UserProfile& u : m.users) EXPECT_EQ(deltas.at(u.id), u.delta);
  }
}

TEST(RunExperiment, TwoSchemesOneSeed) {
  ExperimentConfig c;
  c.schemes = schemes({"FS", "GS"});
  const ResultTable t = run_experiment(c);
  std::size_t runs = 0;
  for (const ResultRow& r : t.rows) runs += r.kind == "run";
  EXPECT_EQ(runs, 2U);
}

TEST(RunExperiment, GeneralSharingNormalizesToOne) {
  ExperimentConfig c;
  c.schemes = schemes({"GS", "FS"});
  c.seeds = 4;
  const ResultTable t = run_experiment(c);
  const auto mean = rows_of(t, "mean", "GS");
  ASSERT_EQ(mean.size(), 1U);
  ASSERT_TRUE(mean.front()->has_normalized);
  EXPECT_EQ(mean.front()->normalized_welfare, 1.0);
  for (const ResultRow* r : rows_of(t, "run", "GS")) {
    EXPECT_EQ(r->normalized_welfare, r->metrics.social_welfare / mean.front()->metrics.social_welfare);
  }
}

TEST(RunExperiment, AggregatesMatchRows) {
  ExperimentConfig c;
  c.schemes = schemes({"FS", "DPA:1"});
  c.seeds = 6;
  const ResultTable t = run_experiment(c);
  for (const char* name : {"FS", "DPA:1"}) {
    const auto runs = rows_of(t, "run", name);
    ASSERT_EQ(runs.size(), 6U);
    double sum = 0.0;
    for (const ResultRow* r : runs) sum += r->metrics.social_welfare;
    const double mean = sum / 6.0;
    double ss = 0.0;
    for (const ResultRow* r : runs) {
      ss += (r->metrics.social_welfare - mean) * (r->metrics.social_welfare - mean);
    }
    const auto means = rows_of(t, "mean", name);
    const auto errs = rows_of(t, "stderr", name);
    ASSERT_EQ(means.size(), 1U);
    ASSERT_EQ(errs.size(), 1U);
    EXPECT_NEAR(means[0]->metrics.social_welfare, mean, 1e-9);
    EXPECT_NEAR(errs[0]->metrics.social_welfare, std::sqrt(ss / 5.0 / 6.0), 1e-9);
  }
}

TEST(RunExperiment, OrderIndependentOfJobs) {
  ExperimentConfig c;
  c.schemes = schemes({"FS", "GA", "MS2"});
  c.seeds = 6;
  std::ostringstream serial, parallel;
  write_csv(run_experiment(c), serial);
  c.jobs = 3;
  write_csv(run_experiment(c), parallel);
  EXPECT_EQ(serial.str(), parallel.str());
}

TEST(RunExperiment, OversizedSchemeIsSkippedWithReason) {
  ExperimentConfig c;
  c.schemes = schemes({"FS", "DPA:1"});
  c.tmpl.grid.atom_budget = 5;
  const ResultTable t = run_experiment(c);
  const auto skips = rows_of(t, "skip", "DPA:1");
  ASSERT_EQ(skips.size(), 1U);
  EXPECT_NE(skips[0]->note.find("budget"), std::string::npos);
  EXPECT_EQ(rows_of(t, "run", "FS").size(), 1U);
}

TEST(SweepMvnoCount, OneMvnoFixedSharingMatchesGeneralSharing) {
  ExperimentConfig c;
  c.schemes = schemes({"FS", "GS"});
  c.seeds = 3;
  const ResultTable t = sweep_mvno_count(c, {1});
  const auto fs = rows_of(t, "run", "FS");
  const auto gs = rows_of(t, "run", "GS");
  ASSERT_EQ(fs.size(), gs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    EXPECT_EQ(fs[i]->metrics.util_subchannel, gs[i]->metrics.util_subchannel);
  }
}

TEST(SweepMvnoCount, Deterministic) {
  ExperimentConfig c;
  c.schemes = schemes({"FS"});
  c.seeds = 3;
  std::ostringstream a, b;
  write_csv(sweep_mvno_count(c, {2, 3}), a);
  write_csv(sweep_mvno_count(c, {2, 3}), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(WriteCsv, HeaderAndMetadata) {
  ExperimentConfig c;
  c.schemes = schemes({"FS"});
  std::ostringstream out;
  write_csv(run_experiment(c), out);
  const std::string text = out.str();
  EXPECT_NE(text.find("# template=desk"), std::string::npos);
  EXPECT_NE(text.find("# first_seed=1"), std::string::npos);
  EXPECT_NE(text.find("kind,scheme,seed,mvnos,welfare,normalized_welfare,upper_welfare,"
                      "util_subchannel,util_power,util_antenna,satisfaction,optimal,note"),
            std::string::npos);
}

TEST(WritePlotData, OneSeriesPerScheme) {
  ExperimentConfig c;
  c.schemes = schemes({"FS", "GS"});
  c.seeds = 2;
  std::ostringstream out;
  write_plot_data(run_experiment(c), out);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("figure,series,x,mean,stderr", 0), 0U);
  EXPECT_NE(text.find(",FS,"), std::string::npos);
  EXPECT_NE(text.find(",GS,"), std::string::npos);
}

TEST(ApplyJson, OverridesAndRejects) {
  ExperimentConfig c;
  apply_json(nlohmann::json::parse(
                 R"({"schemes": ["GS", "DPA:5"], "seeds": 7, "template": "paper",
                     "scenario": {"demand": {"delta_min": 0.75}}})"),
             c);
  EXPECT_EQ(c.schemes, schemes({"GS", "DPA:5"}));
  EXPECT_EQ(c.seeds, 7);
  EXPECT_EQ(c.tmpl.name, "paper");
  EXPECT_EQ(c.tmpl.demand.delta_min, 0.75);
  EXPECT_THROW(apply_json(nlohmann::json::parse(R"({"seeds": "many"})"), c), ConfigError);
  EXPECT_THROW(apply_json(nlohmann::json::parse(R"({"bogus": 1})"), c), ConfigError);
}

TEST(ValidateConfig, RejectsBadValues) {
  ExperimentConfig c;
  EXPECT_THROW(validate(c), ConfigError);
  c.schemes = schemes({"FS"});
  c.seeds = 0;
  EXPECT_THROW(validate(c), ConfigError);
  c.seeds = 1;
  c.jobs = 0;
  EXPECT_THROW(validate(c), ConfigError);
}

TEST(StateSpaceEstimate, PaperExceedsDesk) {
  ExperimentConfig desk;
  desk.schemes = schemes({"DPA:1"});
  ExperimentConfig paper = desk;
  paper.tmpl = paper_template();
  EXPECT_GT(state_space_estimate(paper), state_space_estimate(desk));
}

}  // namespace
}  // namespace hca
