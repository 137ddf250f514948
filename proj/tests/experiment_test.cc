// Copyright 2026 The SlotQA Authors.
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


#include "slotqa/experiment.h"

#include <gtest/gtest.h>

#include <mutex>
#include <set>

#include "slotqa/errors.h"
#include "test_util.h"

namespace slotqa {
namespace {

using testing::BundledCorpus;
using testing::BundledScreen;
using testing::DataPath;

Domain BundledDomain(const std::string& name) {
  Domain d;
  d.name = name;
  if (name == "atis_visual") {
    d.screen = ScreenFromSchema(SlotSchema::Load(DataPath("schemas/atis.tsv")),
                                "atis_visual.schema", "ATIS");
  } else {
    d.screen = BundledScreen(name);
  }
  d.utterances = BundledCorpus(name);
  return d;
}

std::vector<Domain> AllDomains() {
  std::vector<Domain> out;
  for (const char* n : {"vehicle_logger", "united", "trip_advisor", "atis_visual"}) {
    out.push_back(BundledDomain(n));
  }
  return out;
}

class SpyTrainer : public Trainer {
 public:
  void Train(const TrainingPlan& plan, const CellContext& cell) override {
    std::lock_guard<std::mutex> lock(mu_);
    ks.insert(cell.k);
    plans.push_back(plan);
  }
  std::multiset<std::size_t> ks;
  std::vector<TrainingPlan> plans;

 private:
  std::mutex mu_;
};

TEST(SplitCorpusTest, DeterministicDisjointCover) {
  const Domain d = BundledDomain("united");
  const auto a = SplitCorpus(d, 3);
  const auto b = SplitCorpus(d, 3);
  EXPECT_EQ(a.test, b.test);
  EXPECT_EQ(a.test.size(), 30u);
  EXPECT_EQ(a.train.size() + a.test.size(), d.utterances.size());
  std::set<std::string> ids;
  for (const auto& u : a.train) ids.insert(u.utterance_id);
  for (const auto& u : a.test) EXPECT_TRUE(ids.insert(u.utterance_id).second);
  EXPECT_NE(SplitCorpus(d, 4).test, a.test);
}

TEST(SplitCorpusTest, OfficialSplitWins) {
  Domain d = BundledDomain("united");
  d.official_test = {d.utterances.front()};
  d.official_train = {d.utterances.back()};
  const auto s = SplitCorpus(d, 0);
  EXPECT_EQ(s.test.size(), 1u);
  EXPECT_EQ(s.train.size(), 1u);
}

TEST(RunSweepTest, GridCounting) {
  ExperimentConfig cfg;
  cfg.train_sizes = {0, 5};
  cfg.seeds = {0, 1};
  cfg.domains = {"united"};
  const auto domains = AllDomains();
  const auto res = RunSweep(cfg, domains, OracleBackendFactory());
  EXPECT_EQ(res.runs.size(), 4u);
  ASSERT_EQ(res.rows.size(), 2u);
  EXPECT_EQ(res.rows[0].seed_count, 2u);
  EXPECT_EQ(res.rows[1].per_slot_ref, "united/k=5/tau=0.50");
}

TEST(RunSweepTest, OracleZeroShotIsPerfectEverywhere) {
  ExperimentConfig cfg;
  cfg.train_sizes = {0};
  const auto domains = AllDomains();
  const auto res = RunSweep(cfg, domains, OracleBackendFactory());
  ASSERT_EQ(res.rows.size(), 4u);
  for (const auto& row : res.rows) {
    EXPECT_EQ(row.errors, 0u) << row.domain;
    EXPECT_EQ(row.mean_f1, 1.0) << row.domain;
  }
}

TEST(RunSweepTest, TrainerNeverSeesZeroShot) {
  ExperimentConfig cfg;
  cfg.train_sizes = {0, 5, 50};
  cfg.seeds = {0, 1};
  cfg.jobs = 3;
  const auto domains = AllDomains();
  SpyTrainer spy;
  const auto res = RunSweep(cfg, domains, OracleBackendFactory(), &spy);
  EXPECT_EQ(spy.ks.count(0), 0u);
  EXPECT_EQ(spy.plans.size(), 4u * 2 * 2);
  for (const auto& run : res.runs) {
    EXPECT_EQ(run.trained, run.k > 0);
    if (run.k == 0) {
      EXPECT_EQ(run.plan.size(), 1);  // serve the general QA model as is
    } else {
      EXPECT_EQ(run.plan.size(), 2);
      EXPECT_EQ(run.plan.ServingStage(), 2);
    }
  }
}

TEST(RunSweepTest, AuxiliaryStagesAndZeroShotServing) {
  ExperimentConfig cfg;
  cfg.train_sizes = {0, 5};
  cfg.domains = {"vehicle_logger"};
  cfg.auxiliary_domains = {"atis_visual"};
  const auto domains = AllDomains();
  SpyTrainer spy;
  const auto res = RunSweep(cfg, domains, OracleBackendFactory(), &spy);
  ASSERT_EQ(res.runs.size(), 2u);
  EXPECT_EQ(res.runs[0].plan.size(), 3);
  EXPECT_EQ(res.runs[0].plan.ServingStage(), 2);
  EXPECT_FALSE(res.runs[0].trained);
  EXPECT_EQ(res.runs[1].plan.ServingStage(), 3);
  EXPECT_EQ(res.rows[0].reference_f1, 0.52);  // multi-task reference row
}

TEST(RunSweepTest, ByteIdenticalAcrossRunsAndJobCounts) {
  ExperimentConfig cfg;
  cfg.train_sizes = {0, 5, 50};
  cfg.seeds = {0, 1, 2};
  cfg.taus = {0.3, 0.5};
  const auto domains = AllDomains();
  cfg.jobs = 1;
  const auto serial = RunSweep(cfg, domains, OracleBackendFactory());
  cfg.jobs = 8;
  const auto parallel = RunSweep(cfg, domains, OracleBackendFactory());
  const auto again = RunSweep(cfg, domains, OracleBackendFactory());
  EXPECT_EQ(serial.ToJson(), parallel.ToJson());
  EXPECT_EQ(parallel.ToJson(), again.ToJson());
  EXPECT_EQ(serial.ToTsv(), again.ToTsv());
}

TEST(RunSweepTest, CellFailuresAreRecorded) {
  ExperimentConfig cfg;
  cfg.train_sizes = {0};
  const auto domains = AllDomains();
  BackendFactory flaky = [](const CellContext& cell) -> std::unique_ptr<QaBackend> {
    if (cell.domain.name == "united") throw BackendUnavailable("no model");
    return OracleBackendFactory()(cell);
  };
  const auto res = RunSweep(cfg, domains, flaky);
  for (const auto& row : res.rows) {
    EXPECT_EQ(row.errors, row.domain == "united" ? 1u : 0u);
  }
  EXPECT_NE(res.ToJson().find("no model"), std::string::npos);
}

TEST(RunSweepTest, ConfigValidation) {
  ExperimentConfig cfg;
  cfg.taus = {1.5};
  cfg.jobs = 0;
  try {
    cfg.Validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.violations().size(), 2u);
  }
  ExperimentConfig unknown;
  unknown.domains = {"nope"};
  EXPECT_THROW(RunSweep(unknown, AllDomains(), OracleBackendFactory()), Error);
}

TEST(ReferenceTest, KnownNumbers) {
  EXPECT_EQ(ReferenceF1("atis_visual", 500, AblationMode::kFull, false), 0.97);
  EXPECT_EQ(ReferenceF1("vehicle_logger", 0, AblationMode::kFull, false), 0.48);
  EXPECT_EQ(ReferenceF1("vehicle_logger", 5, AblationMode::kFull, true), 0.60);
  EXPECT_EQ(ReferenceF1("vehicle_logger", 0, AblationMode::kNoVisuals, false), 0.01);
  EXPECT_EQ(ReferenceF1("vehicle_logger", 500, AblationMode::kTextOnly, false), 0.88);
  EXPECT_EQ(ReferenceJbF1("trip_advisor", 50), 0.18);
  EXPECT_EQ(ReferenceDistractorF1("vehicle_logger", 5), 0.46);
  EXPECT_EQ(ReferenceDistractorF1("atis_visual", 4), 0.53);
  EXPECT_FALSE(ReferenceF1("united", 7, AblationMode::kFull, false));
}

TEST(DistractorTest, PickPrefersOtherAppsAndAvoidsCollisions) {
  const Screen target = BundledScreen("vehicle_logger");
  Screen same_app = target;
  same_app.screen_id = "vehicle_logger.history";
  const std::vector<Screen> pool = {same_app, BundledScreen("united"),
                                    BundledScreen("trip_advisor")};
  const auto picked = PickDistractors(target, pool, 4, DistractorUnit::kElements,
                                      AblationMode::kFull, {}, 1, 2);
  std::size_t visible = 0;
  for (const auto& s : picked) {
    EXPECT_NE(s.app_name, target.app_name);
    visible += s.visible.size();
  }
  EXPECT_EQ(visible, 3u);
  // The copied screen shares every slot id with the target.
  const std::vector<Screen> only_twin = {same_app};
  EXPECT_THROW(PickDistractors(target, only_twin, 2, DistractorUnit::kElements,
                               AblationMode::kFull, {}, 1, 2),
               InsufficientScreens);
  EXPECT_TRUE(PickDistractors(target, pool, 1, DistractorUnit::kElements,
                              AblationMode::kFull, {}, 1, 2)
                  .empty());
  EXPECT_EQ(PickDistractors(target, pool, 3, DistractorUnit::kScreens,
                            AblationMode::kFull, {}, 1, 2)
                .size(),
            2u);
}

TEST(DistractorTest, PickIsSeeded) {
  const Screen target = BundledScreen("trip_advisor");
  const std::vector<Screen> pool = {BundledScreen("united"), BundledScreen("vehicle_logger")};
  const auto a = PickDistractors(target, pool, 5, DistractorUnit::kElements,
                                 AblationMode::kFull, {}, 9, 1);
  EXPECT_EQ(a, PickDistractors(target, pool, 5, DistractorUnit::kElements,
                               AblationMode::kFull, {}, 9, 1));
}

TEST(DistractorTest, OracleIsConstantAndV1IsPlainEvaluation) {
  const Domain d = BundledDomain("vehicle_logger");
  const std::vector<Screen> pool = {BundledScreen("united"), BundledScreen("trip_advisor")};
  const auto split = SplitCorpus(d, 0);
  for (auto mode : {AblationMode::kFull, AblationMode::kNoVisuals}) {
    const auto oracle = BuildScreenOracle(d.screen, split.test, mode);
    DistractorConfig cfg;
    cfg.mode = mode;
    const auto rows = DistractorSweep(d, pool, split.test, oracle, cfg);
    ASSERT_EQ(rows.size(), 5u);
    const auto plain = EvaluateScreens(std::span<const Screen>(&d.screen, 1),
                                       split.test, oracle, {}, mode, {});
    EXPECT_EQ(rows[0].report, plain);
    for (const auto& r : rows) {
      EXPECT_EQ(r.report.weighted_f1, 1.0);
      EXPECT_EQ(r.report.per_slot, rows[0].report.per_slot);
    }
    EXPECT_EQ(rows[4].reference_f1, 0.46);
  }
}

TEST(DistractorTest, TableShape) {
  const Domain d = BundledDomain("united");
  const std::vector<Screen> pool = {BundledScreen("trip_advisor")};
  const auto oracle = BuildScreenOracle(d.screen, d.utterances, AblationMode::kFull);
  DistractorConfig cfg;
  cfg.v_range = {1, 2};
  const auto tsv = DistractorTableTsv("united", DistractorSweep(d, pool, d.utterances,
                                                                oracle, cfg));
  EXPECT_EQ(tsv, "domain\tv\tweighted_f1\trejection_accuracy\tref_f1\n"
                 "united\t1\t1.0000\t1.0000\t\n"
                 "united\t2\t1.0000\t1.0000\t\n");
}

}  // namespace
}  // namespace slotqa
