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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "oracles.h"
#include "slotqa/corpus.h"
#include "slotqa/dispatch.h"
#include "slotqa/experiment.h"
#include "slotqa/metrics.h"
#include "slotqa/question_gen.h"
#include "slotqa/squad.h"
#include "slotqa/text.h"
#include "test_util.h"

namespace slotqa {
namespace {

using testing::BundledCorpus;
using testing::BundledScreen;
using testing::DataPath;

constexpr double kMaxOracleSeconds = 5.0;
constexpr std::size_t kMinUtterancesPerDomain = 100;
constexpr std::size_t kAtisTagCount = 83;
constexpr std::size_t kAtisSampleSize = 50;
constexpr int kMetricInstances = 1000;
constexpr double kBoundSlack = 1e-15;

// Collects failure messages for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string Summary() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    if (failed_ > failures_.size()) {
      s += "; " + std::to_string(failed_ - failures_.size()) + " more";
    }
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t failed_ = 0;
};

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

const std::vector<std::string>& ScreenDomains() {
  static const std::vector<std::string> kNames = {"vehicle_logger", "united",
                                                  "trip_advisor"};
  return kNames;
}

std::vector<Screen> AllBundledScreens() {
  std::vector<std::string> paths;
  for (const auto& e : std::filesystem::directory_iterator(DataPath("screens"))) {
    if (e.path().extension() == ".screen") paths.push_back(e.path().string());
  }
  std::sort(paths.begin(), paths.end());
  std::vector<Screen> out;
  for (const auto& p : paths) out.push_back(LoadScreen(p));
  out.push_back(BundledDomain("atis_visual").screen);
  return out;
}

std::string Fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// genq -> fill_slots with the gold oracle -> token_f1 on every bundled corpus.
Check OracleEndToEnd(std::string* detail) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  BackendConfig cfg;
  for (const auto& name : {"vehicle_logger", "united", "trip_advisor", "atis_visual"}) {
    const Domain d = BundledDomain(name);
    c.Expect(d.utterances.size() >= kMinUtterancesPerDomain,
             std::string(name) + " has " + std::to_string(d.utterances.size()) +
                 " utterances");
    const auto oracle = BuildScreenOracle(d.screen, d.utterances, AblationMode::kFull);
    std::vector<SlotFillResult> pred;
    const std::vector<Screen> screens = {d.screen};
    for (const auto& u : d.utterances) {
      pred.push_back(FillSlots(screens, u.text, oracle, cfg, AblationMode::kFull,
                               QuestionGenerator(), u.utterance_id));
    }
    const double f1 = TokenF1(d.utterances, pred).weighted_f1;
    c.Expect(f1 == 1.0, std::string(name) + " weighted_f1=" + Fmt(f1));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.Expect(secs < kMaxOracleSeconds, "took " + Fmt(secs) + " s");
  *detail = "elapsed " + std::to_string(secs).substr(0, 5) + " s";
  return c;
}

// BIO -> QA conversion on the 50-utterance ATIS-style sample.
Check ConversionFidelity(std::string* detail) {
  Check c;
  const auto schema = SlotSchema::Load(DataPath("schemas/atis.tsv"));
  const auto utts = BundledCorpus("atis_sample");
  c.Expect(utts.size() == kAtisSampleSize, "sample size " + std::to_string(utts.size()));
  c.Expect(schema.size() == kAtisTagCount, "schema size " + std::to_string(schema.size()));

  std::size_t spans = 0;
  for (const auto& u : utts) spans += u.slots.size();
  const auto none = ToQaExamples(utts, schema, AblationMode::kFull, NegativePolicy::None());
  c.Expect(none.size() == spans, "answerable " + std::to_string(none.size()) +
                                     " vs spans " + std::to_string(spans));
  // Every gold span is matched by exactly one answerable example.
  std::multiset<std::tuple<std::string, std::size_t, std::string>> want, got;
  for (const auto& u : utts) {
    for (const auto& s : u.slots) want.insert({u.text, s.start_char, s.surface});
  }
  for (const auto& e : none) {
    c.Expect(!e.is_impossible && e.answers.size() == 1, e.qa_id + " shape");
    if (e.answers.size() != 1) continue;
    const auto& a = e.answers[0];
    c.Expect(e.context.compare(a.answer_start, a.text.size(), a.text) == 0,
             e.qa_id + " answer_start");
    got.insert({e.context, a.answer_start, a.text});
  }
  c.Expect(want == got, "answer multiset differs from gold spans");

  const auto all = ToQaExamples(utts, schema, AblationMode::kFull, NegativePolicy::All());
  c.Expect(all.size() == kAtisTagCount * utts.size(),
           "NegativePolicy::All gave " + std::to_string(all.size()));
  std::map<std::string, std::size_t> per_context;
  for (const auto& e : all) ++per_context[e.context];
  std::size_t answerable = 0;
  for (const auto& e : all) answerable += e.is_impossible ? 0 : 1;
  c.Expect(answerable == spans, "answerable under All " + std::to_string(answerable));

  const auto back = ParseSquad(RenderSquad(all));
  c.Expect(back == all, "export/import round trip differs");
  *detail = std::to_string(all.size()) + " examples, " + std::to_string(spans) +
            " answerable";
  return c;
}

// TokenF1 against the brute-force counter plus metric invariants.
Check MetricOracle(std::string* detail) {
  Check c;
  SeededRng rng(20261019);
  std::size_t swapped = 0;
  for (int n = 0; n < kMetricInstances; ++n) {
    const auto inst = testing::RandomMetricInstance(rng);
    const auto got = TokenF1(inst.gold, inst.pred);
    const auto want = testing::BruteForceTokenF1(inst.gold, inst.pred);
    const std::string tag = "instance " + std::to_string(n);
    c.Expect(got.weighted_f1 == want.weighted_f1, tag + " weighted_f1");
    c.Expect(got.per_slot.size() == want.per_slot.size(), tag + " slot count");
    std::size_t support = 0;
    double acc = 0.0;
    for (const auto& [slot, w] : want.per_slot) {
      const auto it = got.per_slot.find(slot);
      if (it == got.per_slot.end()) {
        c.Expect(false, tag + " missing " + slot);
        continue;
      }
      const auto& g = it->second;
      c.Expect(g.support == w.support && g.predicted == w.predicted &&
                   g.overlap == w.overlap && g.precision == w.precision &&
                   g.recall == w.recall && g.f1 == w.f1,
               tag + " slot " + slot);
      c.Expect(g.f1 == HarmonicF1(g.precision, g.recall), tag + " harmonic " + slot);
      c.Expect(g.f1 >= std::min(g.precision, g.recall) - kBoundSlack &&
                   g.f1 <= std::max(g.precision, g.recall) + kBoundSlack,
               tag + " f1 between p and r");
      support += g.support;
      acc += static_cast<double>(g.support) * g.f1;
    }
    if (support > 0) {
      c.Expect(got.weighted_f1 == acc / static_cast<double>(support),
               tag + " weighted identity");
    }
    for (double x : {got.weighted_f1, got.micro_precision, got.micro_recall,
                     got.micro_f1, got.rejection_accuracy}) {
      c.Expect(x >= 0.0 && x <= 1.0, tag + " bounds");
    }
    c.Expect(got.micro_f1 == HarmonicF1(got.micro_precision, got.micro_recall),
             tag + " micro harmonic");
    if (inst.unique_gold_slots) {
      ++swapped;
      const auto sw = testing::SwapRoles(inst);
      const auto r = TokenF1(sw.gold, sw.pred);
      for (const auto& [slot, s] : got.per_slot) {
        const auto it = r.per_slot.find(slot);
        c.Expect(it != r.per_slot.end() && it->second.precision == s.recall &&
                     it->second.recall == s.precision && it->second.f1 == s.f1,
                 tag + " swap " + slot);
      }
    }
  }
  c.Expect(swapped > 100, "only " + std::to_string(swapped) + " swap instances");
  *detail = std::to_string(kMetricInstances) + " instances, " + std::to_string(swapped) +
            " swapped";
  return c;
}

const GuiElement& FindSlot(const Screen& s, const std::string& slot_id) {
  for (const auto& e : s.elements) {
    if (e.slot_id == slot_id) return e;
  }
  throw std::runtime_error("no slot " + slot_id);
}

Check QuestionRules(std::string* detail) {
  Check c;
  const Screen united = BundledScreen("united");
  const Screen vl = BundledScreen("vehicle_logger");
  const std::string dep = GenerateQuestion(FindSlot(united, "departure_airport")).text;
  c.Expect(dep == "What is the departure airport?", "departure: " + dep);
  const std::string trip = GenerateQuestion(FindSlot(vl, "trip_type")).text;
  c.Expect(trip == "Is this Business, Personal or Other?", "trip type: " + trip);
  c.Expect(AsciiLower(trip) == "is this business, personal or other?", "lowercase form");

  QuestionGenerator::Options opts;
  opts.overrides = OverrideTable::Load(DataPath("question_overrides.tsv"));
  const QuestionGenerator gen(std::move(opts));
  const std::string gps =
      gen.Generate(FindSlot(vl, "gps_tracking"), AblationMode::kFull, 1).text;
  c.Expect(gps == "What is done to GPS?", "override: " + gps);

  std::size_t screens = 0;
  for (const auto& s : AllBundledScreens()) {
    ++screens;
    std::set<std::string> words;
    for (const auto& e : s.elements) {
      for (auto& w : AlphaTokens(e.label)) words.insert(w);
      for (const auto& ch : e.choices) {
        for (auto& w : AlphaTokens(ch)) words.insert(w);
      }
    }
    for (const auto& q : GenerateQuestions(s, AblationMode::kNoVisuals)) {
      for (const auto& w : AlphaTokens(q.text)) {
        c.Expect(!words.count(w), s.screen_id + " leaks '" + w + "' in " + q.text);
      }
    }
  }
  *detail = "NoVisuals checked on " + std::to_string(screens) + " screens";
  return c;
}

// Gold-oracle distractor sweep; the score must not depend on V.
Check DistractorInvariance(std::string* detail) {
  Check c;
  const auto screens = AllBundledScreens();
  for (const auto& name : ScreenDomains()) {
    const Domain d = BundledDomain(name);
    std::vector<Screen> pool;
    for (const auto& s : screens) {
      if (s.screen_id != d.screen.screen_id) pool.push_back(s);
    }
    for (AblationMode mode : {AblationMode::kFull, AblationMode::kNoVisuals}) {
      DistractorConfig cfg;
      cfg.mode = mode;
      cfg.seed = 7;
      const auto oracle = BuildScreenOracle(d.screen, d.utterances, mode);
      const auto rows = DistractorSweep(d, pool, d.utterances, oracle, cfg);
      c.Expect(rows.size() == 5, name + " rows " + std::to_string(rows.size()));
      for (const auto& r : rows) {
        c.Expect(r.report.weighted_f1 == rows.front().report.weighted_f1,
                 name + " V=" + std::to_string(r.v) + " f1=" + Fmt(r.report.weighted_f1));
        c.Expect(r.report.weighted_f1 == 1.0, name + " not perfect");
      }
    }
  }
  *detail = "V=1..5 on " + std::to_string(ScreenDomains().size()) + " domains";
  return c;
}

class CountingTrainer : public Trainer {
 public:
  void Train(const TrainingPlan&, const CellContext& cell) override {
    std::lock_guard<std::mutex> lock(mu_);
    ks.insert(cell.k);
  }
  std::multiset<std::size_t> ks;

 private:
  std::mutex mu_;
};

Check Determinism(std::string* detail) {
  Check c;
  const auto utts = BundledCorpus("united");
  for (std::uint64_t seed : {0u, 1u, 42u}) {
    for (std::size_t k : {0u, 5u, 50u, 100u}) {
      for (bool strat : {false, true}) {
        const auto a = RenderBioCorpus(SampleFewShot(utts, k, seed, strat));
        const auto b = RenderBioCorpus(SampleFewShot(utts, k, seed, strat));
        c.Expect(a == b, "sample k=" + std::to_string(k));
      }
    }
  }
  std::vector<Domain> domains;
  for (const char* n : {"vehicle_logger", "united", "trip_advisor", "atis_visual"}) {
    domains.push_back(BundledDomain(n));
  }
  ExperimentConfig cfg;
  cfg.train_sizes = {0, 5, 50};
  cfg.seeds = {0, 1};
  std::string first_tsv, first_json;
  std::size_t trainings = 0;
  for (std::size_t jobs : {1u, 4u, 4u}) {
    cfg.jobs = jobs;
    CountingTrainer trainer;
    const auto res = RunSweep(cfg, domains, OracleBackendFactory(), &trainer);
    c.Expect(trainer.ks.count(0) == 0, "k=0 invoked training");
    c.Expect(trainer.ks.size() == 4 * 2 * 2,
             "trainings " + std::to_string(trainer.ks.size()));
    for (const auto& run : res.runs) {
      c.Expect(run.trained == (run.k > 0), "trained flag k=" + std::to_string(run.k));
    }
    trainings = trainer.ks.size();
    if (first_tsv.empty()) {
      first_tsv = res.ToTsv();
      first_json = res.ToJson();
    } else {
      c.Expect(res.ToTsv() == first_tsv, "TSV differs at jobs=" + std::to_string(jobs));
      c.Expect(res.ToJson() == first_json, "JSON differs at jobs=" + std::to_string(jobs));
    }
  }
  *detail = std::to_string(trainings) + " trainings per sweep, none at k=0";
  return c;
}

}  // namespace
}  // namespace slotqa

int main() {
  using Criterion = std::pair<const char*, std::function<slotqa::Check(std::string*)>>;
  const std::vector<Criterion> criteria = {
      {"oracle end-to-end", slotqa::OracleEndToEnd},
      {"conversion fidelity", slotqa::ConversionFidelity},
      {"metric oracle equivalence", slotqa::MetricOracle},
      {"question rule conformance", slotqa::QuestionRules},
      {"distractor invariance", slotqa::DistractorInvariance},
      {"determinism", slotqa::Determinism},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    std::string detail;
    slotqa::Check c;
    try {
      c = fn(&detail);
    } catch (const std::exception& e) {
      c.Expect(false, std::string("exception: ") + e.what());
    }
    if (c.ok()) {
      std::printf("PASS %d %s (%s)\n", n, name, detail.c_str());
    } else {
      ++failed;
      std::printf("FAIL %d %s: %s\n", n, name, c.Summary().c_str());
    }
  }
  return failed == 0 ? 0 : 1;
}
