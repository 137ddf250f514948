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

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "fmt/format.h"
#include "json.hpp"
#include "slotqa/errors.h"
#include "slotqa/random.h"

namespace slotqa {
namespace {

constexpr std::uint64_t kSplitStream = 0x5b117;

std::string Fixed(double x) { return fmt::format("{:.4f}", x); }

std::string OptFixed(const std::optional<double>& x) {
  return x ? Fixed(*x) : "";
}

struct Stats {
  double mean = 0.0;
  double sd = 0.0;
};

Stats MeanSd(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

bool Contains(const std::vector<std::string>& xs, const std::string& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

}  // namespace

DataSplit SplitCorpus(const Domain& domain, std::uint64_t seed,
                      double test_fraction) {
  DataSplit split;
  if (!domain.official_test.empty()) {
    split.train = domain.official_train.empty() ? domain.utterances
                                                : domain.official_train;
    split.test = domain.official_test;
    return split;
  }
  const std::size_t n = domain.utterances.size();
  const auto n_test = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * test_fraction + 0.5));
  SeededRng rng(seed, kSplitStream);
  const auto test_idx = rng.SampleIndices(n, n_test);
  std::set<std::size_t> is_test(test_idx.begin(), test_idx.end());
  for (std::size_t i = 0; i < n; ++i) {
    (is_test.contains(i) ? split.test : split.train)
        .push_back(domain.utterances[i]);
  }
  return split;
}

void ExperimentConfig::Validate() const {
  std::vector<std::string> v;
  if (seeds.empty()) v.push_back("at least one seed is required");
  if (train_sizes.empty()) v.push_back("at least one train size is required");
  if (taus.empty()) v.push_back("at least one tau is required");
  for (double t : taus) {
    if (!(t >= 0.0 && t <= 1.0)) v.push_back("tau " + Fixed(t) + " outside [0, 1]");
  }
  for (std::size_t d : distractor_range) {
    if (d == 0) v.push_back("distractor levels start at 1");
  }
  if (jobs == 0) v.push_back("jobs must be positive");
  if (!v.empty()) throw ValidationError(std::move(v));
  backend.Validate();
}

BackendFactory OracleBackendFactory() {
  return [](const CellContext& cell) -> std::unique_ptr<QaBackend> {
    return std::make_unique<GoldOracleBackend>(BuildScreenOracle(
        cell.domain.screen, cell.split.test, cell.mode, cell.generator));
  };
}

MetricsReport EvaluateScreens(std::span<const Screen> screens,
                              std::span<const AnnotatedUtterance> test,
                              const QaBackend& backend, const BackendConfig& cfg,
                              AblationMode mode,
                              const QuestionGenerator& generator) {
  std::vector<SlotFillResult> predicted;
  predicted.reserve(test.size());
  for (const auto& utt : test) {
    predicted.push_back(FillSlots(screens, utt.text, backend, cfg, mode,
                                  generator, utt.utterance_id));
  }
  return TokenF1(test, predicted);
}

SweepResults RunSweep(const ExperimentConfig& cfg,
                      std::span<const Domain> domains,
                      const BackendFactory& backend_factory, Trainer* trainer,
                      const QuestionGenerator& generator) {
  cfg.Validate();
  std::vector<const Domain*> selected;
  if (cfg.domains.empty()) {
    for (const auto& d : domains) selected.push_back(&d);
  } else {
    for (const auto& name : cfg.domains) {
      auto it = std::find_if(domains.begin(), domains.end(),
                             [&](const Domain& d) { return d.name == name; });
      if (it == domains.end()) throw Error("unknown domain '" + name + "'");
      selected.push_back(&*it);
    }
  }

  struct Cell {
    const Domain* domain;
    std::size_t k;
    double tau;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (const Domain* d : selected) {
    for (std::size_t k : cfg.train_sizes) {
      for (double tau : cfg.taus) {
        for (std::uint64_t seed : cfg.seeds) cells.push_back({d, k, tau, seed});
      }
    }
  }

  SweepResults results;
  results.runs.resize(cells.size());
  std::mutex trainer_mu;

  auto run_cell = [&](std::size_t idx) {
    const Cell& c = cells[idx];
    RunRecord& rec = results.runs[idx];
    rec.domain = c.domain->name;
    rec.k = c.k;
    rec.seed = c.seed;
    rec.tau = c.tau;
    try {
      const DataSplit split = SplitCorpus(*c.domain, c.seed);
      const auto sample = SampleFewShot(split.train, c.k, c.seed, cfg.stratified);
      const std::string target_ref =
          fmt::format("{}_k{}_s{}", c.domain->name, c.k, c.seed);
      if (c.k == 0 && cfg.auxiliary_domains.empty()) {
        const StageSpec base{cfg.general_qa_ref, DatasetKind::kGeneralQa,
                             cfg.epochs};
        rec.plan = BuildCurriculum(std::span<const StageSpec>(&base, 1));
      } else {
        rec.plan = MultiTaskPlan(cfg.general_qa_ref, cfg.auxiliary_domains,
                                 target_ref, cfg.epochs, c.k == 0);
      }
      CellContext ctx{*c.domain, c.k,   c.seed,   c.tau,    rec.plan,
                      split,     sample, cfg.mode, generator};
      if (c.k > 0 && trainer != nullptr) {
        std::lock_guard<std::mutex> lock(trainer_mu);
        trainer->Train(rec.plan, ctx);
        rec.trained = true;
      }
      auto backend = backend_factory(ctx);
      if (!backend) throw Error("backend factory returned no backend");
      BackendConfig bcfg = cfg.backend;
      bcfg.no_answer_threshold = c.tau;
      rec.report = EvaluateScreens(std::span<const Screen>(&c.domain->screen, 1),
                                   split.test, *backend, bcfg, cfg.mode,
                                   generator);
    } catch (const std::exception& e) {
      rec.error = e.what();
      rec.report.reset();
    }
  };

  const std::size_t workers = std::min(cfg.jobs, std::max<std::size_t>(cells.size(), 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) run_cell(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  // Rows in grid order, one per (domain, k, tau).
  const bool multi_task = Contains(cfg.auxiliary_domains, "atis_visual");
  for (std::size_t i = 0; i < results.runs.size();) {
    const RunRecord& first = results.runs[i];
    ResultRow row;
    row.domain = first.domain;
    row.k = first.k;
    row.tau = first.tau;
    row.per_slot_ref = fmt::format("{}/k={}/tau={:.2f}", row.domain, row.k, row.tau);
    row.reference_f1 = ReferenceF1(row.domain, row.k, cfg.mode, multi_task);
    row.reference_jb_f1 = ReferenceJbF1(row.domain, row.k);
    std::vector<double> f1s;
    for (; i < results.runs.size() && results.runs[i].domain == row.domain &&
           results.runs[i].k == row.k && results.runs[i].tau == row.tau;
         ++i) {
      const RunRecord& r = results.runs[i];
      if (r.report) {
        f1s.push_back(r.report->weighted_f1);
      } else {
        ++row.errors;
      }
    }
    row.seed_count = f1s.size();
    const Stats s = MeanSd(f1s);
    row.mean_f1 = s.mean;
    row.sd_f1 = s.sd;
    results.rows.push_back(std::move(row));
  }
  return results;
}

std::string SweepResults::ToTsv() const {
  std::string out =
      "domain\tk\ttau\tseed_count\tweighted_f1_mean\tweighted_f1_sd\terrors\t"
      "per_slot_ref\tref_f1\tref_jb_f1\n";
  for (const auto& r : rows) {
    out += fmt::format("{}\t{}\t{:.2f}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", r.domain,
                       r.k, r.tau, r.seed_count, Fixed(r.mean_f1),
                       Fixed(r.sd_f1), r.errors, r.per_slot_ref,
                       OptFixed(r.reference_f1), OptFixed(r.reference_jb_f1));
  }
  return out;
}

std::string SweepResults::ToJson() const {
  using OJ = nlohmann::ordered_json;
  OJ doc;
  doc["rows"] = OJ::array();
  OJ per_slot = OJ::object();
  for (const auto& r : rows) {
    OJ row;
    row["domain"] = r.domain;
    row["k"] = r.k;
    row["tau"] = r.tau;
    row["seed_count"] = r.seed_count;
    row["weighted_f1_mean"] = r.mean_f1;
    row["weighted_f1_sd"] = r.sd_f1;
    row["errors"] = r.errors;
    row["per_slot_ref"] = r.per_slot_ref;
    row["ref_f1"] = r.reference_f1 ? OJ(*r.reference_f1) : OJ(nullptr);
    row["ref_jb_f1"] = r.reference_jb_f1 ? OJ(*r.reference_jb_f1) : OJ(nullptr);
    doc["rows"].push_back(std::move(row));

    // Per-slot f1 averaged over the row's successful seeds.
    std::map<std::string, std::vector<double>> slot_f1;
    for (const auto& run : runs) {
      if (run.domain != r.domain || run.k != r.k || run.tau != r.tau ||
          !run.report) {
        continue;
      }
      for (const auto& [slot, m] : run.report->per_slot) {
        if (m.support > 0) slot_f1[slot].push_back(m.f1);
      }
    }
    OJ slots = OJ::object();
    for (const auto& [slot, xs] : slot_f1) slots[slot] = MeanSd(xs).mean;
    per_slot[r.per_slot_ref] = std::move(slots);
  }
  doc["per_slot"] = std::move(per_slot);
  doc["runs"] = OJ::array();
  for (const auto& run : runs) {
    OJ r;
    r["domain"] = run.domain;
    r["k"] = run.k;
    r["seed"] = run.seed;
    r["tau"] = run.tau;
    r["n_stages"] = run.plan.size();
    r["serve_stage"] = run.plan.ServingStage();
    r["trained"] = run.trained;
    r["weighted_f1"] = run.report ? OJ(run.report->weighted_f1) : OJ(nullptr);
    r["error"] = run.error;
    doc["runs"].push_back(std::move(r));
  }
  return doc.dump(2) + "\n";
}

std::string SweepResults::ToTable() const {
  std::vector<std::vector<std::string>> cells = {
      {"domain", "k", "tau", "seeds", "F1 mean", "sd", "errors", "ref", "ref JB"}};
  for (const auto& r : rows) {
    cells.push_back({r.domain, std::to_string(r.k), fmt::format("{:.2f}", r.tau),
                     std::to_string(r.seed_count), Fixed(r.mean_f1),
                     Fixed(r.sd_f1), std::to_string(r.errors),
                     OptFixed(r.reference_f1), OptFixed(r.reference_jb_f1)});
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::string out;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += fmt::format("{:<{}}", row[c], width[c] + (c + 1 < row.size() ? 2 : 0));
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  }
  return out;
}

std::vector<Screen> PickDistractors(const Screen& target,
                                    std::span<const Screen> pool,
                                    std::size_t v, DistractorUnit unit,
                                    AblationMode mode,
                                    const QuestionGenerator& generator,
                                    std::uint64_t seed, std::uint64_t stream) {
  if (v <= 1) return {};
  const std::size_t need = v - 1;

  std::set<std::string> target_slots, target_questions;
  for (const auto& q : generator.GenerateAll(target, mode)) {
    target_slots.insert(q.slot_id);
    target_questions.insert(q.text);
  }
  auto collides = [&](const GuiElement& e) {
    if (target_slots.contains(e.slot_id)) return true;
    if (mode == AblationMode::kNoVisuals) return false;
    try {
      return target_questions.contains(generator.Generate(e, mode, 0).text);
    } catch (const EmptyLabelError&) {
      return true;  // cannot be asked at all
    }
  };

  std::vector<std::size_t> tiers[2];
  for (std::size_t s = 0; s < pool.size(); ++s) {
    if (pool[s].screen_id == target.screen_id) continue;
    tiers[pool[s].app_name == target.app_name ? 1 : 0].push_back(s);
  }
  SeededRng rng(seed, stream);

  // Draws `need` items from the tiers, preferring tier 0.
  auto draw = [&](const std::vector<std::size_t>& t0,
                  const std::vector<std::size_t>& t1) {
    std::vector<std::size_t> picked;
    if (t0.size() + t1.size() < need) {
      throw InsufficientScreens(fmt::format(
          "V={} needs {} distractor {} but only {} are available", v, need,
          unit == DistractorUnit::kElements ? "elements" : "screens",
          t0.size() + t1.size()));
    }
    if (t0.size() >= need) {
      for (std::size_t i : rng.SampleIndices(t0.size(), need)) picked.push_back(t0[i]);
    } else {
      picked = t0;
      for (std::size_t i : rng.SampleIndices(t1.size(), need - t0.size())) {
        picked.push_back(t1[i]);
      }
    }
    std::sort(picked.begin(), picked.end());
    return picked;
  };

  std::vector<Screen> out;
  if (unit == DistractorUnit::kScreens) {
    for (std::size_t s : draw(tiers[0], tiers[1])) {
      Screen screen = pool[s];
      std::vector<std::string> visible;
      for (const auto& e : VisibleElements(screen)) {
        if (!collides(e)) visible.push_back(e.element_id);
      }
      screen.visible = std::move(visible);
      out.push_back(std::move(screen));
    }
    return out;
  }

  // Candidates are encoded as screen * kStride + element index.
  constexpr std::size_t kStride = 1 << 20;
  std::vector<std::size_t> cand[2];
  for (int t = 0; t < 2; ++t) {
    for (std::size_t s : tiers[t]) {
      const Screen& screen = pool[s];
      std::set<std::string_view> vis(screen.visible.begin(), screen.visible.end());
      for (std::size_t e = 0; e < screen.elements.size(); ++e) {
        const GuiElement& el = screen.elements[e];
        if (vis.contains(el.element_id) && !collides(el)) {
          cand[t].push_back(s * kStride + e);
        }
      }
    }
  }
  std::map<std::size_t, std::vector<std::string>> chosen;
  for (std::size_t code : draw(cand[0], cand[1])) {
    chosen[code / kStride].push_back(pool[code / kStride].elements[code % kStride].element_id);
  }
  for (auto& [s, ids] : chosen) {
    Screen screen = pool[s];
    screen.visible = std::move(ids);
    out.push_back(std::move(screen));
  }
  return out;
}

std::vector<DistractorRow> DistractorSweep(
    const Domain& target, std::span<const Screen> pool,
    std::span<const AnnotatedUtterance> test, const QaBackend& backend,
    const DistractorConfig& cfg, const QuestionGenerator& generator) {
  cfg.backend.Validate();
  std::vector<DistractorRow> rows;
  for (std::size_t v : cfg.v_range) {
    if (v == 0) throw ValidationError({"distractor levels start at 1"});
    std::vector<SlotFillResult> predicted;
    predicted.reserve(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) {
      std::vector<Screen> screens = {target.screen};
      for (auto& d : PickDistractors(target.screen, pool, v, cfg.unit, cfg.mode,
                                     generator, cfg.seed, v * 1000003ULL + i)) {
        screens.push_back(std::move(d));
      }
      predicted.push_back(FillSlots(screens, test[i].text, backend, cfg.backend,
                                    cfg.mode, generator, test[i].utterance_id));
    }
    rows.push_back({v, TokenF1(test, predicted),
                    ReferenceDistractorF1(target.name, v)});
  }
  return rows;
}

std::string DistractorTableTsv(const std::string& domain,
                               const std::vector<DistractorRow>& rows) {
  std::string out = "domain\tv\tweighted_f1\trejection_accuracy\tref_f1\n";
  for (const auto& r : rows) {
    out += fmt::format("{}\t{}\t{}\t{}\t{}\n", domain, r.v,
                       Fixed(r.report.weighted_f1),
                       Fixed(r.report.rejection_accuracy),
                       OptFixed(r.reference_f1));
  }
  return out;
}

namespace {

struct RefRow {
  const char* domain;
  std::vector<std::pair<std::size_t, double>> values;
};

std::optional<double> Lookup(const std::vector<RefRow>& table,
                             const std::string& domain, std::size_t key) {
  for (const auto& row : table) {
    if (domain != row.domain) continue;
    for (const auto& [k, v] : row.values) {
      if (k == key) return v;
    }
  }
  return std::nullopt;
}

// Weighted token F1 by train size.
const std::vector<RefRow>& VisualSlotRef() {
  static const std::vector<RefRow> t = {
      {"vehicle_logger", {{0, 0.48}, {5, 0.46}, {50, 0.73}, {100, 0.80}, {500, 0.87}}},
      {"atis_visual", {{0, 0.60}, {5, 0.74}, {50, 0.88}, {100, 0.93}, {500, 0.97}}},
      {"united", {{0, 0.40}, {5, 0.44}, {50, 0.58}, {100, 0.72}, {500, 0.74}}},
      {"trip_advisor", {{0, 0.52}, {5, 0.47}, {50, 0.63}, {100, 0.66}, {500, 0.66}}},
  };
  return t;
}

const std::vector<RefRow>& JointBertRef() {
  static const std::vector<RefRow> t = {
      {"vehicle_logger", {{0, 0.00}, {5, 0.00}, {50, 0.48}, {100, 0.45}, {500, 0.78}}},
      {"atis_visual", {{0, 0.00}, {5, 0.00}, {50, 0.66}, {100, 0.77}, {500, 0.91}}},
      {"united", {{0, 0.00}, {5, 0.00}, {50, 0.37}, {100, 0.44}, {500, 0.51}}},
      {"trip_advisor", {{0, 0.00}, {5, 0.00}, {50, 0.18}, {100, 0.53}, {500, 0.59}}},
  };
  return t;
}

// Vehicle Logger by ablation mode.
const std::vector<RefRow>& AblationRef() {
  static const std::vector<RefRow> t = {
      {"novis", {{0, 0.01}, {50, 0.29}, {100, 0.32}, {500, 0.71}}},
      {"text", {{0, 0.36}, {50, 0.69}, {100, 0.71}, {500, 0.88}}},
  };
  return t;
}

// Vehicle Logger after an ATIS_visual stage.
const std::vector<RefRow>& MultiTaskRef() {
  static const std::vector<RefRow> t = {
      {"vehicle_logger", {{0, 0.52}, {5, 0.60}, {100, 0.80}, {500, 0.89}}},
  };
  return t;
}

// Zero-shot F1 by number of visible elements.
const std::vector<RefRow>& DistractorRef() {
  static const std::vector<RefRow> t = {
      {"vehicle_logger", {{1, 0.52}, {2, 0.51}, {3, 0.49}, {4, 0.49}, {5, 0.46}}},
      {"atis_visual", {{1, 0.60}, {2, 0.58}, {3, 0.56}, {4, 0.53}, {5, 0.52}}},
  };
  return t;
}

}  // namespace

std::optional<double> ReferenceF1(const std::string& domain, std::size_t k,
                                  AblationMode mode, bool multi_task) {
  if (mode != AblationMode::kFull) {
    if (domain != "vehicle_logger") return std::nullopt;
    return Lookup(AblationRef(), std::string(AblationModeName(mode)), k);
  }
  if (multi_task) return Lookup(MultiTaskRef(), domain, k);
  return Lookup(VisualSlotRef(), domain, k);
}

std::optional<double> ReferenceJbF1(const std::string& domain, std::size_t k) {
  return Lookup(JointBertRef(), domain, k);
}

std::optional<double> ReferenceDistractorF1(const std::string& domain,
                                            std::size_t v) {
  return Lookup(DistractorRef(), domain, v);
}

}  // namespace slotqa
