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


// slotqa: command-line front end for the slot-filling pipeline.
//
//   slotqa convert --bio atis.conll --schema atis.tsv --out atis.json
//   slotqa genq --screen vehicle_logger.screen --mode full
//   slotqa fill --screen a.screen --utterance "..." --backend oracle --gold g.json
//   slotqa sample --bio train.conll --k 50 --seed 3
//   slotqa plan --gqa squad2 --aux atis_visual --target vl_k50
//   slotqa eval --screen a.screen --bio test.conll --backend lexical
//   slotqa sweep --domain vl:a.screen:vl.conll --sizes 0,5,50 --jobs 4
//
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "slotqa/corpus.h"
#include "slotqa/curriculum.h"
#include "slotqa/dispatch.h"
#include "slotqa/errors.h"
#include "slotqa/experiment.h"
#include "slotqa/metrics.h"
#include "slotqa/qa_backend.h"
#include "slotqa/question_gen.h"
#include "slotqa/screen.h"
#include "slotqa/squad.h"
#include "slotqa/text.h"

namespace slotqa {
namespace {

using ordered_json = nlohmann::ordered_json;

// Thrown for flag combinations CLI11 cannot express; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::vector<std::string> screens;
  std::string bio;
  std::string schema;
  std::string mode = "full";
  std::string negatives = "all";
  std::string backend = "oracle";
  std::string endpoint;
  double tau = 0.5;
  std::uint64_t seed = 0;
  std::string sizes = "0,5,50,100,500";
  std::string distractors;
  std::size_t jobs = 1;
  std::string out;
  std::string overrides;
  std::string gold;
  std::string gazetteer;
  std::string utterance;
  std::string title = "slotqa";
  std::string unit = "elements";
  std::string format = "tsv";
  std::string taus;
  std::vector<std::string> domains;
  std::vector<std::string> stages;
  std::vector<std::string> aux;
  std::string gqa = "squad2";
  std::string target;
  std::size_t k = 0;
  std::size_t n_seeds = 1;
  int epochs = 2;
  int batch_size = 16;
  bool stratified = false;
  bool zero_shot = false;
  bool strict = false;
  bool table = false;
};

void Emit(const Flags& f, const std::string& text) {
  if (f.out.empty() || f.out == "-") {
    std::cout << text;
  } else {
    WriteFile(f.out, text);
  }
}

// "0,5,50" or "1-5" (inclusive) or a mix of both.
std::vector<std::size_t> ParseSizeList(const std::string& spec) {
  std::vector<std::size_t> out;
  for (const auto& part : Split(spec, ',')) {
    const std::string p(Trim(part));
    if (p.empty()) continue;
    const auto dash = p.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoul(p));
      } else {
        const std::size_t lo = std::stoul(p.substr(0, dash));
        const std::size_t hi = std::stoul(p.substr(dash + 1));
        if (hi < lo) throw UsageError("empty range '" + p + "'");
        for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad number list '" + spec + "'");
    }
  }
  if (out.empty()) throw UsageError("empty number list '" + spec + "'");
  return out;
}

std::vector<double> ParseDoubleList(const std::string& spec) {
  std::vector<double> out;
  for (const auto& part : Split(spec, ',')) {
    const std::string p(Trim(part));
    if (p.empty()) continue;
    try {
      out.push_back(std::stod(p));
    } catch (const std::logic_error&) {
      throw UsageError("bad number list '" + spec + "'");
    }
  }
  if (out.empty()) throw UsageError("empty number list '" + spec + "'");
  return out;
}

QuestionGenerator MakeGenerator(const Flags& f) {
  QuestionGenerator::Options opts;
  if (!f.overrides.empty()) opts.overrides = OverrideTable::Load(f.overrides);
  return QuestionGenerator(std::move(opts));
}

// A screen file, or a schema file turned into a one-field-per-slot screen.
Screen LoadScreenOrSchema(const std::string& path, const std::string& name) {
  std::string lower = AsciiLower(path);
  if (lower.size() >= 4 && lower.compare(lower.size() - 4, 4, ".tsv") == 0) {
    return ScreenFromSchema(SlotSchema::Load(path), name + ".schema", name);
  }
  std::vector<std::string> warnings;
  Screen screen = LoadScreen(path, {}, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return screen;
}

std::vector<Screen> LoadScreens(const Flags& f) {
  std::vector<Screen> screens;
  for (const auto& path : f.screens) {
    screens.push_back(LoadScreenOrSchema(path, "screen"));
  }
  if (screens.empty() && !f.schema.empty()) {
    screens.push_back(ScreenFromSchema(SlotSchema::Load(f.schema), "schema"));
  }
  if (screens.empty()) throw UsageError("--screen or --schema is required");
  return screens;
}

BackendConfig MakeBackendConfig(const Flags& f) {
  BackendConfig cfg;
  cfg.no_answer_threshold = f.tau;
  cfg.batch_size = static_cast<std::size_t>(f.batch_size);
  if (!f.endpoint.empty()) cfg.endpoint = f.endpoint;
  cfg.Validate();
  return cfg;
}

std::string Endpoint(const Flags& f) {
  if (!f.endpoint.empty()) return f.endpoint;
  if (const char* env = std::getenv("SLOTQA_ENDPOINT"); env && *env) return env;
  throw UsageError("--backend remote needs --endpoint or SLOTQA_ENDPOINT");
}

// Gold file: [{"utterance": "...", "fills": {"slot_key": "answer", ...}}].
GoldOracleBackend OracleFromGoldFile(const std::string& path,
                                     std::span<const Screen> screens,
                                     AblationMode mode,
                                     const QuestionGenerator& gen) {
  std::map<std::string, std::string> question_of;
  for (const auto& pq : PlanQuestions(screens, mode, gen)) {
    question_of.emplace(pq.slot_key, pq.question.text);
  }
  ordered_json doc;
  try {
    doc = ordered_json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, e.what());
  }
  if (!doc.is_array()) throw ParseError(path, "expected a JSON array");
  GoldOracleBackend oracle;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& entry = doc[i];
    const std::string locus = fmt::format("{}: [{}]", path, i);
    if (!entry.is_object() || !entry.contains("utterance") ||
        !entry["utterance"].is_string()) {
      throw ParseError(locus, "entry needs a string 'utterance'");
    }
    const std::string context = entry["utterance"].get<std::string>();
    if (!entry.contains("fills")) continue;
    if (!entry["fills"].is_object()) throw ParseError(locus, "'fills' must be an object");
    for (const auto& [key, value] : entry["fills"].items()) {
      if (!value.is_string()) throw ParseError(locus, "fill '" + key + "' must be a string");
      auto q = question_of.find(key);
      if (q == question_of.end()) {
        throw ParseError(locus, "no visible element fills slot '" + key + "'");
      }
      oracle.Add(context, q->second, value.get<std::string>());
    }
  }
  return oracle;
}

std::unique_ptr<QaBackend> MakeBackend(const Flags& f,
                                       std::span<const Screen> screens,
                                       const std::vector<AnnotatedUtterance>* gold,
                                       AblationMode mode,
                                       const QuestionGenerator& gen) {
  if (f.backend == "lexical") {
    if (f.gazetteer.empty()) throw UsageError("--backend lexical needs --gazetteer");
    return std::make_unique<LexicalBackend>(Gazetteer::Load(f.gazetteer));
  }
  if (f.backend == "remote") return std::make_unique<RemoteBackend>(Endpoint(f));
  if (!f.gold.empty()) {
    return std::make_unique<GoldOracleBackend>(
        OracleFromGoldFile(f.gold, screens, mode, gen));
  }
  if (gold != nullptr) {
    return std::make_unique<GoldOracleBackend>(
        BuildScreenOracle(screens.front(), *gold, mode, gen));
  }
  throw UsageError("--backend oracle needs --gold or --bio");
}

std::string FillReportJson(const SlotFillResult& r, std::string_view utterance) {
  ordered_json doc;
  doc["utterance"] = std::string(utterance);
  if (!r.utterance_id.empty()) doc["utterance_id"] = r.utterance_id;
  doc["mode"] = std::string(AblationModeName(r.mode));
  doc["visible_count"] = r.visible_count;
  doc["distractor_count"] = r.distractor_count;
  ordered_json fills = ordered_json::object();
  for (const auto& [slot, fill] : r.fills) {
    fills[slot] = {{"text", fill.text},
                   {"start", ByteToCharOffset(utterance, fill.start_char)},
                   {"end", ByteToCharOffset(utterance, fill.end_char)},
                   {"score", fill.span_score}};
  }
  doc["fills"] = std::move(fills);
  ordered_json rejections = ordered_json::object();
  for (const auto& [slot, score] : r.rejections) rejections[slot] = score;
  doc["rejections"] = std::move(rejections);
  ordered_json conflicts = ordered_json::array();
  for (const auto& c : r.conflicts) conflicts.push_back({c.first, c.second});
  doc["conflicts"] = std::move(conflicts);
  doc["warnings"] = r.warnings;
  return doc.dump(2) + "\n";
}

std::string MetricsTable(const MetricsReport& m) {
  std::size_t width = 4;
  for (const auto& [slot, _] : m.per_slot) width = std::max(width, slot.size());
  std::string out = fmt::format("{:<{}}  {:>9}  {:>9}  {:>9}  {:>7}\n", "slot",
                                width, "precision", "recall", "f1", "support");
  for (const auto& [slot, s] : m.per_slot) {
    out += fmt::format("{:<{}}  {:>9.4f}  {:>9.4f}  {:>9.4f}  {:>7}\n", slot,
                       width, s.precision, s.recall, s.f1, s.support);
  }
  out += fmt::format("weighted_f1 {:.4f}  micro_f1 {:.4f}  rejection_accuracy {:.4f}\n",
                     m.weighted_f1, m.micro_f1, m.rejection_accuracy);
  return out;
}

// NAME:SCREEN_OR_SCHEMA:CORPUS
Domain LoadDomain(const std::string& spec, const BioOptions& bio) {
  const auto first = spec.find(':');
  const auto last = spec.rfind(':');
  if (first == std::string::npos || first == last) {
    throw UsageError("--domain expects NAME:SCREEN_OR_SCHEMA:CORPUS, got '" + spec + "'");
  }
  Domain d;
  d.name = spec.substr(0, first);
  d.screen = LoadScreenOrSchema(spec.substr(first + 1, last - first - 1), d.name);
  d.utterances = LoadBioCorpus(spec.substr(last + 1), bio);
  return d;
}

int RunConvert(const Flags& f) {
  const auto utts = LoadBioCorpus(f.bio, {f.strict});
  const auto schema = SlotSchema::Load(f.schema);
  const auto examples =
      ToQaExamples(utts, schema, ParseAblationMode(f.mode),
                   NegativePolicy::Parse(f.negatives, f.seed), MakeGenerator(f));
  Emit(f, RenderSquad(examples, f.title));
  return 0;
}

int RunGenq(const Flags& f) {
  const auto screens = LoadScreens(f);
  std::string out;
  for (const auto& pq :
       PlanQuestions(screens, ParseAblationMode(f.mode), MakeGenerator(f))) {
    out += pq.question.text + "\n";
  }
  Emit(f, out);
  return 0;
}

int RunFill(const Flags& f) {
  const auto screens = LoadScreens(f);
  const AblationMode mode = ParseAblationMode(f.mode);
  const auto gen = MakeGenerator(f);
  std::optional<std::vector<AnnotatedUtterance>> gold;
  if (!f.bio.empty()) gold = LoadBioCorpus(f.bio, {f.strict});
  const auto backend =
      MakeBackend(f, screens, gold ? &*gold : nullptr, mode, gen);
  const auto result = FillSlots(screens, f.utterance, *backend,
                                MakeBackendConfig(f), mode, gen);
  Emit(f, FillReportJson(result, f.utterance));
  return 0;
}

int RunSample(const Flags& f) {
  const auto utts = LoadBioCorpus(f.bio, {f.strict});
  const auto sample = SampleFewShot(utts, f.k, f.seed, f.stratified);
  const auto coverage = ComputeSlotCoverage(sample, utts);
  if (!coverage.missing.empty()) {
    std::cerr << "warning: " << coverage.missing.size()
              << " slot(s) absent from the sample: " << Join(coverage.missing, ", ")
              << "\n";
  }
  Emit(f, RenderBioCorpus(sample));
  return 0;
}

// dataset:kind[:epochs][:eval]
StageSpec ParseStageFlag(const std::string& flag) {
  const auto parts = Split(flag, ':');
  if (parts.size() < 2 || parts.size() > 4) {
    throw UsageError("--stage expects DATASET:KIND[:EPOCHS][:eval], got '" + flag + "'");
  }
  StageSpec s;
  s.dataset_ref = parts[0];
  s.kind = ParseDatasetKind(parts[1]);
  for (std::size_t i = 2; i < parts.size(); ++i) {
    if (parts[i] == "eval") {
      s.evaluate_only = true;
    } else {
      try {
        s.epochs = std::stoi(parts[i]);
      } catch (const std::logic_error&) {
        throw UsageError("bad epochs in --stage '" + flag + "'");
      }
    }
  }
  return s;
}

int RunPlan(const Flags& f) {
  TrainingPlan plan;
  if (!f.stages.empty()) {
    std::vector<StageSpec> specs;
    for (const auto& s : f.stages) specs.push_back(ParseStageFlag(s));
    plan = BuildCurriculum(specs);
  } else {
    if (f.target.empty()) throw UsageError("plan needs --stage or --target");
    plan = MultiTaskPlan(f.gqa, f.aux, f.target, f.epochs, f.zero_shot);
  }
  Emit(f, ManifestToJson(plan));
  return 0;
}

int RunEval(const Flags& f) {
  auto screens = LoadScreens(f);
  const AblationMode mode = ParseAblationMode(f.mode);
  const auto gen = MakeGenerator(f);
  const auto test = LoadBioCorpus(f.bio, {f.strict});
  const BackendConfig cfg = MakeBackendConfig(f);
  if (f.distractors.empty()) {
    const auto backend = MakeBackend(f, screens, &test, mode, gen);
    const auto report = EvaluateScreens(screens, test, *backend, cfg, mode, gen);
    Emit(f, f.table ? MetricsTable(report) : MetricsToJson(report));
    return 0;
  }
  // Distractor sweep: the first screen is the target, the rest the pool.
  Domain target;
  const std::string& sid = screens.front().screen_id;
  target.name = sid.substr(0, sid.find('.'));
  target.screen = screens.front();
  const std::vector<Screen> pool(screens.begin() + 1, screens.end());
  const auto backend =
      MakeBackend(f, std::span<const Screen>(&target.screen, 1), &test, mode, gen);
  DistractorConfig dcfg;
  dcfg.v_range = ParseSizeList(f.distractors);
  dcfg.unit = f.unit == "screens" ? DistractorUnit::kScreens : DistractorUnit::kElements;
  dcfg.seed = f.seed;
  dcfg.mode = mode;
  dcfg.backend = cfg;
  Emit(f, DistractorTableTsv(target.name,
                             DistractorSweep(target, pool, test, *backend, dcfg, gen)));
  return 0;
}

int RunSweepCommand(const Flags& f) {
  if (f.domains.empty()) throw UsageError("sweep needs at least one --domain");
  std::vector<Domain> domains;
  for (const auto& spec : f.domains) domains.push_back(LoadDomain(spec, {f.strict}));

  ExperimentConfig cfg;
  cfg.train_sizes = ParseSizeList(f.sizes);
  cfg.seeds.clear();
  for (std::size_t i = 0; i < f.n_seeds; ++i) cfg.seeds.push_back(f.seed + i);
  cfg.mode = ParseAblationMode(f.mode);
  cfg.taus = f.taus.empty() ? std::vector<double>{f.tau} : ParseDoubleList(f.taus);
  cfg.auxiliary_domains = f.aux;
  cfg.general_qa_ref = f.gqa;
  cfg.epochs = f.epochs;
  cfg.jobs = f.jobs;
  cfg.stratified = f.stratified;
  cfg.backend = MakeBackendConfig(f);
  if (!f.distractors.empty()) cfg.distractor_range = ParseSizeList(f.distractors);
  const auto gen = MakeGenerator(f);

  BackendFactory factory;
  if (f.backend == "oracle") {
    factory = OracleBackendFactory();
  } else if (f.backend == "lexical") {
    if (f.gazetteer.empty()) throw UsageError("--backend lexical needs --gazetteer");
    auto gaz = std::make_shared<Gazetteer>(Gazetteer::Load(f.gazetteer));
    factory = [gaz](const CellContext&) -> std::unique_ptr<QaBackend> {
      return std::make_unique<LexicalBackend>(*gaz);
    };
  } else {
    const std::string endpoint = Endpoint(f);
    factory = [endpoint](const CellContext&) -> std::unique_ptr<QaBackend> {
      return std::make_unique<RemoteBackend>(endpoint);
    };
  }
  const auto results = RunSweep(cfg, domains, factory, nullptr, gen);
  std::string out;
  if (f.table) {
    out = results.ToTable();
  } else if (f.format == "json") {
    out = results.ToJson();
  } else {
    out = results.ToTsv();
  }

  if (!f.distractors.empty() && f.backend == "oracle" && domains.size() > 1) {
    // Distractor tables per domain; the pool is every other domain's screen.
    for (const auto& d : domains) {
      std::vector<Screen> pool;
      for (const auto& other : domains) {
        if (&other != &d) pool.push_back(other.screen);
      }
      const DataSplit split = SplitCorpus(d, f.seed);
      const auto oracle = BuildScreenOracle(d.screen, split.test, cfg.mode, gen);
      DistractorConfig dcfg;
      dcfg.v_range = cfg.distractor_range;
      dcfg.unit = f.unit == "screens" ? DistractorUnit::kScreens
                                      : DistractorUnit::kElements;
      dcfg.seed = f.seed;
      dcfg.mode = cfg.mode;
      dcfg.backend = cfg.backend;
      out += "\n" + DistractorTableTsv(
                        d.name, DistractorSweep(d, pool, split.test, oracle, dcfg, gen));
    }
  }
  Emit(f, out);
  return 0;
}

}  // namespace
}  // namespace slotqa

int main(int argc, char** argv) {
  using slotqa::Flags;
  Flags f;
  CLI::App app{"Slot filling over GUI screens as extractive question answering"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  const auto modes = CLI::IsMember({"full", "text", "novis"});
  const auto backends = CLI::IsMember({"oracle", "lexical", "remote"});

  auto* convert = app.add_subcommand("convert", "BIO corpus to SQuAD v2 JSON");
  convert->add_option("--bio", f.bio, "CoNLL/BIO corpus")->required();
  convert->add_option("--schema", f.schema, "Slot schema TSV")->required();
  convert->add_option("--mode", f.mode, "Question mode")->check(modes)->capture_default_str();
  convert->add_option("--negatives", f.negatives, "all, none or sample:K")->capture_default_str();
  convert->add_option("--seed", f.seed, "Seed for sampled negatives")->capture_default_str();
  convert->add_option("--title", f.title, "SQuAD article title")->capture_default_str();
  convert->add_option("--overrides", f.overrides, "Question override TSV");
  convert->add_flag("--strict", f.strict, "Reject dangling I- tags");
  convert->add_option("--out", f.out, "Output path (default stdout)");

  auto* genq = app.add_subcommand("genq", "Print one question per visible element");
  genq->add_option("--screen", f.screens, "Screen JSON (repeatable)");
  genq->add_option("--schema", f.schema, "Slot schema TSV used as a screen");
  genq->add_option("--mode", f.mode, "Question mode")->check(modes)->capture_default_str();
  genq->add_option("--overrides", f.overrides, "Question override TSV");
  genq->add_option("--out", f.out, "Output path (default stdout)");

  auto* fill = app.add_subcommand("fill", "Fill the slots of one utterance");
  fill->add_option("--screen", f.screens, "Screen JSON; first is the target (repeatable)");
  fill->add_option("--schema", f.schema, "Slot schema TSV used as a screen");
  fill->add_option("--utterance", f.utterance, "Utterance text")->required();
  fill->add_option("--backend", f.backend, "QA backend")->check(backends)->capture_default_str();
  fill->add_option("--gold", f.gold, "Gold fills JSON for the oracle backend");
  fill->add_option("--bio", f.bio, "Gold BIO corpus for the oracle backend");
  fill->add_option("--gazetteer", f.gazetteer, "Gazetteer TSV for the lexical backend");
  fill->add_option("--endpoint", f.endpoint, "Remote backend URL")->envname("SLOTQA_ENDPOINT");
  fill->add_option("--tau", f.tau, "No-answer threshold")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  fill->add_option("--batch-size", f.batch_size, "Remote batch size")->check(CLI::PositiveNumber)->capture_default_str();
  fill->add_option("--mode", f.mode, "Question mode")->check(modes)->capture_default_str();
  fill->add_option("--overrides", f.overrides, "Question override TSV");
  fill->add_flag("--strict", f.strict, "Reject dangling I- tags");
  fill->add_option("--out", f.out, "Output path (default stdout)");

  auto* sample = app.add_subcommand("sample", "Draw a seeded few-shot sample");
  sample->add_option("--bio", f.bio, "CoNLL/BIO corpus")->required();
  sample->add_option("--k", f.k, "Sample size")->required();
  sample->add_option("--seed", f.seed, "Sampling seed")->capture_default_str();
  sample->add_flag("--stratified", f.stratified, "Cover every slot when k allows");
  sample->add_flag("--strict", f.strict, "Reject dangling I- tags");
  sample->add_option("--out", f.out, "Output path (default stdout)");

  auto* plan = app.add_subcommand("plan", "Write a training-plan manifest");
  plan->add_option("--stage", f.stages, "DATASET:KIND[:EPOCHS][:eval] (repeatable, in order)");
  plan->add_option("--gqa", f.gqa, "General QA dataset ref")->capture_default_str();
  plan->add_option("--aux", f.aux, "Auxiliary slot-filling dataset ref (repeatable)");
  plan->add_option("--target", f.target, "Target slot-filling dataset ref");
  plan->add_option("--epochs", f.epochs, "Epochs per trained stage")->capture_default_str();
  plan->add_flag("--zero-shot", f.zero_shot, "Target stage is evaluate-only");
  plan->add_option("--out", f.out, "Output path (default stdout)");

  auto* eval = app.add_subcommand("eval", "Token F1 of a backend on a test corpus");
  eval->add_option("--screen", f.screens, "Screen JSON; first is the target (repeatable)");
  eval->add_option("--schema", f.schema, "Slot schema TSV used as a screen");
  eval->add_option("--bio", f.bio, "Gold BIO test corpus")->required();
  eval->add_option("--backend", f.backend, "QA backend")->check(backends)->capture_default_str();
  eval->add_option("--gold", f.gold, "Gold fills JSON for the oracle backend");
  eval->add_option("--gazetteer", f.gazetteer, "Gazetteer TSV for the lexical backend");
  eval->add_option("--endpoint", f.endpoint, "Remote backend URL")->envname("SLOTQA_ENDPOINT");
  eval->add_option("--tau", f.tau, "No-answer threshold")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  eval->add_option("--batch-size", f.batch_size, "Remote batch size")->check(CLI::PositiveNumber)->capture_default_str();
  eval->add_option("--mode", f.mode, "Question mode")->check(modes)->capture_default_str();
  eval->add_option("--overrides", f.overrides, "Question override TSV");
  eval->add_option("--distractors", f.distractors, "Distractor levels, e.g. 1-5; pool is the other --screen files");
  eval->add_option("--unit", f.unit, "Distractor unit")->check(CLI::IsMember({"elements", "screens"}))->capture_default_str();
  eval->add_option("--seed", f.seed, "Distractor sampling seed")->capture_default_str();
  eval->add_flag("--table", f.table, "Aligned table instead of JSON");
  eval->add_flag("--strict", f.strict, "Reject dangling I- tags");
  eval->add_option("--out", f.out, "Output path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Run the few-shot experiment grid");
  sweep->add_option("--domain", f.domains, "NAME:SCREEN_OR_SCHEMA:CORPUS (repeatable)")->required();
  sweep->add_option("--sizes", f.sizes, "Training sizes, e.g. 0,5,50")->capture_default_str();
  sweep->add_option("--seed", f.seed, "First seed")->capture_default_str();
  sweep->add_option("--seeds", f.n_seeds, "Number of consecutive seeds")->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--tau", f.tau, "No-answer threshold")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  sweep->add_option("--taus", f.taus, "Comma-separated thresholds (overrides --tau)");
  sweep->add_option("--mode", f.mode, "Question mode")->check(modes)->capture_default_str();
  sweep->add_option("--backend", f.backend, "QA backend")->check(backends)->capture_default_str();
  sweep->add_option("--gazetteer", f.gazetteer, "Gazetteer TSV for the lexical backend");
  sweep->add_option("--endpoint", f.endpoint, "Remote backend URL")->envname("SLOTQA_ENDPOINT");
  sweep->add_option("--batch-size", f.batch_size, "Remote batch size")->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--aux", f.aux, "Auxiliary domain ref (repeatable)");
  sweep->add_option("--gqa", f.gqa, "General QA dataset ref")->capture_default_str();
  sweep->add_option("--epochs", f.epochs, "Epochs per trained stage")->capture_default_str();
  sweep->add_option("--distractors", f.distractors, "Also run distractor levels, e.g. 1-5");
  sweep->add_option("--unit", f.unit, "Distractor unit")->check(CLI::IsMember({"elements", "screens"}))->capture_default_str();
  sweep->add_option("--jobs", f.jobs, "Parallel grid cells")->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_flag("--stratified", f.stratified, "Stratified few-shot samples");
  sweep->add_option("--format", f.format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}))->capture_default_str();
  sweep->add_flag("--table", f.table, "Aligned table instead of --format");
  sweep->add_option("--overrides", f.overrides, "Question override TSV");
  sweep->add_flag("--strict", f.strict, "Reject dangling I- tags");
  sweep->add_option("--out", f.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*convert) return slotqa::RunConvert(f);
    if (*genq) return slotqa::RunGenq(f);
    if (*fill) return slotqa::RunFill(f);
    if (*sample) return slotqa::RunSample(f);
    if (*plan) return slotqa::RunPlan(f);
    if (*eval) return slotqa::RunEval(f);
    if (*sweep) return slotqa::RunSweepCommand(f);
  } catch (const slotqa::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
