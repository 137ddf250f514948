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

// Experiment grids: few-shot sweeps over (domain, train size, seed, tau)
// and distractor sweeps over the number of simultaneously visible elements.

#ifndef SLOTQA_EXPERIMENT_H_
#define SLOTQA_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slotqa/corpus.h"
#include "slotqa/curriculum.h"
#include "slotqa/dispatch.h"
#include "slotqa/metrics.h"
#include "slotqa/qa_backend.h"
#include "slotqa/question_gen.h"
#include "slotqa/screen.h"

namespace slotqa {

struct Domain {
  std::string name;
  Screen screen;
  std::vector<AnnotatedUtterance> utterances;
  // Official split; when empty a seeded 80/20 split of `utterances` is used.
  std::vector<AnnotatedUtterance> official_train;
  std::vector<AnnotatedUtterance> official_test;
};

struct DataSplit {
  std::vector<AnnotatedUtterance> train;
  std::vector<AnnotatedUtterance> test;
};

DataSplit SplitCorpus(const Domain& domain, std::uint64_t seed,
                      double test_fraction = 0.2);

struct ExperimentConfig {
  std::vector<std::string> domains;  // empty: every domain given
  std::vector<std::size_t> train_sizes = {0, 5, 50, 100, 500};
  std::vector<std::uint64_t> seeds = {0};
  AblationMode mode = AblationMode::kFull;
  std::vector<std::size_t> distractor_range = {1, 2, 3, 4, 5};
  std::vector<double> taus = {0.5};
  // Multi-task stages trained between general QA and the target domain.
  std::vector<std::string> auxiliary_domains;
  std::string general_qa_ref = "squad2";
  int epochs = 2;
  std::size_t jobs = 1;
  bool stratified = false;
  BackendConfig backend;

  // Throws ValidationError.
  void Validate() const;
};

struct CellContext {
  const Domain& domain;
  std::size_t k;
  std::uint64_t seed;
  double tau;
  const TrainingPlan& plan;
  const DataSplit& split;
  const std::vector<AnnotatedUtterance>& train_sample;
  AblationMode mode;
  const QuestionGenerator& generator;
};

using BackendFactory =
    std::function<std::unique_ptr<QaBackend>(const CellContext&)>;

// Runs a curriculum before a cell is evaluated. Never called for k = 0.
class Trainer {
 public:
  virtual ~Trainer() = default;
  virtual void Train(const TrainingPlan& plan, const CellContext& cell) = 0;
};

// Gold oracle over the cell's test split.
BackendFactory OracleBackendFactory();

struct RunRecord {
  std::string domain;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  double tau = 0.5;
  TrainingPlan plan;
  bool trained = false;
  std::optional<MetricsReport> report;
  std::string error;  // empty on success
};

struct ResultRow {
  std::string domain;
  std::size_t k = 0;
  double tau = 0.5;
  std::size_t seed_count = 0;  // successful runs
  double mean_f1 = 0.0;
  double sd_f1 = 0.0;          // sample sd; 0 for a single seed
  std::size_t errors = 0;
  std::string per_slot_ref;    // key into the JSON report's per_slot table
  std::optional<double> reference_f1;
  std::optional<double> reference_jb_f1;
};

struct SweepResults {
  std::vector<RunRecord> runs;
  std::vector<ResultRow> rows;

  std::string ToTsv() const;
  std::string ToJson() const;
  std::string ToTable() const;
};

// Cells run on up to cfg.jobs threads; output does not depend on it.
SweepResults RunSweep(const ExperimentConfig& cfg,
                      std::span<const Domain> domains,
                      const BackendFactory& backend_factory,
                      Trainer* trainer = nullptr,
                      const QuestionGenerator& generator = QuestionGenerator());

// Evaluates `backend` on `test` with `screens` (target first) for every
// utterance.
MetricsReport EvaluateScreens(std::span<const Screen> screens,
                              std::span<const AnnotatedUtterance> test,
                              const QaBackend& backend, const BackendConfig& cfg,
                              AblationMode mode,
                              const QuestionGenerator& generator);

enum class DistractorUnit { kElements, kScreens };

struct DistractorConfig {
  std::vector<std::size_t> v_range = {1, 2, 3, 4, 5};
  DistractorUnit unit = DistractorUnit::kElements;
  std::uint64_t seed = 0;
  AblationMode mode = AblationMode::kFull;
  BackendConfig backend;
};

struct DistractorRow {
  std::size_t v = 1;
  MetricsReport report;
  std::optional<double> reference_f1;
};

// Distractor screens for one utterance at level V: V-1 elements (or
// screens) drawn from `pool`, other apps first. Elements whose slot or
// question coincides with a target question are never drawn. Throws
// InsufficientScreens.
std::vector<Screen> PickDistractors(const Screen& target,
                                    std::span<const Screen> pool,
                                    std::size_t v, DistractorUnit unit,
                                    AblationMode mode,
                                    const QuestionGenerator& generator,
                                    std::uint64_t seed, std::uint64_t stream);

std::vector<DistractorRow> DistractorSweep(
    const Domain& target, std::span<const Screen> pool,
    std::span<const AnnotatedUtterance> test, const QaBackend& backend,
    const DistractorConfig& cfg,
    const QuestionGenerator& generator = QuestionGenerator());

std::string DistractorTableTsv(const std::string& domain,
                               const std::vector<DistractorRow>& rows);

// Reference scores for side-by-side display (domain names:
// vehicle_logger, united, trip_advisor, atis_visual).
std::optional<double> ReferenceF1(const std::string& domain, std::size_t k,
                                  AblationMode mode, bool multi_task);
std::optional<double> ReferenceJbF1(const std::string& domain, std::size_t k);
std::optional<double> ReferenceDistractorF1(const std::string& domain,
                                            std::size_t v);

}  // namespace slotqa

#endif  // SLOTQA_EXPERIMENT_H_
