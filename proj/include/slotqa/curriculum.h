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

// Ordered fine-tuning curricula. Stage 1 is a general extractive-QA corpus;
// each later stage refines the previous model on a slot-filling set. A plan
// whose last stage is evaluate-only serves the model of stage N-1 on that
// target (multi-task zero-shot).

#ifndef SLOTQA_CURRICULUM_H_
#define SLOTQA_CURRICULUM_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slotqa {

enum class DatasetKind { kGeneralQa, kSlotFilling };

std::string_view DatasetKindName(DatasetKind kind);  // general_qa, slot_filling
DatasetKind ParseDatasetKind(std::string_view name);

struct StageSpec {
  std::string dataset_ref;
  DatasetKind kind = DatasetKind::kSlotFilling;
  int epochs = 2;
  std::string learning_rate = "default";
  std::string freeze = "none";
  bool evaluate_only = false;

  bool operator==(const StageSpec&) const = default;
};

struct TrainingStage {
  int index = 0;  // 1-based
  StageSpec spec;

  bool operator==(const TrainingStage&) const = default;
};

struct TrainingPlan {
  std::vector<TrainingStage> stages;

  int size() const { return static_cast<int>(stages.size()); }
  // Index of the stage whose weights answer questions on the target.
  int ServingStage() const;
  // Stages that actually train (all but a trailing evaluate-only stage).
  int TrainedStageCount() const;

  bool operator==(const TrainingPlan&) const = default;
};

// Throws InvalidPlan describing the first broken rule.
void ValidatePlan(const TrainingPlan& plan);

// Throws EmptyPlan for no stages, InvalidPlan otherwise.
TrainingPlan BuildCurriculum(std::span<const StageSpec> stage_specs);

// general QA -> auxiliaries... -> target. With `zero_shot` the target stage
// is evaluate-only.
TrainingPlan MultiTaskPlan(const std::string& general_qa_ref,
                           const std::vector<std::string>& auxiliary_refs,
                           const std::string& target_ref, int epochs,
                           bool zero_shot);

std::string ManifestToJson(const TrainingPlan& plan);
// Throws ParseError or InvalidPlan.
TrainingPlan ParseManifest(std::string_view json_text,
                           std::string_view source = "<manifest>");

}  // namespace slotqa

#endif  // SLOTQA_CURRICULUM_H_
