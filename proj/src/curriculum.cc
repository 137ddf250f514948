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

#include "slotqa/curriculum.h"

#include "json.hpp"
#include "slotqa/errors.h"

namespace slotqa {

std::string_view DatasetKindName(DatasetKind kind) {
  return kind == DatasetKind::kGeneralQa ? "general_qa" : "slot_filling";
}

DatasetKind ParseDatasetKind(std::string_view name) {
  if (name == "general_qa") return DatasetKind::kGeneralQa;
  if (name == "slot_filling") return DatasetKind::kSlotFilling;
  throw ParseError("kind", "unknown dataset kind '" + std::string(name) +
                               "' (expected general_qa or slot_filling)");
}

int TrainingPlan::ServingStage() const {
  if (stages.empty()) return 0;
  if (stages.back().spec.evaluate_only) return size() - 1;
  return size();
}

int TrainingPlan::TrainedStageCount() const { return ServingStage(); }

void ValidatePlan(const TrainingPlan& plan) {
  if (plan.stages.empty()) throw EmptyPlan();
  for (int i = 0; i < plan.size(); ++i) {
    const TrainingStage& s = plan.stages[i];
    const std::string where = "stage " + std::to_string(i + 1);
    if (s.index != i + 1) {
      throw InvalidPlan(where + ": index " + std::to_string(s.index) +
                        " breaks the 1..N sequence");
    }
    if (s.spec.dataset_ref.empty()) throw InvalidPlan(where + ": empty dataset");
    if (s.spec.epochs < 0) throw InvalidPlan(where + ": negative epochs");
    if (s.spec.evaluate_only && i + 1 != plan.size()) {
      throw InvalidPlan(where + ": only the last stage may be evaluate-only");
    }
  }
  if (plan.size() >= 2 &&
      plan.stages.front().spec.kind != DatasetKind::kGeneralQa) {
    throw InvalidPlan("stage 1 of a multi-stage plan must be a general_qa corpus");
  }
  if (plan.size() == 1 && plan.stages.front().spec.evaluate_only) {
    throw InvalidPlan("an evaluate-only stage needs a preceding stage to serve");
  }
}

TrainingPlan BuildCurriculum(std::span<const StageSpec> stage_specs) {
  if (stage_specs.empty()) throw EmptyPlan();
  TrainingPlan plan;
  for (std::size_t i = 0; i < stage_specs.size(); ++i) {
    plan.stages.push_back({static_cast<int>(i) + 1, stage_specs[i]});
  }
  ValidatePlan(plan);
  return plan;
}

TrainingPlan MultiTaskPlan(const std::string& general_qa_ref,
                           const std::vector<std::string>& auxiliary_refs,
                           const std::string& target_ref, int epochs,
                           bool zero_shot) {
  std::vector<StageSpec> specs;
  specs.push_back({general_qa_ref, DatasetKind::kGeneralQa, epochs});
  for (const auto& aux : auxiliary_refs) {
    specs.push_back({aux, DatasetKind::kSlotFilling, epochs});
  }
  StageSpec target{target_ref, DatasetKind::kSlotFilling, epochs};
  target.evaluate_only = zero_shot;
  if (zero_shot) target.epochs = 0;
  specs.push_back(std::move(target));
  return BuildCurriculum(specs);
}

std::string ManifestToJson(const TrainingPlan& plan) {
  ValidatePlan(plan);
  nlohmann::ordered_json doc;
  doc["n_stages"] = plan.size();
  doc["serve_stage"] = plan.ServingStage();
  doc["stages"] = nlohmann::ordered_json::array();
  for (const auto& s : plan.stages) {
    nlohmann::ordered_json st;
    st["index"] = s.index;
    st["dataset"] = s.spec.dataset_ref;
    st["kind"] = DatasetKindName(s.spec.kind);
    st["epochs"] = s.spec.epochs;
    st["learning_rate"] = s.spec.learning_rate;
    st["freeze"] = s.spec.freeze;
    st["evaluate_only"] = s.spec.evaluate_only;
    doc["stages"].push_back(std::move(st));
  }
  return doc.dump(2) + "\n";
}

TrainingPlan ParseManifest(std::string_view json_text, std::string_view source) {
  TrainingPlan plan;
  try {
    auto doc = nlohmann::json::parse(json_text);
    for (const auto& st : doc.at("stages")) {
      TrainingStage stage;
      stage.index = st.at("index").get<int>();
      stage.spec.dataset_ref = st.at("dataset").get<std::string>();
      stage.spec.kind = ParseDatasetKind(st.value("kind", "slot_filling"));
      stage.spec.epochs = st.value("epochs", 2);
      stage.spec.learning_rate = st.value("learning_rate", "default");
      stage.spec.freeze = st.value("freeze", "none");
      stage.spec.evaluate_only = st.value("evaluate_only", false);
      plan.stages.push_back(std::move(stage));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(source), e.what());
  }
  ValidatePlan(plan);
  return plan;
}

}  // namespace slotqa
