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

#include "slotqa/dispatch.h"

#include <algorithm>
#include <set>

#include "slotqa/errors.h"
#include "slotqa/text.h"

namespace slotqa {

TokenRange AlignToTokens(std::string_view utterance, std::size_t start_char,
                         std::size_t end_char) {
  if (end_char <= start_char || end_char > utterance.size()) {
    throw SpanOutOfRange("span [" + std::to_string(start_char) + ", " +
                         std::to_string(end_char) + ") is outside an utterance of " +
                         std::to_string(utterance.size()) + " bytes");
  }
  const auto tokens = WhitespaceTokenize(utterance);
  std::optional<std::size_t> first;
  std::size_t last = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].end() > start_char && tokens[i].start < end_char) {
      if (!first) first = i;
      last = i;
    }
  }
  if (!first) {
    throw SpanOutOfRange("span [" + std::to_string(start_char) + ", " +
                         std::to_string(end_char) + ") covers no token");
  }
  return {*first, last + 1};
}

std::vector<PlannedQuestion> PlanQuestions(std::span<const Screen> screens,
                                           AblationMode mode,
                                           const QuestionGenerator& generator) {
  std::vector<PlannedQuestion> out;
  int ordinal_offset = 0;
  for (std::size_t s = 0; s < screens.size(); ++s) {
    const Screen& screen = screens[s];
    for (auto& q : generator.GenerateAll(screen, mode, ordinal_offset)) {
      std::string key =
          s == 0 ? q.slot_id : screen.screen_id + "/" + q.slot_id;
      out.push_back({std::move(key), std::move(q)});
    }
    ordinal_offset += static_cast<int>(screen.elements.size());
  }
  return out;
}

SlotFillResult FillSlots(std::span<const Screen> screens,
                         std::string_view utterance, const QaBackend& backend,
                         const BackendConfig& cfg, AblationMode mode,
                         const QuestionGenerator& generator,
                         std::string utterance_id) {
  if (screens.empty()) throw Error("FillSlots needs at least one screen");
  SlotFillResult result;
  result.utterance_id = std::move(utterance_id);
  result.mode = mode;

  const auto planned = PlanQuestions(screens, mode, generator);
  result.visible_count = planned.size();
  result.distractor_count = planned.size() - screens.front().visible.size();
  if (planned.empty()) return result;

  std::vector<QaQuery> queries;
  queries.reserve(planned.size());
  for (const auto& p : planned) {
    queries.push_back({p.slot_key, p.question.text, std::string(utterance)});
  }
  const auto outcomes = backend.BatchExtract(queries, cfg);

  for (std::size_t i = 0; i < planned.size(); ++i) {
    const std::string& key = planned[i].slot_key;
    const BatchOutcome& o = outcomes[i];
    if (o.status == BatchOutcome::Status::kUnavailable) {
      throw BackendUnavailable("slot '" + key + "': " + o.error);
    }
    if (o.status == BatchOutcome::Status::kError) {
      throw Error("slot '" + key + "': " + o.error);
    }
    ExtractionResult r = o.result;
    if (o.status == BatchOutcome::Status::kOk) {
      try {
        CheckExtraction(r, utterance);
      } catch (const ContractViolation& e) {
        result.warnings.push_back("slot '" + key + "': " + e.what());
        r = ExtractionResult::NoAnswer();
      }
    } else {
      result.warnings.push_back("slot '" + key + "': " + o.error);
      r = ExtractionResult::NoAnswer();
    }
    if (IsRejected(r, cfg)) {
      result.rejections[key] = r.no_answer_score;
      continue;
    }
    TokenRange range;
    try {
      range = AlignToTokens(utterance, r.answer->start_char, r.answer->end_char);
    } catch (const SpanOutOfRange& e) {
      result.warnings.push_back("slot '" + key + "': " + e.what());
      result.rejections[key] = r.no_answer_score;
      continue;
    }
    const auto tokens = WhitespaceTokenize(utterance);
    FilledSlot fill;
    fill.start_char = tokens[range.start].start;
    fill.end_char = tokens[range.end - 1].end();
    fill.text = std::string(
        utterance.substr(fill.start_char, fill.end_char - fill.start_char));
    fill.span_score = r.span_score;
    fill.tokens = range;
    result.fills[key] = std::move(fill);
  }

  // Overlaps, in question order.
  for (std::size_t i = 0; i < planned.size(); ++i) {
    auto a = result.fills.find(planned[i].slot_key);
    if (a == result.fills.end()) continue;
    for (std::size_t j = i + 1; j < planned.size(); ++j) {
      auto b = result.fills.find(planned[j].slot_key);
      if (b == result.fills.end()) continue;
      if (a->second.start_char < b->second.end_char &&
          b->second.start_char < a->second.end_char) {
        result.conflicts.push_back({a->first, b->first});
      }
    }
  }
  return result;
}

GoldOracleBackend BuildScreenOracle(
    const Screen& screen, std::span<const AnnotatedUtterance> utterances,
    AblationMode mode, const QuestionGenerator& generator) {
  std::map<std::string, std::string> question_for;
  for (auto& q : generator.GenerateAll(screen, mode)) {
    question_for[q.slot_id] = std::move(q.text);
  }
  GoldOracleBackend oracle;
  for (const auto& utt : utterances) {
    std::set<std::string> seen;
    for (const auto& fill : utt.slots) {
      auto it = question_for.find(fill.slot_id);
      if (it == question_for.end() || !seen.insert(fill.slot_id).second) {
        continue;
      }
      oracle.Add(utt.text, it->second, fill.surface, fill.start_char);
    }
  }
  return oracle;
}

}  // namespace slotqa
