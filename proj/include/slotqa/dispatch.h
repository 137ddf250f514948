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

// End-to-end slot filling for one utterance against the screens currently
// shown: every visible element becomes a question, all questions go to the
// backend in one batch, and accepted answers are snapped to whole tokens.

#ifndef SLOTQA_DISPATCH_H_
#define SLOTQA_DISPATCH_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slotqa/corpus.h"
#include "slotqa/qa_backend.h"
#include "slotqa/question_gen.h"
#include "slotqa/screen.h"

namespace slotqa {

// Half-open whitespace-token index range.
struct TokenRange {
  std::size_t start = 0;
  std::size_t end = 0;
  bool operator==(const TokenRange&) const = default;
};

// Smallest whitespace-token window covering [start_char, end_char); tokens
// partially covered are included whole. Throws SpanOutOfRange when the span
// is empty, leaves the utterance, or covers only whitespace.
TokenRange AlignToTokens(std::string_view utterance, std::size_t start_char,
                         std::size_t end_char);

struct FilledSlot {
  std::string text;  // utterance substring over the aligned tokens
  std::size_t start_char = 0;
  std::size_t end_char = 0;
  double span_score = 0.0;
  TokenRange tokens;

  bool operator==(const FilledSlot&) const = default;
};

struct SlotConflict {
  std::string first;
  std::string second;
  bool operator==(const SlotConflict&) const = default;
};

struct SlotFillResult {
  std::string utterance_id;
  // Target-screen slots are keyed by slot_id; distractor slots by
  // "<screen_id>/<slot_id>". The two maps are disjoint and together cover
  // every question asked.
  std::map<std::string, FilledSlot> fills;
  std::map<std::string, double> rejections;
  AblationMode mode = AblationMode::kFull;
  std::size_t visible_count = 0;     // visible elements over all screens
  std::size_t distractor_count = 0;  // visible elements beyond the target
  // Fills whose spans overlap. Reported, never arbitrated.
  std::vector<SlotConflict> conflicts;
  // Backend answers dropped for breaking the substring contract.
  std::vector<std::string> warnings;
};

struct PlannedQuestion {
  std::string slot_key;
  Question question;
};

// Questions for all visible elements of all screens, in screen order.
// NoVisuals ordinals continue across screens.
std::vector<PlannedQuestion> PlanQuestions(std::span<const Screen> screens,
                                           AblationMode mode,
                                           const QuestionGenerator& generator);

// screens[0] is the target, the rest are distractors. Backend transport
// failures propagate as BackendUnavailable naming the slot.
SlotFillResult FillSlots(std::span<const Screen> screens,
                         std::string_view utterance, const QaBackend& backend,
                         const BackendConfig& cfg,
                         AblationMode mode = AblationMode::kFull,
                         const QuestionGenerator& generator = QuestionGenerator(),
                         std::string utterance_id = {});

// Gold oracle answering the target screen's questions for each utterance
// with its gold spans.
GoldOracleBackend BuildScreenOracle(
    const Screen& screen, std::span<const AnnotatedUtterance> utterances,
    AblationMode mode, const QuestionGenerator& generator = QuestionGenerator());

}  // namespace slotqa

#endif  // SLOTQA_DISPATCH_H_
