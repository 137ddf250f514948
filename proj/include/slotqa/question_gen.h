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

// Rule-based translation of GUI elements into natural-language questions.
//
// Templates by category (Full mode):
//   TextField and anything unlisted   What is the <label>?
//   RadioButton                       Is this <c1>, <c2>, ... or <cn>?
//   TextButton, Checkbox, OnOffSwitch What should I do to <label>?
// Labels pass through StripCommandPrefix and are lowercased; radio choices
// are inserted verbatim. TextOnly mode applies the TextField template to
// every category. NoVisuals mode replaces the question with an opaque tag
// symbol "XYZ<k>".

#ifndef SLOTQA_QUESTION_GEN_H_
#define SLOTQA_QUESTION_GEN_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slotqa/screen.h"

namespace slotqa {

enum class AblationMode { kFull, kTextOnly, kNoVisuals };

// "full", "text", "novis".
std::string_view AblationModeName(AblationMode mode);
// Throws ParseError on unknown names.
AblationMode ParseAblationMode(std::string_view name);

struct Question {
  std::string text;
  std::string slot_id;
  std::optional<std::string> source_element;
  bool expected_answerable = false;  // fixture metadata only

  bool operator==(const Question&) const = default;
};

// select, enter, choose, pick, type, set
const std::vector<std::string>& DefaultCommandVerbs();

// Drops a leading command verb (case-insensitive) and trims the result.
std::string StripCommandPrefix(std::string_view label,
                               std::span<const std::string> verbs);
std::string StripCommandPrefix(std::string_view label);

// "A or B", "A, B or C".
std::string JoinChoices(std::span<const std::string> choices);

// Per-concept question overrides, keyed by category plus either the
// element's button_concept or its exact label (concept checked first).
// Templates may use {label} (command-stripped label, case kept) and
// {choices} (as JoinChoices).
class OverrideTable {
 public:
  struct Entry {
    GuiCategory category;
    std::string key;
    std::string question_template;
  };

  void Add(Entry entry);
  const Entry* Find(const GuiElement& element) const;
  bool empty() const { return entries_.empty(); }

  // Tab-separated "category<TAB>key<TAB>template" lines, '#' comments.
  static OverrideTable Load(const std::string& path);
  static OverrideTable Parse(std::string_view text,
                             std::string_view source = "<overrides>");

 private:
  std::vector<Entry> entries_;
};

class QuestionGenerator {
 public:
  struct Options {
    std::vector<std::string> command_verbs = DefaultCommandVerbs();
    OverrideTable overrides;
  };

  QuestionGenerator() = default;
  explicit QuestionGenerator(Options options) : options_(std::move(options)) {}

  // `ordinal` is the element's stable slot ordinal; only NoVisuals uses it.
  // Throws EmptyLabelError when the template needs a label and none is left.
  Question Generate(const GuiElement& element, AblationMode mode,
                    int ordinal) const;

  // One question per visible element, in element order. Ordinals are the
  // 1-based declaration index plus `ordinal_offset`.
  std::vector<Question> GenerateAll(const Screen& screen, AblationMode mode,
                                    int ordinal_offset = 0) const;

  // "What is the <label>?" with stripping and lowercasing applied.
  std::string TextFieldQuestion(std::string_view label,
                                std::string_view element_id = {}) const;
  std::string TextButtonQuestion(std::string_view label,
                                 std::string_view element_id = {}) const;

  static std::string TagSymbol(int ordinal);

  const Options& options() const { return options_; }

 private:
  std::string CleanLabel(std::string_view label,
                         std::string_view element_id) const;

  Options options_;
};

Question GenerateQuestion(const GuiElement& element,
                          AblationMode mode = AblationMode::kFull,
                          int ordinal = 1);
std::vector<Question> GenerateQuestions(const Screen& screen,
                                        AblationMode mode = AblationMode::kFull);

}  // namespace slotqa

#endif  // SLOTQA_QUESTION_GEN_H_
