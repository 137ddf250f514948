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

#include "slotqa/question_gen.h"

#include <set>

#include "slotqa/errors.h"
#include "slotqa/text.h"

namespace slotqa {
namespace {

// Collapses internal whitespace runs to one space.
std::string Squeeze(std::string_view s) {
  std::vector<std::string> words;
  for (auto& t : WhitespaceTokenize(s)) words.push_back(std::move(t.text));
  return Join(words, " ");
}

void ReplaceAll(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

enum class Template { kTextField, kRadio, kTextButton };

Template TemplateFor(const GuiCategory& category) {
  switch (category.kind()) {
    case GuiCategory::Kind::kRadioButton:
      return Template::kRadio;
    case GuiCategory::Kind::kTextButton:
    case GuiCategory::Kind::kCheckbox:
    case GuiCategory::Kind::kOnOffSwitch:
      return Template::kTextButton;
    default:
      return Template::kTextField;
  }
}

}  // namespace

std::string_view AblationModeName(AblationMode mode) {
  switch (mode) {
    case AblationMode::kFull:
      return "full";
    case AblationMode::kTextOnly:
      return "text";
    case AblationMode::kNoVisuals:
      return "novis";
  }
  return "full";
}

AblationMode ParseAblationMode(std::string_view name) {
  const std::string n = AsciiLower(Trim(name));
  if (n == "full") return AblationMode::kFull;
  if (n == "text" || n == "textonly") return AblationMode::kTextOnly;
  if (n == "novis" || n == "novisuals") return AblationMode::kNoVisuals;
  throw ParseError("mode", "unknown ablation mode '" + std::string(name) +
                               "' (expected full, text or novis)");
}

const std::vector<std::string>& DefaultCommandVerbs() {
  static const std::vector<std::string> verbs = {"select", "enter", "choose",
                                                 "pick",   "type",  "set"};
  return verbs;
}

std::string StripCommandPrefix(std::string_view label,
                               std::span<const std::string> verbs) {
  std::string_view s = Trim(label);
  std::size_t end = 0;
  while (end < s.size() && !IsSpace(s[end])) ++end;
  const std::string first = AsciiLower(s.substr(0, end));
  for (const auto& verb : verbs) {
    if (first == AsciiLower(verb)) return std::string(Trim(s.substr(end)));
  }
  return std::string(s);
}

std::string StripCommandPrefix(std::string_view label) {
  return StripCommandPrefix(label, DefaultCommandVerbs());
}

std::string JoinChoices(std::span<const std::string> choices) {
  std::string out;
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (i > 0) out += (i + 1 == choices.size()) ? " or " : ", ";
    out += choices[i];
  }
  return out;
}

void OverrideTable::Add(Entry entry) { entries_.push_back(std::move(entry)); }

const OverrideTable::Entry* OverrideTable::Find(
    const GuiElement& element) const {
  if (element.button_concept) {
    for (const auto& e : entries_) {
      if (e.category == element.category && e.key == *element.button_concept) {
        return &e;
      }
    }
  }
  for (const auto& e : entries_) {
    if (e.category == element.category && e.key == element.label) return &e;
  }
  return nullptr;
}

OverrideTable OverrideTable::Parse(std::string_view text,
                                   std::string_view source) {
  OverrideTable table;
  int line_no = 0;
  for (const auto& raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || Trim(line).front() == '#') continue;
    auto cols = Split(line, '\t');
    const std::string locus = std::string(source) + ":" + std::to_string(line_no);
    if (cols.size() != 3) {
      throw ParseError(locus, "expected category<TAB>key<TAB>template");
    }
    std::string templ(Trim(cols[2]));
    if (templ.empty() || templ.back() != '?') {
      throw ParseError(locus, "override template must end with '?'");
    }
    table.Add({GuiCategory::Parse(cols[0]), std::string(Trim(cols[1])),
               std::move(templ)});
  }
  return table;
}

OverrideTable OverrideTable::Load(const std::string& path) {
  return Parse(ReadFile(path), path);
}

std::string QuestionGenerator::CleanLabel(std::string_view label,
                                          std::string_view element_id) const {
  std::string cleaned =
      AsciiLower(Squeeze(StripCommandPrefix(label, options_.command_verbs)));
  if (cleaned.empty()) throw EmptyLabelError(std::string(element_id));
  return cleaned;
}

std::string QuestionGenerator::TextFieldQuestion(
    std::string_view label, std::string_view element_id) const {
  return "What is the " + CleanLabel(label, element_id) + "?";
}

std::string QuestionGenerator::TextButtonQuestion(
    std::string_view label, std::string_view element_id) const {
  return "What should I do to " + CleanLabel(label, element_id) + "?";
}

std::string QuestionGenerator::TagSymbol(int ordinal) {
  return "XYZ" + std::to_string(ordinal);
}

Question QuestionGenerator::Generate(const GuiElement& element,
                                     AblationMode mode, int ordinal) const {
  Question q;
  q.slot_id = element.slot_id;
  q.source_element = element.element_id;

  if (mode == AblationMode::kNoVisuals) {
    q.text = TagSymbol(ordinal);
    return q;
  }
  if (mode == AblationMode::kFull) {
    if (const auto* entry = options_.overrides.Find(element)) {
      std::string text = entry->question_template;
      ReplaceAll(text, "{label}",
                 Squeeze(StripCommandPrefix(element.label,
                                            options_.command_verbs)));
      ReplaceAll(text, "{choices}", JoinChoices(element.choices));
      q.text = std::move(text);
      return q;
    }
  }

  const Template t = mode == AblationMode::kTextOnly
                         ? Template::kTextField
                         : TemplateFor(element.category);
  switch (t) {
    case Template::kRadio:
      q.text = "Is this " + JoinChoices(element.choices) + "?";
      break;
    case Template::kTextButton:
      q.text = TextButtonQuestion(element.label, element.element_id);
      break;
    case Template::kTextField:
      q.text = TextFieldQuestion(element.label, element.element_id);
      break;
  }
  return q;
}

std::vector<Question> QuestionGenerator::GenerateAll(const Screen& screen,
                                                     AblationMode mode,
                                                     int ordinal_offset) const {
  std::set<std::string_view> visible(screen.visible.begin(),
                                     screen.visible.end());
  std::vector<Question> out;
  for (std::size_t i = 0; i < screen.elements.size(); ++i) {
    const GuiElement& e = screen.elements[i];
    if (!visible.contains(e.element_id)) continue;
    out.push_back(Generate(e, mode, ordinal_offset + static_cast<int>(i) + 1));
  }
  return out;
}

Question GenerateQuestion(const GuiElement& element, AblationMode mode,
                          int ordinal) {
  return QuestionGenerator().Generate(element, mode, ordinal);
}

std::vector<Question> GenerateQuestions(const Screen& screen,
                                        AblationMode mode) {
  return QuestionGenerator().GenerateAll(screen, mode);
}

}  // namespace slotqa
