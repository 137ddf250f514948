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

// Semantically annotated GUI screens: the typed form of what a GUI
// classifier reports for one App screen, plus the JSON file format.

#ifndef SLOTQA_SCREEN_H_
#define SLOTQA_SCREEN_H_

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slotqa {

// One of the RICO UI component categories. Names that are not recognized
// are kept verbatim as an "other" category rather than rejected.
class GuiCategory {
 public:
  enum class Kind {
    kAdvertisement,
    kBackgroundImage,
    kBottomNavigation,
    kButtonBar,
    kCard,
    kCheckbox,
    kDatePicker,
    kDrawer,
    kIcon,
    kImage,
    kTextField,  // RICO "Input"
    kListItem,
    kMapView,
    kModal,
    kTabButton,  // RICO "Multi-Tab"
    kNumberStepper,
    kOnOffSwitch,
    kPagerIndicator,
    kRadioButton,
    kSlider,
    kText,
    kTextButton,
    kToolbar,
    kVideo,
    kWebView,
    kSearchButton,
    kOther,
  };

  GuiCategory() = default;
  GuiCategory(Kind kind);  // NOLINT: implicit on purpose

  // Returns the known category when `name` is a known name.
  static GuiCategory Other(std::string name);
  static GuiCategory Parse(std::string_view name);

  Kind kind() const { return kind_; }
  bool is_other() const { return kind_ == Kind::kOther; }
  std::string Name() const;

  bool operator==(const GuiCategory&) const = default;

 private:
  Kind kind_ = Kind::kTextField;
  std::string other_name_;
};

// Every kind except kOther.
std::span<const GuiCategory::Kind> KnownCategoryKinds();

struct GuiElement {
  std::string element_id;
  GuiCategory category;
  std::string label;
  std::vector<std::string> choices;  // RadioButton only
  std::optional<std::string> button_concept;
  std::optional<std::string> icon_class;
  std::string slot_id;

  bool operator==(const GuiElement&) const = default;
};

struct Screen {
  std::string screen_id;
  std::string app_name;
  std::vector<GuiElement> elements;
  std::vector<std::string> visible;

  const GuiElement* Find(std::string_view element_id) const;
  bool operator==(const Screen&) const = default;
};

// Name list loaded from a data file: one entry per line, '#' comments.
using Vocabulary = std::set<std::string>;
Vocabulary LoadVocabulary(const std::string& path);

struct ScreenOptions {
  // When set, concepts/classes outside the list produce warnings.
  const Vocabulary* button_concepts = nullptr;
  const Vocabulary* icon_classes = nullptr;
};

// Throws ValidationError listing every violated invariant.
void ValidateScreen(const Screen& screen);

// Parses and validates a screen file. Throws ParseError (with a
// "source:line" or field-path locus) or ValidationError. Warnings for unknown
// keys and out-of-vocabulary names are appended to `warnings` when given.
Screen ParseScreen(std::string_view json_text, const ScreenOptions& options = {},
                   std::vector<std::string>* warnings = nullptr,
                   std::string_view source = "<screen>");
Screen LoadScreen(const std::string& path, const ScreenOptions& options = {},
                  std::vector<std::string>* warnings = nullptr);

std::string SerializeScreen(const Screen& screen);

// Elements whose ids are visible, in declaration order.
std::vector<GuiElement> VisibleElements(const Screen& screen);

}  // namespace slotqa

#endif  // SLOTQA_SCREEN_H_
