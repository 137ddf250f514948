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

#include "slotqa/screen.h"

#include <algorithm>
#include <array>
#include <map>
#include <utility>

#include "json.hpp"
#include "slotqa/errors.h"
#include "slotqa/text.h"

namespace slotqa {
namespace {

using Kind = GuiCategory::Kind;
using Json = nlohmann::json;

struct KindName {
  Kind kind;
  std::string_view name;
};

constexpr std::array<KindName, 26> kKindNames = {{
    {Kind::kAdvertisement, "Advertisement"},
    {Kind::kBackgroundImage, "BackgroundImage"},
    {Kind::kBottomNavigation, "BottomNavigation"},
    {Kind::kButtonBar, "ButtonBar"},
    {Kind::kCard, "Card"},
    {Kind::kCheckbox, "Checkbox"},
    {Kind::kDatePicker, "DatePicker"},
    {Kind::kDrawer, "Drawer"},
    {Kind::kIcon, "Icon"},
    {Kind::kImage, "Image"},
    {Kind::kTextField, "TextField"},
    {Kind::kListItem, "ListItem"},
    {Kind::kMapView, "MapView"},
    {Kind::kModal, "Modal"},
    {Kind::kTabButton, "TabButton"},
    {Kind::kNumberStepper, "NumberStepper"},
    {Kind::kOnOffSwitch, "OnOffSwitch"},
    {Kind::kPagerIndicator, "PagerIndicator"},
    {Kind::kRadioButton, "RadioButton"},
    {Kind::kSlider, "Slider"},
    {Kind::kText, "Text"},
    {Kind::kTextButton, "TextButton"},
    {Kind::kToolbar, "Toolbar"},
    {Kind::kVideo, "Video"},
    {Kind::kWebView, "WebView"},
    {Kind::kSearchButton, "SearchButton"},
}};

// RICO spellings of the categories renamed above.
constexpr std::array<KindName, 2> kAliases = {{
    {Kind::kTextField, "Input"},
    {Kind::kTabButton, "Multi-Tab"},
}};

std::optional<Kind> LookupKind(std::string_view name) {
  for (const auto& kn : kKindNames) {
    if (kn.name == name) return kn.kind;
  }
  for (const auto& kn : kAliases) {
    if (kn.name == name) return kn.kind;
  }
  return std::nullopt;
}

std::string LineLocus(std::string_view source, std::string_view text,
                      std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return std::string(source) + ":" + std::to_string(line);
}

std::string RequireString(const Json& obj, const std::string& key,
                          const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path, "missing required key '" + key + "'");
  if (!it->is_string()) throw ParseError(path + "." + key, "expected a string");
  return it->get<std::string>();
}

std::string OptionalString(const Json& obj, const std::string& key,
                           const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) throw ParseError(path + "." + key, "expected a string");
  return it->get<std::string>();
}

std::vector<std::string> StringList(const Json& obj, const std::string& key,
                                    const std::string& path) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return out;
  if (!it->is_array()) throw ParseError(path + "." + key, "expected an array");
  for (std::size_t i = 0; i < it->size(); ++i) {
    const Json& v = (*it)[i];
    if (!v.is_string()) {
      throw ParseError(path + "." + key + "[" + std::to_string(i) + "]",
                       "expected a string");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

void WarnUnknownKeys(const Json& obj, std::span<const std::string_view> known,
                     const std::string& path,
                     std::vector<std::string>* warnings) {
  if (warnings == nullptr) return;
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      warnings->push_back(path + ": unknown key '" + key + "' ignored");
    }
  }
}

constexpr std::array<std::string_view, 4> kScreenKeys = {
    "screen_id", "app_name", "elements", "visible"};
constexpr std::array<std::string_view, 7> kElementKeys = {
    "id", "category", "label", "choices", "button_concept", "icon_class",
    "slot_id"};

}  // namespace

GuiCategory::GuiCategory(Kind kind) : kind_(kind) {
  if (kind == Kind::kOther) other_name_ = "Other";
}

GuiCategory GuiCategory::Other(std::string name) {
  if (auto kind = LookupKind(name)) return GuiCategory(*kind);
  GuiCategory c;
  c.kind_ = Kind::kOther;
  c.other_name_ = std::move(name);
  return c;
}

GuiCategory GuiCategory::Parse(std::string_view name) {
  return Other(std::string(Trim(name)));
}

std::string GuiCategory::Name() const {
  if (kind_ == Kind::kOther) return other_name_;
  for (const auto& kn : kKindNames) {
    if (kn.kind == kind_) return std::string(kn.name);
  }
  return other_name_;
}

std::span<const GuiCategory::Kind> KnownCategoryKinds() {
  static const auto kinds = [] {
    std::array<Kind, kKindNames.size()> out{};
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
      out[i] = kKindNames[i].kind;
    }
    return out;
  }();
  return kinds;
}

const GuiElement* Screen::Find(std::string_view element_id) const {
  for (const auto& e : elements) {
    if (e.element_id == element_id) return &e;
  }
  return nullptr;
}

Vocabulary LoadVocabulary(const std::string& path) {
  Vocabulary vocab;
  for (const auto& raw : Split(ReadFile(path), '\n')) {
    std::string_view line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    vocab.emplace(line);
  }
  return vocab;
}

void ValidateScreen(const Screen& screen) {
  std::vector<std::string> violations;
  if (screen.elements.empty()) {
    violations.push_back("screen has no elements");
  }
  std::map<std::string, int> ids;
  std::map<std::string, int> slots;
  for (std::size_t i = 0; i < screen.elements.size(); ++i) {
    const GuiElement& e = screen.elements[i];
    const std::string where =
        "elements[" + std::to_string(i) + "] ('" + e.element_id + "')";
    if (e.element_id.empty()) violations.push_back(where + ": empty id");
    if (++ids[e.element_id] == 2) {
      violations.push_back(where + ": duplicate element id");
    }
    if (e.slot_id.empty()) {
      violations.push_back(where + ": empty slot_id");
    } else if (++slots[e.slot_id] == 2) {
      violations.push_back(where + ": duplicate slot_id '" + e.slot_id + "'");
    }
    const bool radio = e.category.kind() == GuiCategory::Kind::kRadioButton;
    if (radio && e.choices.size() < 2) {
      violations.push_back(where + ": RadioButton needs at least 2 choices, has " +
                           std::to_string(e.choices.size()));
    }
    if (!radio && !e.choices.empty()) {
      violations.push_back(where + ": choices are only allowed on RadioButton");
    }
    if (e.button_concept && e.button_concept->empty()) {
      violations.push_back(where + ": empty button_concept");
    }
    if (e.icon_class && e.icon_class->empty()) {
      violations.push_back(where + ": empty icon_class");
    }
    for (const auto& choice : e.choices) {
      if (Trim(choice).empty()) {
        violations.push_back(where + ": empty choice");
        break;
      }
    }
  }
  std::set<std::string> seen_visible;
  for (const auto& id : screen.visible) {
    if (!ids.contains(id)) {
      violations.push_back("visible id '" + id + "' is not an element");
    }
    if (!seen_visible.insert(id).second) {
      violations.push_back("visible id '" + id + "' listed twice");
    }
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

Screen ParseScreen(std::string_view json_text, const ScreenOptions& options,
                   std::vector<std::string>* warnings,
                   std::string_view source) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ParseError(LineLocus(source, json_text, e.byte), e.what());
  }
  const std::string root(source);
  if (!doc.is_object()) throw ParseError(root, "top level must be an object");
  WarnUnknownKeys(doc, kScreenKeys, root, warnings);

  Screen screen;
  screen.screen_id = RequireString(doc, "screen_id", root);
  screen.app_name = OptionalString(doc, "app_name", root);

  auto elements = doc.find("elements");
  if (elements == doc.end() || !elements->is_array()) {
    throw ParseError(root + ".elements", "expected an array of elements");
  }
  for (std::size_t i = 0; i < elements->size(); ++i) {
    const Json& item = (*elements)[i];
    const std::string path = "elements[" + std::to_string(i) + "]";
    if (!item.is_object()) throw ParseError(path, "expected an object");
    WarnUnknownKeys(item, kElementKeys, root + ":" + path, warnings);

    GuiElement e;
    e.element_id = RequireString(item, "id", path);
    e.category = GuiCategory::Parse(RequireString(item, "category", path));
    e.label = OptionalString(item, "label", path);
    e.choices = StringList(item, "choices", path);
    if (auto c = OptionalString(item, "button_concept", path); !c.empty()) {
      e.button_concept = c;
    }
    if (auto c = OptionalString(item, "icon_class", path); !c.empty()) {
      e.icon_class = c;
    }
    e.slot_id = OptionalString(item, "slot_id", path);

    if (warnings != nullptr) {
      if (e.button_concept && options.button_concepts != nullptr &&
          !options.button_concepts->contains(*e.button_concept)) {
        warnings->push_back(root + ":" + path + ": button_concept '" +
                            *e.button_concept + "' not in vocabulary");
      }
      if (e.icon_class && options.icon_classes != nullptr &&
          !options.icon_classes->contains(*e.icon_class)) {
        warnings->push_back(root + ":" + path + ": icon_class '" +
                            *e.icon_class + "' not in vocabulary");
      }
    }
    screen.elements.push_back(std::move(e));
  }

  if (doc.contains("visible")) {
    screen.visible = StringList(doc, "visible", root);
  } else {
    for (const auto& e : screen.elements) screen.visible.push_back(e.element_id);
  }

  ValidateScreen(screen);
  return screen;
}

Screen LoadScreen(const std::string& path, const ScreenOptions& options,
                  std::vector<std::string>* warnings) {
  return ParseScreen(ReadFile(path), options, warnings, path);
}

std::string SerializeScreen(const Screen& screen) {
  nlohmann::ordered_json doc;
  doc["screen_id"] = screen.screen_id;
  doc["app_name"] = screen.app_name;
  doc["elements"] = nlohmann::ordered_json::array();
  for (const auto& e : screen.elements) {
    nlohmann::ordered_json item;
    item["id"] = e.element_id;
    item["category"] = e.category.Name();
    item["label"] = e.label;
    if (!e.choices.empty()) item["choices"] = e.choices;
    if (e.button_concept) item["button_concept"] = *e.button_concept;
    if (e.icon_class) item["icon_class"] = *e.icon_class;
    item["slot_id"] = e.slot_id;
    doc["elements"].push_back(std::move(item));
  }
  doc["visible"] = screen.visible;
  return doc.dump(2) + "\n";
}

std::vector<GuiElement> VisibleElements(const Screen& screen) {
  std::set<std::string_view> visible(screen.visible.begin(),
                                     screen.visible.end());
  std::vector<GuiElement> out;
  for (const auto& e : screen.elements) {
    if (visible.contains(e.element_id)) out.push_back(e);
  }
  return out;
}

}  // namespace slotqa
