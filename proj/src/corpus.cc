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

#include "slotqa/corpus.h"

#include <algorithm>
#include <set>

#include "fmt/format.h"
#include "slotqa/errors.h"
#include "slotqa/random.h"

namespace slotqa {
namespace {

struct ParsedTag {
  char prefix = 'O';  // 'O', 'B' or 'I'
  std::string type;
};

std::optional<ParsedTag> ParseTag(std::string_view tag) {
  if (tag == "O") return ParsedTag{};
  if (tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') {
    return ParsedTag{tag[0], std::string(tag.substr(2))};
  }
  return std::nullopt;
}

// `lines` (optional) gives the source line of each token for error loci.
AnnotatedUtterance Build(std::string utterance_id,
                         const std::vector<std::string>& tokens,
                         const std::vector<std::string>& tags, bool strict,
                         const std::vector<int>* lines,
                         std::string_view source) {
  auto locus = [&](std::size_t i) {
    return lines ? std::string(source) + ":" + std::to_string((*lines)[i])
                 : "token " + std::to_string(i);
  };
  if (tokens.size() != tags.size()) {
    throw ParseError(utterance_id, "token and tag counts differ");
  }
  AnnotatedUtterance utt;
  utt.utterance_id = std::move(utterance_id);
  std::optional<SlotFill> open;
  auto close = [&] {
    if (!open) return;
    open->surface = utt.text.substr(open->start_char,
                                    open->end_char - open->start_char);
    utt.slots.push_back(std::move(*open));
    open.reset();
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (tok.empty() || std::any_of(tok.begin(), tok.end(), IsSpace)) {
      throw ParseError(locus(i), "token must be non-empty without whitespace");
    }
    auto tag = ParseTag(tags[i]);
    if (!tag) throw ParseError(locus(i), "bad BIO tag '" + tags[i] + "'");

    if (!utt.text.empty()) utt.text += ' ';
    const std::size_t start = utt.text.size();
    utt.text += tok;
    utt.tokens.push_back({tok, start});

    bool continues = tag->prefix == 'I' && open && open->slot_id == tag->type;
    if (tag->prefix == 'I' && !continues && strict) {
      throw TagSequenceError(lines ? (*lines)[i] : static_cast<int>(i),
                             "I-" + tag->type + " without a preceding B-" +
                                 tag->type + " or I-" + tag->type);
    }
    if (continues) {
      open->end_char = utt.text.size();
      continue;
    }
    close();
    if (tag->prefix != 'O') {
      open = SlotFill{tag->type, start, utt.text.size(), {}};
    }
  }
  close();
  return utt;
}

}  // namespace

AnnotatedUtterance MakeUtterance(std::string utterance_id,
                                 const std::vector<std::string>& tokens,
                                 const std::vector<std::string>& tags,
                                 bool strict) {
  return Build(std::move(utterance_id), tokens, tags, strict, nullptr, {});
}

std::vector<std::string> BioTags(const AnnotatedUtterance& utt) {
  std::vector<std::string> tags(utt.tokens.size(), "O");
  for (const auto& fill : utt.slots) {
    for (std::size_t i = 0; i < utt.tokens.size(); ++i) {
      const Token& t = utt.tokens[i];
      if (t.start >= fill.start_char && t.end() <= fill.end_char) {
        tags[i] = (t.start == fill.start_char ? "B-" : "I-") + fill.slot_id;
      }
    }
  }
  return tags;
}

void ValidateUtterance(const AnnotatedUtterance& utt) {
  std::vector<std::string> v;
  std::set<std::size_t> starts, ends;
  std::size_t prev_end = 0;
  for (std::size_t i = 0; i < utt.tokens.size(); ++i) {
    const Token& t = utt.tokens[i];
    if (t.text.empty()) v.push_back(fmt::format("token {} is empty", i));
    if (i > 0 && t.start < prev_end) {
      v.push_back(fmt::format("token {} offset {} not increasing", i, t.start));
    }
    if (t.end() > utt.text.size() ||
        utt.text.compare(t.start, t.text.size(), t.text) != 0) {
      v.push_back(fmt::format("token {} '{}' is not the text at offset {}", i,
                              t.text, t.start));
    }
    prev_end = t.end();
    starts.insert(t.start);
    ends.insert(t.end());
  }
  std::vector<const SlotFill*> sorted;
  for (const auto& f : utt.slots) {
    sorted.push_back(&f);
    if (f.end_char <= f.start_char || f.end_char > utt.text.size()) {
      v.push_back(fmt::format("slot {} span [{}, {}) out of range", f.slot_id,
                              f.start_char, f.end_char));
      continue;
    }
    if (utt.text.compare(f.start_char, f.end_char - f.start_char, f.surface) !=
            0 ||
        f.surface.size() != f.end_char - f.start_char) {
      v.push_back(fmt::format("slot {} surface '{}' differs from text",
                              f.slot_id, f.surface));
    }
    if (!starts.contains(f.start_char) || !ends.contains(f.end_char)) {
      v.push_back(fmt::format("slot {} span [{}, {}) not token aligned",
                              f.slot_id, f.start_char, f.end_char));
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return a->start_char < b->start_char;
  });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->start_char < sorted[i - 1]->end_char) {
      v.push_back(fmt::format("slots {} and {} overlap", sorted[i - 1]->slot_id,
                              sorted[i]->slot_id));
    }
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

void SlotSchema::Add(std::string tag, std::string description) {
  std::vector<std::string> v;
  if (tag.empty()) v.push_back("empty slot tag");
  if (Trim(description).empty()) v.push_back("tag '" + tag + "' has empty description");
  if (index_.contains(tag)) v.push_back("duplicate tag '" + tag + "'");
  if (!v.empty()) throw ValidationError(std::move(v));
  index_.emplace(tag, entries_.size());
  entries_.emplace_back(std::move(tag), std::move(description));
}

const std::string* SlotSchema::Find(std::string_view tag) const {
  auto it = index_.find(tag);
  return it == index_.end() ? nullptr : &entries_[it->second].second;
}

std::optional<std::size_t> SlotSchema::IndexOf(std::string_view tag) const {
  auto it = index_.find(tag);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SlotSchema SlotSchema::Parse(std::string_view text, std::string_view source) {
  SlotSchema schema;
  int line_no = 0;
  for (const auto& raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || Trim(line).front() == '#') continue;
    auto cols = Split(line, '\t');
    const std::string locus = std::string(source) + ":" + std::to_string(line_no);
    if (cols.size() != 2) throw ParseError(locus, "expected tag<TAB>description");
    try {
      schema.Add(std::string(Trim(cols[0])), std::string(Trim(cols[1])));
    } catch (const ValidationError& e) {
      throw ParseError(locus, e.violations().front());
    }
  }
  return schema;
}

SlotSchema SlotSchema::Load(const std::string& path) {
  return Parse(ReadFile(path), path);
}

std::string HumanizeTag(std::string_view tag) {
  std::string spaced(tag);
  for (char& c : spaced) {
    if (c == '_' || c == '.') c = ' ';
  }
  std::vector<std::string> words;
  for (auto& t : WhitespaceTokenize(spaced)) words.push_back(std::move(t.text));
  return Join(words, " ");
}

std::string TagToDescription(std::string_view tag, const SlotSchema& schema) {
  if (const std::string* d = schema.Find(tag)) return *d;
  return HumanizeTag(tag);
}

Screen ScreenFromSchema(const SlotSchema& schema, std::string screen_id,
                        std::string app_name) {
  Screen screen;
  screen.screen_id = std::move(screen_id);
  screen.app_name = std::move(app_name);
  for (const auto& [tag, desc] : schema.entries()) {
    GuiElement e;
    e.element_id = tag;
    e.category = GuiCategory::Kind::kTextField;
    e.label = desc;
    e.slot_id = tag;
    screen.visible.push_back(tag);
    screen.elements.push_back(std::move(e));
  }
  ValidateScreen(screen);
  return screen;
}

std::vector<AnnotatedUtterance> ParseBioCorpus(std::string_view text,
                                               const BioOptions& options,
                                               std::string_view source) {
  std::vector<AnnotatedUtterance> out;
  std::vector<std::string> tokens, tags;
  std::vector<int> lines;
  std::optional<std::string> id;
  int id_line = 0;

  auto flush = [&] {
    if (tokens.empty()) {
      if (id) {
        throw ParseError(std::string(source) + ":" + std::to_string(id_line),
                         "utterance '" + *id + "' has no tokens");
      }
      return;
    }
    std::string uid = id ? *id : fmt::format("u{:04d}", out.size() + 1);
    out.push_back(Build(std::move(uid), tokens, tags, options.strict, &lines,
                        source));
    tokens.clear();
    tags.clear();
    lines.clear();
    id.reset();
  };

  int line_no = 0;
  for (const auto& raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') {
      std::string_view body = Trim(line.substr(1));
      if (body.starts_with("id:")) {
        if (!tokens.empty()) flush();
        id = std::string(Trim(body.substr(3)));
        id_line = line_no;
      }
      continue;
    }
    auto cols = Split(line, '\t');
    if (cols.size() != 2) {
      throw ParseError(std::string(source) + ":" + std::to_string(line_no),
                       "expected token<TAB>tag");
    }
    tokens.push_back(cols[0]);
    tags.push_back(std::string(Trim(cols[1])));
    lines.push_back(line_no);
  }
  flush();
  return out;
}

std::vector<AnnotatedUtterance> LoadBioCorpus(const std::string& path,
                                              const BioOptions& options) {
  return ParseBioCorpus(ReadFile(path), options, path);
}

std::string RenderBioCorpus(const std::vector<AnnotatedUtterance>& utts) {
  std::string out;
  for (std::size_t u = 0; u < utts.size(); ++u) {
    if (u > 0) out += '\n';
    out += "# id: " + utts[u].utterance_id + "\n";
    auto tags = BioTags(utts[u]);
    for (std::size_t i = 0; i < utts[u].tokens.size(); ++i) {
      out += utts[u].tokens[i].text + "\t" + tags[i] + "\n";
    }
  }
  return out;
}

NegativePolicy NegativePolicy::Parse(std::string_view spec,
                                     std::uint64_t seed) {
  const std::string s = AsciiLower(Trim(spec));
  if (s == "all") return All();
  if (s == "none") return None();
  if (s.starts_with("sample:")) {
    const std::string num = s.substr(7);
    if (!num.empty() &&
        std::all_of(num.begin(), num.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return SampleK(std::stoull(num), seed);
    }
  }
  throw ParseError("negatives", "expected all, none or sample:K, got '" +
                                    std::string(spec) + "'");
}

std::vector<QaExample> ToQaExamples(const std::vector<AnnotatedUtterance>& utts,
                                    const SlotSchema& schema, AblationMode mode,
                                    const NegativePolicy& negatives,
                                    const QuestionGenerator& generator) {
  // Stable ordinals: schema order first, then unknown tags sorted.
  std::map<std::string, int, std::less<>> ordinal;
  for (const auto& [tag, desc] : schema.entries()) {
    ordinal.emplace(tag, static_cast<int>(ordinal.size()) + 1);
  }
  std::set<std::string> unknown;
  for (const auto& u : utts) {
    for (const auto& f : u.slots) {
      if (!schema.Find(f.slot_id)) unknown.insert(f.slot_id);
    }
  }
  for (const auto& tag : unknown) {
    ordinal.emplace(tag, static_cast<int>(ordinal.size()) + 1);
  }

  auto question_for = [&](const std::string& tag) {
    GuiElement field;
    field.element_id = tag;
    field.category = GuiCategory::Kind::kTextField;
    field.label = TagToDescription(tag, schema);
    field.slot_id = tag;
    // Overrides are a GUI-screen feature; corpus slots use plain templates.
    if (mode == AblationMode::kNoVisuals) {
      return QuestionGenerator::TagSymbol(ordinal.at(tag));
    }
    return generator.TextFieldQuestion(field.label, field.element_id);
  };

  std::vector<QaExample> out;
  for (std::size_t ui = 0; ui < utts.size(); ++ui) {
    const AnnotatedUtterance& u = utts[ui];
    std::map<std::string, int> seen;
    for (const auto& f : u.slots) {
      const int n = ++seen[f.slot_id];
      QaExample ex;
      ex.qa_id = u.utterance_id + ":" + f.slot_id +
                 (n > 1 ? "#" + std::to_string(n) : "");
      ex.question = question_for(f.slot_id);
      ex.context = u.text;
      ex.answers.push_back({f.surface, f.start_char});
      out.push_back(std::move(ex));
    }
    if (negatives.kind == NegativePolicy::Kind::kNone) continue;

    std::vector<std::string> absent;
    for (const auto& [tag, desc] : schema.entries()) {
      if (!seen.contains(tag)) absent.push_back(tag);
    }
    if (negatives.kind == NegativePolicy::Kind::kSampleK) {
      SeededRng rng(negatives.seed, ui);
      std::vector<std::string> picked;
      for (std::size_t i : rng.SampleIndices(absent.size(), negatives.k)) {
        picked.push_back(absent[i]);
      }
      absent = std::move(picked);
    }
    for (const auto& tag : absent) {
      QaExample ex;
      ex.qa_id = u.utterance_id + ":" + tag;
      ex.question = question_for(tag);
      ex.context = u.text;
      ex.is_impossible = true;
      out.push_back(std::move(ex));
    }
  }
  return out;
}

std::vector<AnnotatedUtterance> SampleFewShot(
    const std::vector<AnnotatedUtterance>& utts, std::size_t k,
    std::uint64_t seed, bool stratified) {
  const std::size_t n = utts.size();
  if (k >= n) return utts;
  SeededRng rng(seed);
  std::vector<bool> chosen(n, false);
  std::size_t count = 0;

  if (stratified) {
    std::vector<std::string> slot_order;
    std::set<std::string> known;
    for (const auto& u : utts) {
      for (const auto& f : u.slots) {
        if (known.insert(f.slot_id).second) slot_order.push_back(f.slot_id);
      }
    }
    std::set<std::string> covered;
    for (const auto& slot : slot_order) {
      if (count == k) break;
      if (covered.contains(slot)) continue;
      std::vector<std::size_t> candidates;
      for (std::size_t i = 0; i < n; ++i) {
        if (chosen[i]) continue;
        for (const auto& f : utts[i].slots) {
          if (f.slot_id == slot) {
            candidates.push_back(i);
            break;
          }
        }
      }
      if (candidates.empty()) continue;
      const std::size_t pick = candidates[rng.Below(candidates.size())];
      chosen[pick] = true;
      ++count;
      for (const auto& f : utts[pick].slots) covered.insert(f.slot_id);
    }
  }

  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (!chosen[i]) rest.push_back(i);
  }
  for (std::size_t i : rng.SampleIndices(rest.size(), k - count)) {
    chosen[rest[i]] = true;
  }

  std::vector<AnnotatedUtterance> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (chosen[i]) out.push_back(utts[i]);
  }
  return out;
}

SlotCoverage ComputeSlotCoverage(
    const std::vector<AnnotatedUtterance>& sample,
    const std::vector<AnnotatedUtterance>& universe) {
  SlotCoverage cov;
  for (const auto& u : sample) {
    for (const auto& f : u.slots) ++cov.counts[f.slot_id];
  }
  std::set<std::string> all;
  for (const auto& u : universe) {
    for (const auto& f : u.slots) all.insert(f.slot_id);
  }
  for (const auto& slot : all) {
    if (!cov.counts.contains(slot)) cov.missing.push_back(slot);
  }
  return cov;
}

}  // namespace slotqa
