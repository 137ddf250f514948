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

#include <algorithm>
#include <cctype>
#include <set>

#include "slotqa/errors.h"
#include "slotqa/qa_backend.h"
#include "slotqa/text.h"

namespace slotqa {
namespace {

// Lowercased alphanumeric runs.
std::vector<std::string> Words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80) {
      cur += static_cast<char>(std::tolower(u));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

struct CoreToken {
  std::string_view core;  // punctuation stripped
  std::size_t start;
  std::size_t end;
};

std::vector<CoreToken> CoreTokens(std::string_view context) {
  std::vector<CoreToken> out;
  for (const auto& t : WhitespaceTokenize(context)) {
    std::string_view raw = context.substr(t.start, t.text.size());
    std::string_view core = StripPunct(raw);
    const std::size_t offset = core.empty() ? 0 : core.data() - raw.data();
    out.push_back({core, t.start + offset, t.start + offset + core.size()});
  }
  return out;
}

}  // namespace

TokenPattern TokenPattern::Parse(std::string_view text) {
  TokenPattern p;
  p.source_ = std::string(Trim(text));
  for (const auto& tok : WhitespaceTokenize(text)) {
    std::string_view s = tok.text;
    Element e{};
    if (s.front() == '<') {
      bool repeat = s.back() == '+';
      if (repeat) s.remove_suffix(1);
      if (s.size() < 3 || s.back() != '>') {
        throw ParseError(p.source_, "bad class element '" + tok.text + "'");
      }
      std::string_view name = s.substr(1, s.size() - 2);
      if (name == "Proper") {
        e.kind = Kind::kProper;
      } else if (name == "Lower") {
        e.kind = Kind::kLower;
      } else if (name == "Num") {
        e.kind = Kind::kNum;
      } else if (name == "Word") {
        e.kind = Kind::kWord;
      } else {
        throw ParseError(p.source_, "unknown class <" + std::string(name) + ">");
      }
      e.capture = true;
      e.repeat = repeat;
    } else if (s.front() == '[') {
      if (s.size() < 3 || s.back() != ']') {
        throw ParseError(p.source_, "bad captured literal '" + tok.text + "'");
      }
      e.kind = Kind::kLiteral;
      e.literal = AsciiLower(s.substr(1, s.size() - 2));
      e.capture = true;
    } else {
      e.kind = Kind::kLiteral;
      e.literal = AsciiLower(s);
    }
    p.elements_.push_back(std::move(e));
  }
  // Captured elements must form one contiguous block.
  int first = -1, last = -1;
  for (int i = 0; i < static_cast<int>(p.elements_.size()); ++i) {
    if (!p.elements_[i].capture) continue;
    if (first < 0) first = i;
    last = i;
  }
  if (first < 0) throw ParseError(p.source_, "pattern captures nothing");
  for (int i = first; i <= last; ++i) {
    if (!p.elements_[i].capture) {
      throw ParseError(p.source_, "captured elements must be contiguous");
    }
  }
  return p;
}

std::vector<TokenPattern::Match> TokenPattern::FindAll(
    std::string_view context) const {
  const std::vector<CoreToken> toks = CoreTokens(context);
  auto accepts = [&](const Element& e, const CoreToken& t) {
    if (t.core.empty()) return false;
    const unsigned char first = static_cast<unsigned char>(t.core.front());
    switch (e.kind) {
      case Kind::kLiteral:
        return AsciiLower(t.core) == e.literal;
      case Kind::kProper:
        return std::isupper(first) != 0;
      case Kind::kLower:
        return std::islower(first) != 0;
      case Kind::kNum:
        return std::any_of(t.core.begin(), t.core.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c)) != 0;
        });
      case Kind::kWord:
        return true;
    }
    return false;
  };

  std::set<std::pair<std::size_t, std::size_t>> found;
  // Depth-first over (element, token) with the capture token range so far.
  auto step = [&](auto&& self, std::size_t ei, std::size_t ti,
                  std::optional<std::size_t> cap_first,
                  std::size_t cap_last) -> void {
    if (ei == elements_.size()) {
      if (cap_first) found.emplace(toks[*cap_first].start, toks[cap_last].end);
      return;
    }
    const Element& e = elements_[ei];
    for (std::size_t n = 1; ti + n <= toks.size(); ++n) {
      if (!accepts(e, toks[ti + n - 1])) break;
      auto first = cap_first;
      std::size_t last = cap_last;
      if (e.capture) {
        if (!first) first = ti;
        last = ti + n - 1;
      }
      self(self, ei + 1, ti + n, first, last);
      if (!e.repeat) break;
    }
  };
  for (std::size_t start = 0; start < toks.size(); ++start) {
    step(step, 0, start, std::nullopt, 0);
  }
  std::vector<Match> out;
  for (const auto& [s, e] : found) out.push_back({s, e});
  return out;
}

void Gazetteer::Add(std::string keyword, std::string_view pattern) {
  auto words = Words(keyword);
  if (words.empty()) throw ParseError(std::string(pattern), "empty gazetteer keyword");
  entries_.push_back({std::move(words), TokenPattern::Parse(pattern)});
}

Gazetteer Gazetteer::Parse(std::string_view text, std::string_view source) {
  Gazetteer g;
  int line_no = 0;
  for (const auto& raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || Trim(line).front() == '#') continue;
    auto cols = Split(line, '\t');
    const std::string locus = std::string(source) + ":" + std::to_string(line_no);
    if (cols.size() != 2) throw ParseError(locus, "expected keyword<TAB>pattern");
    try {
      g.Add(cols[0], cols[1]);
    } catch (const ParseError& e) {
      throw ParseError(locus, e.what());
    }
  }
  return g;
}

Gazetteer Gazetteer::Load(const std::string& path) {
  return Parse(ReadFile(path), path);
}

ExtractionResult LexicalExtract(std::string_view question,
                                std::string_view context,
                                const Gazetteer& gazetteer) {
  const auto qwords = Words(question);
  const std::set<std::string> qset(qwords.begin(), qwords.end());
  std::optional<TokenPattern::Match> best;
  for (const auto& entry : gazetteer.entries()) {
    const bool fires = std::all_of(
        entry.keywords.begin(), entry.keywords.end(),
        [&](const std::string& w) { return qset.contains(w); });
    if (!fires) continue;
    for (const auto& m : entry.pattern.FindAll(context)) {
      const std::size_t len = m.end_char - m.start_char;
      if (!best) {
        best = m;
        continue;
      }
      const std::size_t best_len = best->end_char - best->start_char;
      if (len > best_len || (len == best_len && m.start_char < best->start_char)) {
        best = m;
      }
    }
  }
  if (!best) return ExtractionResult::NoAnswer(1.0);
  Answer a{std::string(context.substr(best->start_char,
                                      best->end_char - best->start_char)),
           best->start_char, best->end_char};
  return {std::move(a), 1.0, 0.0};
}

ExtractionResult LexicalBackend::Extract(const QaQuery& query,
                                         const BackendConfig&) const {
  return LexicalExtract(query.question, query.context, gazetteer_);
}

}  // namespace slotqa
