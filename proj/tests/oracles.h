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


// Independent reference implementations used by the unit and acceptance
// tests. These deliberately avoid the library's own counting code.

#ifndef SLOTQA_TESTS_ORACLES_H_
#define SLOTQA_TESTS_ORACLES_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "slotqa/corpus.h"
#include "slotqa/dispatch.h"
#include "slotqa/random.h"

namespace slotqa::testing {

inline std::vector<std::string> SpaceSplit(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct BruteSlot {
  std::size_t support = 0, predicted = 0, overlap = 0;
  double precision = 0, recall = 0, f1 = 0;
};

struct BruteReport {
  std::map<std::string, BruteSlot> per_slot;
  double weighted_f1 = 0;
};

// Token overlap by pairing each predicted token with an unused equal gold
// token. Tokens are plain lowercase words, so no normalization is needed.
inline BruteReport BruteForceTokenF1(const std::vector<AnnotatedUtterance>& gold,
                                     const std::vector<SlotFillResult>& pred) {
  BruteReport r;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    std::map<std::string, std::vector<std::string>> g, p;
    for (const auto& f : gold[i].slots) {
      for (auto& t : SpaceSplit(f.surface)) g[f.slot_id].push_back(t);
    }
    for (const auto& [slot, fill] : pred[i].fills) {
      for (auto& t : SpaceSplit(fill.text)) p[slot].push_back(t);
    }
    std::set<std::string> slots;
    for (auto& [s, _] : g) slots.insert(s);
    for (auto& [s, _] : p) slots.insert(s);
    for (const auto& s : slots) {
      auto& m = r.per_slot[s];
      std::vector<bool> used(g[s].size(), false);
      m.support += g[s].size();
      m.predicted += p[s].size();
      for (const auto& t : p[s]) {
        for (std::size_t j = 0; j < g[s].size(); ++j) {
          if (!used[j] && g[s][j] == t) {
            used[j] = true;
            ++m.overlap;
            break;
          }
        }
      }
    }
  }
  std::size_t support = 0, predicted = 0;
  double acc = 0;
  for (auto& [s, m] : r.per_slot) {
    m.precision = m.predicted ? static_cast<double>(m.overlap) / m.predicted : 0.0;
    m.recall = m.support ? static_cast<double>(m.overlap) / m.support : 0.0;
    m.f1 = m.precision + m.recall > 0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    support += m.support;
    predicted += m.predicted;
    acc += static_cast<double>(m.support) * m.f1;
  }
  r.weighted_f1 = support ? acc / static_cast<double>(support)
                          : (predicted == 0 ? 1.0 : 0.0);
  return r;
}

struct MetricInstance {
  std::vector<AnnotatedUtterance> gold;
  std::vector<SlotFillResult> pred;
  bool unique_gold_slots = true;  // at most one gold span per slot
};

// A small random corpus: up to 3 utterances of at most 10 tokens and 5 slot
// types, with predictions that are random spans (or rejections) per slot.
inline MetricInstance RandomMetricInstance(SeededRng& rng) {
  static const std::vector<std::string> kWords = {"a", "b", "c", "san", "jose", "to"};
  static const std::vector<std::string> kSlots = {"s1", "s2", "s3", "s4", "s5"};
  MetricInstance inst;
  const std::size_t n_utts = 1 + rng.Below(3);
  for (std::size_t u = 0; u < n_utts; ++u) {
    const std::size_t len = 1 + rng.Below(10);
    std::vector<std::string> toks, tags(len, "O");
    for (std::size_t i = 0; i < len; ++i) toks.push_back(kWords[rng.Below(kWords.size())]);
    std::set<std::string> used;
    for (std::size_t i = 0; i < len;) {
      if (rng.Below(3) == 0) {
        const std::string& slot = kSlots[rng.Below(kSlots.size())];
        if (!used.insert(slot).second) inst.unique_gold_slots = false;
        const std::size_t span = 1 + rng.Below(std::min<std::size_t>(3, len - i));
        tags[i] = "B-" + slot;
        for (std::size_t j = 1; j < span; ++j) tags[i + j] = "I-" + slot;
        i += span;
      } else {
        ++i;
      }
    }
    const std::string id = "m" + std::to_string(u);
    auto gold = MakeUtterance(id, toks, tags, true);
    SlotFillResult pred;
    pred.utterance_id = id;
    const auto tokens = gold.tokens;
    for (const auto& slot : kSlots) {
      if (rng.Below(2) == 0) {
        pred.rejections[slot] = 0.9;
        continue;
      }
      const std::size_t a = rng.Below(tokens.size());
      const std::size_t b = a + 1 + rng.Below(std::min<std::size_t>(3, tokens.size() - a));
      FilledSlot f;
      f.start_char = tokens[a].start;
      f.end_char = tokens[b - 1].end();
      f.text = gold.text.substr(f.start_char, f.end_char - f.start_char);
      f.tokens = {a, b};
      f.span_score = 0.9;
      pred.fills[slot] = f;
    }
    inst.gold.push_back(std::move(gold));
    inst.pred.push_back(std::move(pred));
  }
  return inst;
}

// Swaps the roles of gold and predicted; requires unique gold slots.
inline MetricInstance SwapRoles(const MetricInstance& in) {
  MetricInstance out;
  for (std::size_t i = 0; i < in.gold.size(); ++i) {
    AnnotatedUtterance g = in.gold[i];
    g.slots.clear();
    for (const auto& [slot, fill] : in.pred[i].fills) {
      g.slots.push_back({slot, fill.start_char, fill.end_char, fill.text});
    }
    SlotFillResult p;
    p.utterance_id = g.utterance_id;
    for (const auto& f : in.gold[i].slots) {
      FilledSlot fs;
      fs.text = f.surface;
      fs.start_char = f.start_char;
      fs.end_char = f.end_char;
      p.fills[f.slot_id] = fs;
    }
    out.gold.push_back(std::move(g));
    out.pred.push_back(std::move(p));
  }
  return out;
}

}  // namespace slotqa::testing

#endif  // SLOTQA_TESTS_ORACLES_H_
