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

#include "slotqa/metrics.h"

#include <set>

#include "json.hpp"
#include "slotqa/errors.h"
#include "slotqa/text.h"

namespace slotqa {

std::vector<std::string> MetricTokens(std::string_view text,
                                      const MetricOptions& options) {
  std::vector<std::string> out;
  for (auto& t : WhitespaceTokenize(text)) {
    if (options.raw) {
      out.push_back(std::move(t.text));
      continue;
    }
    std::string norm = AsciiLower(StripPunct(t.text));
    if (!norm.empty()) out.push_back(std::move(norm));
  }
  return out;
}

double HarmonicF1(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

MetricsReport TokenF1(std::span<const AnnotatedUtterance> gold,
                      std::span<const SlotFillResult> predicted,
                      const MetricOptions& options) {
  if (gold.size() != predicted.size()) {
    throw AlignmentError("gold has " + std::to_string(gold.size()) +
                         " utterances, predictions " +
                         std::to_string(predicted.size()));
  }
  MetricsReport report;
  report.n_utterances = gold.size();
  std::size_t correct_decisions = 0;

  for (std::size_t i = 0; i < gold.size(); ++i) {
    const AnnotatedUtterance& g = gold[i];
    const SlotFillResult& p = predicted[i];
    if (g.utterance_id != p.utterance_id) {
      throw AlignmentError("index " + std::to_string(i) + ": gold '" +
                           g.utterance_id + "' vs predicted '" +
                           p.utterance_id + "'");
    }
    std::map<std::string, std::map<std::string, std::size_t>> gold_bag, pred_bag;
    for (const auto& f : g.slots) {
      auto& bag = gold_bag[f.slot_id];
      for (auto& t : MetricTokens(f.surface, options)) ++bag[t];
    }
    for (const auto& [slot, fill] : p.fills) {
      auto& bag = pred_bag[slot];
      for (auto& t : MetricTokens(fill.text, options)) ++bag[t];
    }
    std::set<std::string> slots;
    for (const auto& [s, _] : gold_bag) slots.insert(s);
    for (const auto& [s, _] : pred_bag) slots.insert(s);
    for (const auto& slot : slots) {
      SlotMetrics& m = report.per_slot[slot];
      const auto& gb = gold_bag[slot];
      const auto& pb = pred_bag[slot];
      for (const auto& [tok, n] : gb) m.support += n;
      for (const auto& [tok, n] : pb) {
        m.predicted += n;
        auto it = gb.find(tok);
        if (it != gb.end()) m.overlap += std::min(n, it->second);
      }
    }

    report.n_questions += p.fills.size() + p.rejections.size();
    report.n_rejections += p.rejections.size();
    std::set<std::string> gold_slots;
    for (const auto& f : g.slots) gold_slots.insert(f.slot_id);
    for (const auto& [slot, _] : p.fills) correct_decisions += gold_slots.contains(slot);
    for (const auto& [slot, _] : p.rejections) correct_decisions += !gold_slots.contains(slot);
  }

  std::size_t total_support = 0, total_pred = 0, total_overlap = 0;
  double weighted = 0.0;
  for (auto& [slot, m] : report.per_slot) {
    m.precision = m.predicted ? static_cast<double>(m.overlap) / m.predicted : 0.0;
    m.recall = m.support ? static_cast<double>(m.overlap) / m.support : 0.0;
    m.f1 = HarmonicF1(m.precision, m.recall);
    total_support += m.support;
    total_pred += m.predicted;
    total_overlap += m.overlap;
    weighted += static_cast<double>(m.support) * m.f1;
  }
  if (total_support > 0) {
    report.weighted_f1 = weighted / static_cast<double>(total_support);
  } else {
    report.weighted_f1 = total_pred == 0 ? 1.0 : 0.0;
  }
  report.micro_precision =
      total_pred ? static_cast<double>(total_overlap) / total_pred : 0.0;
  report.micro_recall =
      total_support ? static_cast<double>(total_overlap) / total_support : 0.0;
  report.micro_f1 = HarmonicF1(report.micro_precision, report.micro_recall);
  if (report.n_questions > 0) {
    report.rejection_accuracy =
        static_cast<double>(correct_decisions) / report.n_questions;
  }
  return report;
}

std::string MetricsToJson(const MetricsReport& report) {
  nlohmann::ordered_json doc;
  doc["weighted_f1"] = report.weighted_f1;
  doc["micro_precision"] = report.micro_precision;
  doc["micro_recall"] = report.micro_recall;
  doc["micro_f1"] = report.micro_f1;
  doc["rejection_accuracy"] = report.rejection_accuracy;
  doc["counts"] = {{"n_utterances", report.n_utterances},
                   {"n_questions", report.n_questions},
                   {"n_rejections", report.n_rejections}};
  nlohmann::ordered_json per_slot = nlohmann::ordered_json::object();
  for (const auto& [slot, m] : report.per_slot) {
    per_slot[slot] = {{"precision", m.precision}, {"recall", m.recall},
                      {"f1", m.f1},               {"support", m.support},
                      {"predicted", m.predicted}, {"overlap", m.overlap}};
  }
  doc["per_slot"] = std::move(per_slot);
  return doc.dump(2) + "\n";
}

}  // namespace slotqa
