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

// Weighted token F1 over slot types.
//
// For each slot type, predicted and gold fill tokens are compared as
// multisets per utterance and the overlaps summed over the corpus:
//   P = overlap / predicted tokens, R = overlap / gold tokens,
//   f1 = 2PR / (P + R), or 0 when P + R = 0.
// weighted_f1 averages f1 over slot types weighted by gold token count
// (support), skipping types with no support. A micro-averaged F1 is
// reported alongside.

#ifndef SLOTQA_METRICS_H_
#define SLOTQA_METRICS_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slotqa/corpus.h"
#include "slotqa/dispatch.h"

namespace slotqa {

struct SlotMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;    // gold tokens
  std::size_t predicted = 0;  // predicted tokens
  std::size_t overlap = 0;

  bool operator==(const SlotMetrics&) const = default;
};

struct MetricsReport {
  std::map<std::string, SlotMetrics> per_slot;
  // With no gold tokens at all: 1 if nothing was predicted, else 0.
  double weighted_f1 = 0.0;
  double micro_precision = 0.0;
  double micro_recall = 0.0;
  double micro_f1 = 0.0;
  std::size_t n_utterances = 0;
  std::size_t n_questions = 0;
  std::size_t n_rejections = 0;
  // Share of questions whose fill/reject decision matches the gold
  // (1 when no questions were asked). Not part of F1.
  double rejection_accuracy = 1.0;

  bool operator==(const MetricsReport&) const = default;
};

struct MetricOptions {
  // Compare tokens verbatim instead of lowercased with edge punctuation
  // stripped.
  bool raw = false;
};

// Whitespace tokens after normalization; tokens left empty are dropped.
std::vector<std::string> MetricTokens(std::string_view text,
                                      const MetricOptions& options = {});

double HarmonicF1(double precision, double recall);

// gold[i] and predicted[i] must share an utterance_id; throws AlignmentError
// otherwise.
MetricsReport TokenF1(std::span<const AnnotatedUtterance> gold,
                      std::span<const SlotFillResult> predicted,
                      const MetricOptions& options = {});

std::string MetricsToJson(const MetricsReport& report);

}  // namespace slotqa

#endif  // SLOTQA_METRICS_H_
