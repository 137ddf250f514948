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

#include <cmath>

#include "slotqa/errors.h"
#include "slotqa/qa_backend.h"

namespace slotqa {

void BackendConfig::Validate() const {
  std::vector<std::string> v;
  if (!(no_answer_threshold >= 0.0 && no_answer_threshold <= 1.0)) {
    v.push_back("no_answer_threshold must lie in [0, 1]");
  }
  if (batch_size == 0) v.push_back("batch_size must be positive");
  if (timeout_ms <= 0) v.push_back("timeout_ms must be positive");
  if (retries < 0) v.push_back("retries must be non-negative");
  if (!v.empty()) throw ValidationError(std::move(v));
}

bool IsRejected(const ExtractionResult& result, const BackendConfig& cfg) {
  return !result.answer || result.no_answer_score >= cfg.no_answer_threshold;
}

void CheckExtraction(const ExtractionResult& result, std::string_view context) {
  auto in_unit = [](double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; };
  if (!in_unit(result.span_score) || !in_unit(result.no_answer_score)) {
    throw ContractViolation("scores must be finite and within [0, 1]");
  }
  if (!result.answer) return;
  const Answer& a = *result.answer;
  if (a.end_char <= a.start_char || a.end_char > context.size() ||
      a.text.size() != a.end_char - a.start_char ||
      context.substr(a.start_char, a.text.size()) != a.text) {
    throw ContractViolation("answer '" + a.text +
                            "' is not the context substring at [" +
                            std::to_string(a.start_char) + ", " +
                            std::to_string(a.end_char) + ")");
  }
}

std::vector<BatchOutcome> QaBackend::BatchExtract(
    std::span<const QaQuery> queries, const BackendConfig& cfg) const {
  std::vector<BatchOutcome> out;
  out.reserve(queries.size());
  for (const auto& q : queries) {
    BatchOutcome o;
    try {
      o.result = Extract(q, cfg);
    } catch (const BackendUnavailable& e) {
      o = {BatchOutcome::Status::kUnavailable, ExtractionResult::NoAnswer(),
           e.what()};
    } catch (const ContractViolation& e) {
      o = {BatchOutcome::Status::kContractViolation,
           ExtractionResult::NoAnswer(), e.what()};
    } catch (const std::exception& e) {
      o = {BatchOutcome::Status::kError, ExtractionResult::NoAnswer(),
           e.what()};
    }
    out.push_back(std::move(o));
  }
  return out;
}

void GoldOracleBackend::Add(const std::string& context,
                            const std::string& question,
                            const std::string& answer,
                            std::optional<std::size_t> start) {
  const std::size_t pos = start ? *start : context.find(answer);
  if (answer.empty() || pos == std::string::npos ||
      context.compare(pos, answer.size(), answer) != 0) {
    throw ContractViolation("gold answer '" + answer +
                            "' is not a substring of '" + context + "'");
  }
  gold_[{context, question}] = Answer{answer, pos, pos + answer.size()};
}

GoldOracleBackend GoldOracleBackend::FromQaExamples(
    const std::vector<QaExample>& examples) {
  GoldOracleBackend oracle;
  for (const auto& ex : examples) {
    if (ex.answers.empty()) continue;
    oracle.Add(ex.context, ex.question, ex.answers.front().text,
               ex.answers.front().answer_start);
  }
  return oracle;
}

ExtractionResult GoldOracleBackend::Extract(const QaQuery& query,
                                            const BackendConfig&) const {
  auto it = gold_.find({query.context, query.question});
  if (it == gold_.end()) return ExtractionResult::NoAnswer(1.0);
  return {it->second, 1.0, 0.0};
}

}  // namespace slotqa
