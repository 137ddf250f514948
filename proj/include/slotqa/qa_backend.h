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

// Span-extraction backends. Every answer source (gold oracle, lexical
// baseline, remote model service) implements QaBackend.

#ifndef SLOTQA_QA_BACKEND_H_
#define SLOTQA_QA_BACKEND_H_

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slotqa/corpus.h"

namespace slotqa {

// Half-open byte span of the context plus its text.
struct Answer {
  std::string text;
  std::size_t start_char = 0;
  std::size_t end_char = 0;

  bool operator==(const Answer&) const = default;
};

struct ExtractionResult {
  std::optional<Answer> answer;
  double span_score = 0.0;
  double no_answer_score = 1.0;

  static ExtractionResult NoAnswer(double no_answer_score = 1.0) {
    return {std::nullopt, 0.0, no_answer_score};
  }
  bool operator==(const ExtractionResult&) const = default;
};

struct BackendConfig {
  double no_answer_threshold = 0.5;  // tau
  std::size_t batch_size = 16;
  std::optional<std::string> endpoint;
  int timeout_ms = 30000;
  int retries = 2;

  // Throws ValidationError.
  void Validate() const;
};

// No answer is predicted iff the backend returned no span or its
// no-answer score reaches tau.
bool IsRejected(const ExtractionResult& result, const BackendConfig& cfg);

// Throws ContractViolation unless the answer is a non-empty context
// substring and both scores are finite and within [0, 1].
void CheckExtraction(const ExtractionResult& result, std::string_view context);

struct QaQuery {
  std::string id;
  std::string question;
  std::string context;
};

struct BatchOutcome {
  enum class Status { kOk, kUnavailable, kContractViolation, kError };
  Status status = Status::kOk;
  ExtractionResult result;
  std::string error;

  bool ok() const { return status == Status::kOk; }
};

class QaBackend {
 public:
  virtual ~QaBackend() = default;

  // Implementations must be safe to call concurrently.
  virtual ExtractionResult Extract(const QaQuery& query,
                                   const BackendConfig& cfg) const = 0;

  ExtractionResult Extract(std::string_view question, std::string_view context,
                           const BackendConfig& cfg) const {
    return Extract(QaQuery{{}, std::string(question), std::string(context)},
                   cfg);
  }

  // Element-wise Extract in input order; failures are reported per item.
  virtual std::vector<BatchOutcome> BatchExtract(
      std::span<const QaQuery> queries, const BackendConfig& cfg) const;

  virtual std::string name() const = 0;
};

// Test teacher: answers exactly the gold spans it was given, keyed by
// (context, question text), and rejects everything else.
class GoldOracleBackend : public QaBackend {
 public:
  // Without `start` the first occurrence of `answer` is used. Throws
  // ContractViolation if `answer` is not a substring of `context`.
  void Add(const std::string& context, const std::string& question,
           const std::string& answer,
           std::optional<std::size_t> start = std::nullopt);

  static GoldOracleBackend FromQaExamples(const std::vector<QaExample>& examples);

  ExtractionResult Extract(const QaQuery& query,
                           const BackendConfig& cfg) const override;
  using QaBackend::Extract;
  std::string name() const override { return "oracle"; }
  std::size_t size() const { return gold_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, Answer> gold_;
};

// Token pattern for the lexical baseline, written as space-separated
// elements:
//   word        literal anchor, matched case-insensitively, not captured
//   [word]      literal, captured
//   <Proper>    capitalized token     <Lower>  lowercase token
//   <Num>       token with a digit    <Word>   any token
// Classes are captured and may carry "+" (one or more). The captured
// elements must be contiguous.
class TokenPattern {
 public:
  // Throws ParseError.
  static TokenPattern Parse(std::string_view text);

  struct Match {
    std::size_t start_char;
    std::size_t end_char;
  };
  // Every capture span this pattern can produce on `context`.
  std::vector<Match> FindAll(std::string_view context) const;

  const std::string& source() const { return source_; }

 private:
  enum class Kind { kLiteral, kProper, kLower, kNum, kWord };
  struct Element {
    Kind kind;
    std::string literal;  // lowercase
    bool capture = false;
    bool repeat = false;
  };

  std::string source_;
  std::vector<Element> elements_;
};

// keyword -> patterns. A keyword fires when all of its words occur in the
// question (case-insensitive).
class Gazetteer {
 public:
  void Add(std::string keyword, std::string_view pattern);
  bool empty() const { return entries_.empty(); }

  // "keyword<TAB>pattern" lines, '#' comments.
  static Gazetteer Parse(std::string_view text,
                         std::string_view source = "<gazetteer>");
  static Gazetteer Load(const std::string& path);

  struct Entry {
    std::vector<std::string> keywords;
    TokenPattern pattern;
  };
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

// Longest match over all fired patterns; equal lengths prefer the earlier
// offset. No match gives no-answer with score 1.
ExtractionResult LexicalExtract(std::string_view question,
                                std::string_view context,
                                const Gazetteer& gazetteer);

class LexicalBackend : public QaBackend {
 public:
  explicit LexicalBackend(Gazetteer gazetteer)
      : gazetteer_(std::move(gazetteer)) {}

  ExtractionResult Extract(const QaQuery& query,
                           const BackendConfig& cfg) const override;
  using QaBackend::Extract;
  std::string name() const override { return "lexical"; }

 private:
  Gazetteer gazetteer_;
};

// Client for the model service's HTTP protocol:
//   POST /extract {"items":[{"id","question","context"}]}
//     -> {"items":[{"id","text"|null,"answer_start"|null,"span_score",
//                   "no_answer_score"}]}
//   GET /health -> {"status":"ok","model":<name>}
// answer_start on the wire counts Unicode code points.
class RemoteBackend : public QaBackend {
 public:
  // `endpoint` is "http://host:port".
  explicit RemoteBackend(std::string endpoint);

  // Throws BackendUnavailable on transport failure or non-ok status.
  std::string Health(const BackendConfig& cfg) const;

  // Throws BackendUnavailable or ContractViolation.
  ExtractionResult Extract(const QaQuery& query,
                           const BackendConfig& cfg) const override;
  using QaBackend::Extract;

  // Sends at most cfg.batch_size items per request.
  std::vector<BatchOutcome> BatchExtract(
      std::span<const QaQuery> queries, const BackendConfig& cfg) const override;

  std::string name() const override { return "remote"; }
  const std::string& endpoint() const { return endpoint_; }

 private:
  std::string endpoint_;
};

}  // namespace slotqa

#endif  // SLOTQA_QA_BACKEND_H_
