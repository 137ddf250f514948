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

// Slot-tagged corpora: BIO/CoNLL ingestion, slot schemas, conversion into
// SQuAD2-shaped QA examples, and seeded few-shot subsampling.

#ifndef SLOTQA_CORPUS_H_
#define SLOTQA_CORPUS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slotqa/question_gen.h"
#include "slotqa/text.h"

namespace slotqa {

// A gold slot value. Offsets are half-open byte offsets into the utterance.
struct SlotFill {
  std::string slot_id;
  std::size_t start_char = 0;
  std::size_t end_char = 0;
  std::string surface;

  bool operator==(const SlotFill&) const = default;
};

struct AnnotatedUtterance {
  std::string utterance_id;
  std::string text;
  std::vector<Token> tokens;
  std::vector<SlotFill> slots;

  bool operator==(const AnnotatedUtterance&) const = default;
};

// Builds an utterance from tokens and parallel BIO tags, joining tokens with
// single spaces. Dangling I-x tags open a new span unless `strict`.
AnnotatedUtterance MakeUtterance(std::string utterance_id,
                                 const std::vector<std::string>& tokens,
                                 const std::vector<std::string>& tags,
                                 bool strict = false);

// BIO tags for each token, reconstructed from the slot spans.
std::vector<std::string> BioTags(const AnnotatedUtterance& utt);

// Throws ValidationError listing offset, substring and overlap violations.
void ValidateUtterance(const AnnotatedUtterance& utt);

// Ordered tag -> description map with unique tags.
class SlotSchema {
 public:
  // Throws ValidationError on duplicate tag or empty description.
  void Add(std::string tag, std::string description);
  const std::string* Find(std::string_view tag) const;
  std::optional<std::size_t> IndexOf(std::string_view tag) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // "tag<TAB>description" lines; '#' comments and blank lines skipped.
  static SlotSchema Parse(std::string_view text,
                          std::string_view source = "<schema>");
  static SlotSchema Load(const std::string& path);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// "fromloc.city_name" -> "fromloc city name".
std::string HumanizeTag(std::string_view tag);
// Schema description when present, HumanizeTag otherwise.
std::string TagToDescription(std::string_view tag, const SlotSchema& schema);

// A simulated form: one TextField per schema slot, labelled with its
// description, all visible.
Screen ScreenFromSchema(const SlotSchema& schema, std::string screen_id,
                        std::string app_name = {});

struct BioOptions {
  bool strict = false;  // dangling I-x is an error instead of a span start
};

// CoNLL-style "token<TAB>tag" lines, blank-line separated, optional
// "# id: <utterance_id>" comment. Utterances without an id get "u0001"...
std::vector<AnnotatedUtterance> ParseBioCorpus(
    std::string_view text, const BioOptions& options = {},
    std::string_view source = "<bio>");
std::vector<AnnotatedUtterance> LoadBioCorpus(const std::string& path,
                                              const BioOptions& options = {});
std::string RenderBioCorpus(const std::vector<AnnotatedUtterance>& utts);

struct NegativePolicy {
  enum class Kind { kAll, kSampleK, kNone };
  Kind kind = Kind::kAll;
  std::size_t k = 0;
  std::uint64_t seed = 0;

  static NegativePolicy All() { return {Kind::kAll, 0, 0}; }
  static NegativePolicy None() { return {Kind::kNone, 0, 0}; }
  static NegativePolicy SampleK(std::size_t k, std::uint64_t seed) {
    return {Kind::kSampleK, k, seed};
  }
  // "all", "none" or "sample:K".
  static NegativePolicy Parse(std::string_view spec, std::uint64_t seed = 0);
};

struct QaAnswer {
  std::string text;
  std::size_t answer_start = 0;  // byte offset into the context

  bool operator==(const QaAnswer&) const = default;
};

struct QaExample {
  std::string qa_id;
  std::string question;
  std::string context;
  std::vector<QaAnswer> answers;
  bool is_impossible = false;

  bool operator==(const QaExample&) const = default;
};

// Each slot becomes a simulated TextField whose label is its description.
// Emits one answerable example per SlotFill plus negatives for absent schema
// slots per `negatives`. qa_id is "<utterance_id>:<slot_tag>"; a repeated
// tag within one utterance gets "#2", "#3"... appended.
std::vector<QaExample> ToQaExamples(
    const std::vector<AnnotatedUtterance>& utts, const SlotSchema& schema,
    AblationMode mode, const NegativePolicy& negatives,
    const QuestionGenerator& generator = QuestionGenerator());

// Uniform sample without replacement of min(k, n) utterances, returned in
// input order. `stratified` first covers every slot type it can.
std::vector<AnnotatedUtterance> SampleFewShot(
    const std::vector<AnnotatedUtterance>& utts, std::size_t k,
    std::uint64_t seed, bool stratified = false);

struct SlotCoverage {
  std::map<std::string, std::size_t> counts;  // fills per slot in the sample
  std::vector<std::string> missing;  // slots in the universe never sampled
};
SlotCoverage ComputeSlotCoverage(
    const std::vector<AnnotatedUtterance>& sample,
    const std::vector<AnnotatedUtterance>& universe);

}  // namespace slotqa

#endif  // SLOTQA_CORPUS_H_
