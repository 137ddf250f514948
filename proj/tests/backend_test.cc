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


#include "slotqa/qa_backend.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "slotqa/errors.h"
#include "slotqa/random.h"
#include "test_util.h"

namespace slotqa {
namespace {

using testing::BundledCorpus;
using testing::DataPath;

TEST(RejectionTest, ThresholdRule) {
  BackendConfig cfg;
  const ExtractionResult confident{Answer{"x", 0, 1}, 0.9, 0.1};
  const ExtractionResult borderline{Answer{"x", 0, 1}, 0.5, 0.5};
  EXPECT_FALSE(IsRejected(confident, cfg));
  EXPECT_TRUE(IsRejected(borderline, cfg));  // ties reject
  EXPECT_TRUE(IsRejected(ExtractionResult::NoAnswer(0.0), cfg));
  cfg.no_answer_threshold = 0.6;
  EXPECT_FALSE(IsRejected(borderline, cfg));
}

TEST(RejectionTest, MonotoneInTau) {
  SeededRng rng(3);
  for (int i = 0; i < 500; ++i) {
    const double nas = static_cast<double>(rng.Below(1001)) / 1000.0;
    const ExtractionResult r{Answer{"x", 0, 1}, 1.0 - nas, nas};
    bool was_rejected = true;
    for (int t = 0; t <= 100; ++t) {
      BackendConfig cfg;
      cfg.no_answer_threshold = t / 100.0;
      const bool rej = IsRejected(r, cfg);
      EXPECT_TRUE(was_rejected || !rej) << "rejection came back at tau " << t;
      was_rejected = rej;
    }
  }
}

TEST(BackendConfigTest, Validate) {
  BackendConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.no_answer_threshold = 1.5;
  cfg.batch_size = 0;
  try {
    cfg.Validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.violations().size(), 2u);
  }
}

TEST(CheckExtractionTest, Contract) {
  const std::string ctx = "fly to Boston";
  EXPECT_NO_THROW(CheckExtraction({Answer{"Boston", 7, 13}, 0.8, 0.2}, ctx));
  EXPECT_THROW(CheckExtraction({Answer{"Boston", 6, 12}, 0.8, 0.2}, ctx),
               ContractViolation);
  EXPECT_THROW(CheckExtraction({Answer{"Boston", 7, 13}, 1.2, 0.2}, ctx),
               ContractViolation);
  EXPECT_THROW(CheckExtraction({std::nullopt, std::nan(""), 0.2}, ctx),
               ContractViolation);
}

TEST(GoldOracleTest, ExactRecoveryOnBundledSample) {
  const auto schema = SlotSchema::Load(DataPath("schemas/atis.tsv"));
  const auto examples = ToQaExamples(BundledCorpus("atis_sample"), schema,
                                     AblationMode::kFull, NegativePolicy::All());
  const auto oracle = GoldOracleBackend::FromQaExamples(examples);
  const BackendConfig cfg;
  for (const auto& ex : examples) {
    const auto r = oracle.Extract(ex.question, ex.context, cfg);
    if (ex.is_impossible) {
      EXPECT_TRUE(IsRejected(r, cfg)) << ex.qa_id;
    } else {
      ASSERT_TRUE(r.answer) << ex.qa_id;
      EXPECT_EQ(r.answer->text, ex.answers[0].text);
      EXPECT_EQ(r.answer->start_char, ex.answers[0].answer_start);
      EXPECT_FALSE(IsRejected(r, cfg));
    }
  }
}

TEST(GoldOracleTest, RejectsNonSubstringGold) {
  GoldOracleBackend oracle;
  EXPECT_THROW(oracle.Add("fly to Boston", "Where?", "Denver"), ContractViolation);
  EXPECT_THROW(oracle.Add("fly to Boston", "Where?", "Boston", 3), ContractViolation);
}

// Default batching: empty, singleton, and permutations.
TEST(BatchExtractTest, PermutationOracle) {
  const auto schema = SlotSchema::Load(DataPath("schemas/atis.tsv"));
  const auto examples = ToQaExamples(BundledCorpus("atis_sample"), schema,
                                     AblationMode::kFull, NegativePolicy::SampleK(2, 0));
  const auto oracle = GoldOracleBackend::FromQaExamples(examples);
  const BackendConfig cfg;
  EXPECT_TRUE(oracle.BatchExtract({}, cfg).empty());

  std::vector<QaQuery> queries;
  for (const auto& ex : examples) queries.push_back({ex.qa_id, ex.question, ex.context});
  const QaQuery& one = queries.front();
  const auto single = oracle.BatchExtract(std::span<const QaQuery>(&one, 1), cfg);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].result, oracle.Extract(one, cfg));

  SeededRng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.Below(12);
    std::vector<std::size_t> pick;
    for (std::size_t i = 0; i < n; ++i) pick.push_back(rng.Below(queries.size()));
    std::vector<QaQuery> batch;
    for (auto i : pick) batch.push_back(queries[i]);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.Below(i)]);
    std::vector<QaQuery> shuffled;
    for (auto p : perm) shuffled.push_back(batch[p]);
    const auto a = oracle.BatchExtract(batch, cfg);
    const auto b = oracle.BatchExtract(shuffled, cfg);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(b[i].result, a[perm[i]].result);
  }
}

class ThrowingBackend : public QaBackend {
 public:
  ExtractionResult Extract(const QaQuery& q, const BackendConfig&) const override {
    if (q.question == "down") throw BackendUnavailable("down");
    if (q.question == "bad") return {Answer{"zzz", 0, 3}, 1.0, 0.0};
    return ExtractionResult::NoAnswer();
  }
  using QaBackend::Extract;
  std::string name() const override { return "throwing"; }
};

TEST(BatchExtractTest, FailuresStayPerItem) {
  ThrowingBackend backend;
  const std::vector<QaQuery> q = {{"1", "ok", "c"}, {"2", "down", "c"}, {"3", "ok", "c"}};
  const auto out = backend.BatchExtract(q, {});
  EXPECT_TRUE(out[0].ok());
  EXPECT_EQ(out[1].status, BatchOutcome::Status::kUnavailable);
  EXPECT_TRUE(out[2].ok());
}

TEST(TokenPatternTest, ParseErrors) {
  EXPECT_THROW(TokenPattern::Parse("from"), ParseError);
  EXPECT_THROW(TokenPattern::Parse("<Proper> from <Proper>"), ParseError);
  EXPECT_THROW(TokenPattern::Parse("<Colour>"), ParseError);
  EXPECT_THROW(TokenPattern::Parse("[]"), ParseError);
}

TEST(LexicalTest, DepartureAirport) {
  const Gazetteer g = Gazetteer::Parse("departure\tfrom <Proper>+\n");
  const std::string ctx = "I am flying from San Jose and flying to Boston";
  const auto r = LexicalExtract("What is the departure airport?", ctx, g);
  ASSERT_TRUE(r.answer);
  EXPECT_EQ(r.answer->text, "San Jose");
  EXPECT_EQ(ctx.substr(r.answer->start_char, 8), "San Jose");
}

TEST(LexicalTest, PunctuationStaysOutOfSpans) {
  const Gazetteer g = Gazetteer::Parse("arrival\tto <Proper>+\n");
  const auto r = LexicalExtract("What is the arrival airport?",
                                "Fly me to \"Chicago O'Hare\", please", g);
  ASSERT_TRUE(r.answer);
  EXPECT_EQ(r.answer->text, "Chicago O'Hare");
}

TEST(LexicalTest, EmptyGazetteerNeverAnswers) {
  const auto r = LexicalExtract("What is the departure airport?", "from San Jose", {});
  EXPECT_FALSE(r.answer);
  EXPECT_TRUE(IsRejected(r, {}));
}

TEST(LexicalTest, KeywordMustAppearInQuestion) {
  const Gazetteer g = Gazetteer::Parse("departure\tfrom <Proper>+\n");
  EXPECT_FALSE(LexicalExtract("What is the date?", "from San Jose", g).answer);
}

// Enumerate two candidate spans at every pair of positions: the longer one
// wins, and equal lengths go to the earlier offset.
TEST(LexicalTest, TieBreakEnumeration) {
  const Gazetteer g = Gazetteer::Parse("city\tat <Proper>+\n");
  const std::vector<std::string> fillers = {"x", "y", "z"};
  for (int len_a = 1; len_a <= 3; ++len_a) {
    for (int len_b = 1; len_b <= 3; ++len_b) {
      for (int gap = 0; gap <= 2; ++gap) {
        std::string ctx = "go at";
        for (int i = 0; i < len_a; ++i) ctx += " A" + std::to_string(i);
        for (int i = 0; i < gap; ++i) ctx += " " + fillers[i];
        ctx += " at";
        for (int i = 0; i < len_b; ++i) ctx += " B" + std::to_string(i);
        const auto r = LexicalExtract("Which city?", ctx, g);
        ASSERT_TRUE(r.answer) << ctx;
        const bool a_wins = len_a >= len_b;
        EXPECT_EQ(r.answer->text[0], a_wins ? 'A' : 'B') << ctx;
        EXPECT_EQ(WhitespaceTokenize(r.answer->text).size(),
                  static_cast<std::size_t>(std::max(len_a, len_b)));
      }
    }
  }
}

TEST(LexicalTest, CapturedLiteralAndNumbers) {
  const Gazetteer g = Gazetteer::Load(DataPath("gazetteer.tsv"));
  auto r = LexicalExtract("Is this Business, Personal or Other?",
                          "Please log this trip as Personal", g);
  ASSERT_TRUE(r.answer);
  EXPECT_EQ(r.answer->text, "Personal");
  r = LexicalExtract("What is the odometer value?", "The odometer reads 45210 today", g);
  ASSERT_TRUE(r.answer);
  EXPECT_EQ(r.answer->text, "45210");
}

TEST(LexicalTest, BackendHonoursContract) {
  const LexicalBackend backend(Gazetteer::Load(DataPath("gazetteer.tsv")));
  for (const auto& u : BundledCorpus("united")) {
    const auto r = backend.Extract("What is the departure airport?", u.text, {});
    EXPECT_NO_THROW(CheckExtraction(r, u.text));
  }
}

}  // namespace
}  // namespace slotqa
