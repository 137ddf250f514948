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


#include "slotqa/text.h"

#include <gtest/gtest.h>

#include "slotqa/random.h"

namespace slotqa {
namespace {

TEST(TextTest, WhitespaceTokenizeKeepsByteOffsets) {
  const auto toks = WhitespaceTokenize("  I am\tflying ");
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(toks[0].text, "I");
  EXPECT_EQ(toks[0].start, 2u);
  EXPECT_EQ(toks[1].start, 4u);
  EXPECT_EQ(toks[2].text, "flying");
  EXPECT_EQ(toks[2].end(), 13u);
}

TEST(TextTest, StripPunctOnlyTouchesEdges) {
  EXPECT_EQ(StripPunct("\"O'Hare,\""), "O'Hare");
  EXPECT_EQ(StripPunct("$45"), "45");
  EXPECT_EQ(StripPunct("..."), "");
}

TEST(TextTest, AlphaTokensLowercasesRuns) {
  EXPECT_EQ(AlphaTokens("Track Distance with GPS!"),
            (std::vector<std::string>{"track", "distance", "with", "gps"}));
  EXPECT_EQ(AlphaTokens("XYZ12 ab3c"),
            (std::vector<std::string>{"xyz", "ab", "c"}));
}

TEST(TextTest, CodePointOffsetsRoundTrip) {
  const std::string s = "caf\xc3\xa9 to Z\xc3\xbcrich";  // café to Zürich
  EXPECT_EQ(Utf8Length(s), 14u);
  EXPECT_EQ(ByteToCharOffset(s, 6), 5u);
  for (std::size_t c = 0; c <= Utf8Length(s); ++c) {
    EXPECT_EQ(ByteToCharOffset(s, CharToByteOffset(s, c)), c);
  }
}

TEST(TextTest, SplitKeepsEmptyFields) {
  EXPECT_EQ(Split("a\t\tb", '\t'), (std::vector<std::string>{"a", "", "b"}));
}

TEST(RandomTest, SameSeedSameStream) {
  SeededRng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.Next();
    EXPECT_EQ(x, b.Next());
    differs |= x != c.Next();
  }
  EXPECT_TRUE(differs);
}

TEST(RandomTest, SampleIndicesSortedDistinct) {
  SeededRng rng(7);
  const auto idx = rng.SampleIndices(20, 8);
  ASSERT_EQ(idx.size(), 8u);
  for (std::size_t i = 1; i < idx.size(); ++i) EXPECT_LT(idx[i - 1], idx[i]);
  EXPECT_LT(idx.back(), 20u);
  EXPECT_EQ(SeededRng(7).SampleIndices(5, 9).size(), 5u);
}

// Each index of 10 should land in a 3-subset with probability 0.3.
TEST(RandomTest, SampleIndicesUniformChiSquare) {
  SeededRng rng(2026);
  constexpr int kTrials = 20000;
  std::vector<int> hits(10, 0);
  for (int t = 0; t < kTrials; ++t) {
    for (auto i : rng.SampleIndices(10, 3)) ++hits[i];
  }
  const double expected = kTrials * 0.3;
  double chi2 = 0.0;
  for (int h : hits) chi2 += (h - expected) * (h - expected) / expected;
  EXPECT_LT(chi2, 27.88);  // 9 dof, p = 0.001
}

}  // namespace
}  // namespace slotqa
