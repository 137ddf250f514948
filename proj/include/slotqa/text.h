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

// Small text helpers shared by the corpus, dispatch and metric code.

#ifndef SLOTQA_TEXT_H_
#define SLOTQA_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace slotqa {

// A whitespace-delimited token and its byte offset in the source text.
struct Token {
  std::string text;
  std::size_t start = 0;

  std::size_t end() const { return start + text.size(); }
  bool operator==(const Token&) const = default;
};

bool IsSpace(char c);

// Splits on ASCII whitespace, keeping byte offsets.
std::vector<Token> WhitespaceTokenize(std::string_view text);

std::string_view Trim(std::string_view s);
std::string AsciiLower(std::string_view s);
std::vector<std::string> Split(std::string_view s, char delim);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Strips leading and trailing ASCII punctuation.
std::string_view StripPunct(std::string_view s);

// Lowercased alphabetic runs, e.g. "XYZ3 foo-bar" -> {"xyz", "foo", "bar"}.
std::vector<std::string> AlphaTokens(std::string_view s);

// UTF-8 offset conversion. Offsets that fall inside a multi-byte sequence
// are rounded down to the start of that sequence.
std::size_t ByteToCharOffset(std::string_view utf8, std::size_t byte_offset);
std::size_t CharToByteOffset(std::string_view utf8, std::size_t char_offset);
std::size_t Utf8Length(std::string_view utf8);

// Whole-file IO; throw Error on failure.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace slotqa

#endif  // SLOTQA_TEXT_H_
