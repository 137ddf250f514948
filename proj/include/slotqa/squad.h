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

// SQuAD v2 files. answer_start is written as a Unicode code-point offset
// (the SQuAD convention) and converted back to a byte offset on import.

#ifndef SLOTQA_SQUAD_H_
#define SLOTQA_SQUAD_H_

#include <string>
#include <string_view>
#include <vector>

#include "slotqa/corpus.h"

namespace slotqa {

// Consecutive examples sharing a context become one paragraph.
std::string RenderSquad(const std::vector<QaExample>& examples,
                        std::string_view title = "slotqa");
void ExportSquad(const std::vector<QaExample>& examples,
                 const std::string& path, std::string_view title = "slotqa");

// Throws ParseError on malformed documents and ValidationError when an
// answer is not the context substring at its offset.
std::vector<QaExample> ParseSquad(std::string_view json_text,
                                  std::string_view source = "<squad>");
std::vector<QaExample> ImportSquad(const std::string& path);

// Throws ValidationError if any example breaks the QaExample invariants.
void ValidateQaExamples(const std::vector<QaExample>& examples);

}  // namespace slotqa

#endif  // SLOTQA_SQUAD_H_
