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

#include "slotqa/squad.h"

#include "json.hpp"
#include "slotqa/errors.h"
#include "slotqa/text.h"

namespace slotqa {

using OrderedJson = nlohmann::ordered_json;

void ValidateQaExamples(const std::vector<QaExample>& examples) {
  std::vector<std::string> v;
  for (const auto& ex : examples) {
    if (ex.is_impossible != ex.answers.empty()) {
      v.push_back(ex.qa_id + ": is_impossible disagrees with answers");
    }
    for (const auto& a : ex.answers) {
      if (a.answer_start + a.text.size() > ex.context.size() ||
          ex.context.compare(a.answer_start, a.text.size(), a.text) != 0) {
        v.push_back(ex.qa_id + ": answer '" + a.text +
                    "' is not the context substring at " +
                    std::to_string(a.answer_start));
      }
    }
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

std::string RenderSquad(const std::vector<QaExample>& examples,
                        std::string_view title) {
  ValidateQaExamples(examples);
  OrderedJson paragraphs = OrderedJson::array();
  for (std::size_t i = 0; i < examples.size();) {
    const std::string& context = examples[i].context;
    OrderedJson qas = OrderedJson::array();
    for (; i < examples.size() && examples[i].context == context; ++i) {
      const QaExample& ex = examples[i];
      OrderedJson answers = OrderedJson::array();
      for (const auto& a : ex.answers) {
        OrderedJson ans;
        ans["text"] = a.text;
        ans["answer_start"] = ByteToCharOffset(context, a.answer_start);
        answers.push_back(std::move(ans));
      }
      OrderedJson qa;
      qa["id"] = ex.qa_id;
      qa["question"] = ex.question;
      qa["answers"] = std::move(answers);
      qa["is_impossible"] = ex.is_impossible;
      qas.push_back(std::move(qa));
    }
    OrderedJson para;
    para["context"] = context;
    para["qas"] = std::move(qas);
    paragraphs.push_back(std::move(para));
  }
  OrderedJson entry;
  entry["title"] = std::string(title);
  entry["paragraphs"] = std::move(paragraphs);
  OrderedJson doc;
  doc["version"] = "v2.0";
  doc["data"] = OrderedJson::array({std::move(entry)});
  return doc.dump(1) + "\n";
}

void ExportSquad(const std::vector<QaExample>& examples, const std::string& path,
                 std::string_view title) {
  WriteFile(path, RenderSquad(examples, title));
}

std::vector<QaExample> ParseSquad(std::string_view json_text,
                                  std::string_view source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(source), e.what());
  }
  std::vector<QaExample> out;
  try {
    for (const auto& entry : doc.at("data")) {
      for (const auto& para : entry.at("paragraphs")) {
        const std::string context = para.at("context").get<std::string>();
        for (const auto& qa : para.at("qas")) {
          QaExample ex;
          ex.qa_id = qa.at("id").get<std::string>();
          ex.question = qa.at("question").get<std::string>();
          ex.context = context;
          for (const auto& a : qa.at("answers")) {
            QaAnswer ans;
            ans.text = a.at("text").get<std::string>();
            ans.answer_start =
                CharToByteOffset(context, a.at("answer_start").get<std::size_t>());
            ex.answers.push_back(std::move(ans));
          }
          ex.is_impossible = qa.value("is_impossible", ex.answers.empty());
          out.push_back(std::move(ex));
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(source), e.what());
  }
  ValidateQaExamples(out);
  return out;
}

std::vector<QaExample> ImportSquad(const std::string& path) {
  return ParseSquad(ReadFile(path), path);
}

}  // namespace slotqa
