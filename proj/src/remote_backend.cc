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

#include <map>
#include <set>

#include "httplib.h"
#include "json.hpp"
#include "slotqa/errors.h"
#include "slotqa/qa_backend.h"
#include "slotqa/text.h"

namespace slotqa {
namespace {

using Json = nlohmann::json;

httplib::Client MakeClient(const std::string& endpoint,
                           const BackendConfig& cfg) {
  httplib::Client client(endpoint);
  const auto sec = cfg.timeout_ms / 1000;
  const auto usec = (cfg.timeout_ms % 1000) * 1000;
  client.set_connection_timeout(sec, usec);
  client.set_read_timeout(sec, usec);
  client.set_write_timeout(sec, usec);
  return client;
}

// Converts one wire item into a checked result.
ExtractionResult DecodeItem(const Json& item, const std::string& context) {
  auto score = [&](const char* key) {
    auto it = item.find(key);
    if (it == item.end() || !it->is_number()) {
      throw ContractViolation(std::string("missing numeric '") + key + "'");
    }
    return it->get<double>();
  };
  ExtractionResult r;
  r.span_score = score("span_score");
  r.no_answer_score = score("no_answer_score");
  auto text = item.find("text");
  auto start = item.find("answer_start");
  const bool has_text = text != item.end() && !text->is_null();
  const bool has_start = start != item.end() && !start->is_null();
  if (has_text != has_start) {
    throw ContractViolation("text and answer_start must both be set or null");
  }
  if (has_text) {
    if (!text->is_string() || !start->is_number_unsigned()) {
      throw ContractViolation("text must be a string, answer_start a count");
    }
    const std::string t = text->get<std::string>();
    if (!t.empty()) {
      const std::size_t chars = start->get<std::size_t>();
      if (chars > Utf8Length(context)) {
        throw ContractViolation("answer_start past end of context");
      }
      const std::size_t b = CharToByteOffset(context, chars);
      r.answer = Answer{t, b, b + t.size()};
    }
  }
  CheckExtraction(r, context);
  return r;
}

}  // namespace

RemoteBackend::RemoteBackend(std::string endpoint)
    : endpoint_(std::move(endpoint)) {
  while (!endpoint_.empty() && endpoint_.back() == '/') endpoint_.pop_back();
}

std::string RemoteBackend::Health(const BackendConfig& cfg) const {
  auto client = MakeClient(endpoint_, cfg);
  auto res = client.Get("/health");
  if (!res) {
    throw BackendUnavailable(endpoint_ + "/health: " +
                             httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw BackendUnavailable(endpoint_ + "/health: HTTP " +
                             std::to_string(res->status));
  }
  try {
    Json doc = Json::parse(res->body);
    if (doc.value("status", "") != "ok") {
      throw BackendUnavailable(endpoint_ + " reports status '" +
                               doc.value("status", "") + "'");
    }
    return doc.value("model", "");
  } catch (const Json::exception& e) {
    throw BackendUnavailable(endpoint_ + "/health: bad JSON: " + e.what());
  }
}

ExtractionResult RemoteBackend::Extract(const QaQuery& query,
                                        const BackendConfig& cfg) const {
  auto out = BatchExtract(std::span<const QaQuery>(&query, 1), cfg);
  const BatchOutcome& o = out.front();
  switch (o.status) {
    case BatchOutcome::Status::kOk:
      return o.result;
    case BatchOutcome::Status::kUnavailable:
      throw BackendUnavailable(o.error);
    case BatchOutcome::Status::kContractViolation:
      throw ContractViolation(o.error);
    case BatchOutcome::Status::kError:
      break;
  }
  throw Error(o.error);
}

std::vector<BatchOutcome> RemoteBackend::BatchExtract(
    std::span<const QaQuery> queries, const BackendConfig& cfg) const {
  std::vector<BatchOutcome> out(queries.size());
  const std::size_t batch = std::max<std::size_t>(cfg.batch_size, 1);
  auto client = MakeClient(endpoint_, cfg);

  for (std::size_t begin = 0; begin < queries.size(); begin += batch) {
    const std::size_t end = std::min(queries.size(), begin + batch);
    auto fail_all = [&](BatchOutcome::Status status, const std::string& msg) {
      for (std::size_t i = begin; i < end; ++i) {
        out[i] = {status, ExtractionResult::NoAnswer(), msg};
      }
    };

    // Wire ids are the caller's ids when they are unique, else positions.
    std::vector<std::string> ids;
    std::set<std::string> unique;
    for (std::size_t i = begin; i < end; ++i) {
      ids.push_back(queries[i].id);
      unique.insert(queries[i].id);
    }
    if (unique.size() != ids.size() || unique.contains("")) {
      for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = std::to_string(i);
    }

    Json body;
    body["items"] = Json::array();
    for (std::size_t i = begin; i < end; ++i) {
      body["items"].push_back({{"id", ids[i - begin]},
                               {"question", queries[i].question},
                               {"context", queries[i].context}});
    }
    const std::string payload = body.dump();

    httplib::Result res;
    for (int attempt = 0; attempt <= cfg.retries; ++attempt) {
      res = client.Post("/extract", payload, "application/json");
      if (res && res->status < 500) break;
    }
    if (!res) {
      fail_all(BatchOutcome::Status::kUnavailable,
               endpoint_ + "/extract: " + httplib::to_string(res.error()));
      continue;
    }
    if (res->status != 200) {
      fail_all(res->status >= 500 ? BatchOutcome::Status::kUnavailable
                                  : BatchOutcome::Status::kError,
               endpoint_ + "/extract: HTTP " + std::to_string(res->status));
      continue;
    }

    std::map<std::string, const Json*> by_id;
    Json doc;
    try {
      doc = Json::parse(res->body);
      for (const auto& item : doc.at("items")) {
        by_id[item.at("id").get<std::string>()] = &item;
      }
    } catch (const Json::exception& e) {
      fail_all(BatchOutcome::Status::kContractViolation,
               std::string("malformed /extract response: ") + e.what());
      continue;
    }
    for (std::size_t i = begin; i < end; ++i) {
      auto it = by_id.find(ids[i - begin]);
      if (it == by_id.end()) {
        out[i] = {BatchOutcome::Status::kContractViolation,
                  ExtractionResult::NoAnswer(),
                  "response lacks item '" + ids[i - begin] + "'"};
        continue;
      }
      try {
        out[i].result = DecodeItem(*it->second, queries[i].context);
      } catch (const ContractViolation& e) {
        out[i] = {BatchOutcome::Status::kContractViolation,
                  ExtractionResult::NoAnswer(), e.what()};
      } catch (const Json::exception& e) {
        out[i] = {BatchOutcome::Status::kContractViolation,
                  ExtractionResult::NoAnswer(), e.what()};
      }
    }
  }
  return out;
}

}  // namespace slotqa
