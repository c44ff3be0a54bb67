//
// Copyright 2026 The Emoji Attack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef EMOJI_ATTACK_HTTP_ORACLE_H_
#define EMOJI_ATTACK_HTTP_ORACLE_H_

#include <chrono>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emoji_attack/oracle.h"
#include "json.hpp"

namespace emoji_attack {

struct HttpOptions {
  std::string endpoint;  // http://host[:port][/base]
  std::chrono::milliseconds timeout{10000};
  int retries = 2;  // extra attempts after the first
  std::chrono::milliseconds backoff{100};
  double backoff_multiplier = 2.0;
  std::size_t max_concurrency = 4;
  std::vector<std::pair<std::string, std::string>> headers;
};

// Pooled JSON-over-HTTP client. Transport failures, 429 and 5xx responses are
// retried with exponential backoff; other non-200 statuses fail immediately
// with a ProtocolError carrying a body excerpt. At most max_concurrency
// requests are in flight at once.
class HttpTransport {
 public:
  explicit HttpTransport(HttpOptions options);
  ~HttpTransport();

  HttpTransport(const HttpTransport&) = delete;
  HttpTransport& operator=(const HttpTransport&) = delete;

  nlohmann::json PostJson(std::string_view path, const nlohmann::json& body);
  nlohmann::json GetJson(std::string_view path);

  const HttpOptions& options() const { return options_; }
  // Attempts made so far, including retries.
  std::size_t attempts() const;

 private:
  class Impl;
  HttpOptions options_;
  std::unique_ptr<Impl> impl_;
};

// Decodes a /classify response body:
//   {"label": "<string>", "probs": {"<label>": <float>, ...}}  (probs optional)
// Throws ProtocolError on malformed JSON, a missing label, or probs that are
// not a distribution with `label` as argmax.
Prediction ParseClassifyResponse(std::string_view body);

// Encodes the /classify request body {"text": "<string>"}.
std::string EncodeClassifyRequest(std::string_view text);

struct HealthInfo {
  std::string model;
  std::vector<std::string> labels;
};

HealthInfo ParseHealthResponse(std::string_view body);

// Remote classifier speaking the /classify wire protocol.
class HttpClassifier : public Oracle {
 public:
  explicit HttpClassifier(HttpOptions options);

  // GET /health; caches the model identifier for name().
  HealthInfo FetchHealth();

  std::string name() const override;
  std::size_t transport_attempts() const { return transport_.attempts(); }

 protected:
  Prediction DoClassify(std::string_view text) override;

 private:
  HttpTransport transport_;
  mutable std::mutex name_mu_;
  std::optional<std::string> model_name_;
};

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_HTTP_ORACLE_H_
