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

#include "emoji_attack/http_oracle.h"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <stdexcept>
#include <thread>

#include "httplib.h"

namespace emoji_attack {
namespace {

constexpr std::size_t kExcerptBytes = 200;

std::string Excerpt(std::string_view body) {
  if (body.size() <= kExcerptBytes) return std::string(body);
  return std::string(body.substr(0, kExcerptBytes)) + "...";
}

struct ParsedEndpoint {
  std::string scheme_host_port;
  std::string base_path;
};

ParsedEndpoint ParseEndpoint(const std::string& endpoint) {
  constexpr std::string_view kScheme = "http://";
  if (endpoint.rfind(kScheme, 0) != 0) {
    throw std::invalid_argument("endpoint '" + endpoint +
                                "' must start with http://");
  }
  const std::size_t slash = endpoint.find('/', kScheme.size());
  ParsedEndpoint parsed;
  if (slash == std::string::npos) {
    parsed.scheme_host_port = endpoint;
  } else {
    parsed.scheme_host_port = endpoint.substr(0, slash);
    parsed.base_path = endpoint.substr(slash);
    while (!parsed.base_path.empty() && parsed.base_path.back() == '/') {
      parsed.base_path.pop_back();
    }
  }
  if (parsed.scheme_host_port.size() == kScheme.size()) {
    throw std::invalid_argument("endpoint '" + endpoint + "' has no host");
  }
  return parsed;
}

}  // namespace

class HttpTransport::Impl {
 public:
  explicit Impl(const HttpOptions& options)
      : options_(options), endpoint_(ParseEndpoint(options.endpoint)) {
    if (options_.max_concurrency == 0) {
      throw std::invalid_argument("max_concurrency must be >= 1");
    }
    if (options_.retries < 0) throw std::invalid_argument("retries must be >= 0");
  }

  nlohmann::json Send(bool post, std::string_view path,
                      const nlohmann::json* body) {
    const std::string full_path = endpoint_.base_path + std::string(path);
    const std::string payload = body ? body->dump() : std::string();
    httplib::Headers headers;
    for (const auto& [k, v] : options_.headers) headers.emplace(k, v);

    auto delay = options_.backoff;
    std::string last_failure;
    for (int attempt = 0; attempt <= options_.retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(delay);
        delay = std::chrono::milliseconds(static_cast<long long>(
            std::llround(static_cast<double>(delay.count()) *
                         options_.backoff_multiplier)));
      }
      attempts_.fetch_add(1, std::memory_order_relaxed);
      Lease lease(*this);
      httplib::Result result =
          post ? lease.client().Post(full_path, headers, payload,
                                     "application/json")
               : lease.client().Get(full_path, headers);
      if (!result) {
        last_failure = "transport error: " + httplib::to_string(result.error());
        lease.discard();
        continue;
      }
      const int status = result->status;
      if (status == 200) {
        try {
          return nlohmann::json::parse(result->body);
        } catch (const nlohmann::json::parse_error&) {
          throw ProtocolError("response from " + full_path +
                              " is not JSON: " + Excerpt(result->body));
        }
      }
      last_failure = "HTTP " + std::to_string(status) + " from " + full_path +
                     ": " + Excerpt(result->body);
      if (status != 429 && status < 500) throw ProtocolError(last_failure);
      if (attempt == options_.retries) throw ProtocolError(last_failure);
    }
    throw OracleError("request to " + options_.endpoint + full_path +
                      " failed after " + std::to_string(options_.retries + 1) +
                      " attempts (" + last_failure + ")");
  }

  std::size_t attempts() const {
    return attempts_.load(std::memory_order_relaxed);
  }

 private:
  // Exclusive use of one pooled client; blocks while the pool is exhausted.
  class Lease {
   public:
    explicit Lease(Impl& impl) : impl_(impl) { client_ = impl_.Acquire(); }
    ~Lease() { impl_.Release(std::move(client_)); }
    httplib::Client& client() { return *client_; }
    // Drops a client whose connection may be broken.
    void discard() { client_ = impl_.MakeClient(); }

   private:
    Impl& impl_;
    std::unique_ptr<httplib::Client> client_;
  };

  std::unique_ptr<httplib::Client> MakeClient() {
    auto client = std::make_unique<httplib::Client>(endpoint_.scheme_host_port);
    client->set_connection_timeout(options_.timeout);
    client->set_read_timeout(options_.timeout);
    client->set_write_timeout(options_.timeout);
    client->set_keep_alive(true);
    return client;
  }

  std::unique_ptr<httplib::Client> Acquire() {
    std::unique_lock<std::mutex> lock(mu_);
    cv_.wait(lock, [&] {
      return !idle_.empty() || created_ < options_.max_concurrency;
    });
    if (!idle_.empty()) {
      auto client = std::move(idle_.back());
      idle_.pop_back();
      return client;
    }
    ++created_;
    lock.unlock();
    return MakeClient();
  }

  void Release(std::unique_ptr<httplib::Client> client) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      idle_.push_back(std::move(client));
    }
    cv_.notify_one();
  }

  HttpOptions options_;
  ParsedEndpoint endpoint_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::vector<std::unique_ptr<httplib::Client>> idle_;
  std::size_t created_ = 0;
  std::atomic<std::size_t> attempts_{0};
};

HttpTransport::HttpTransport(HttpOptions options)
    : options_(std::move(options)), impl_(std::make_unique<Impl>(options_)) {}

HttpTransport::~HttpTransport() = default;

nlohmann::json HttpTransport::PostJson(std::string_view path,
                                       const nlohmann::json& body) {
  return impl_->Send(true, path, &body);
}

nlohmann::json HttpTransport::GetJson(std::string_view path) {
  return impl_->Send(false, path, nullptr);
}

std::size_t HttpTransport::attempts() const { return impl_->attempts(); }

std::string EncodeClassifyRequest(std::string_view text) {
  return nlohmann::json{{"text", std::string(text)}}.dump();
}

namespace {

Prediction PredictionFromJson(const nlohmann::json& doc,
                              std::string_view raw) {
  if (!doc.is_object() || !doc.contains("label") || !doc["label"].is_string()) {
    throw ProtocolError("classify response lacks a string label: " +
                        Excerpt(raw));
  }
  Prediction prediction;
  prediction.label = doc["label"].get<std::string>();
  if (doc.contains("probs") && !doc["probs"].is_null()) {
    const nlohmann::json& probs = doc["probs"];
    if (!probs.is_object()) {
      throw ProtocolError("classify response probs must be an object: " +
                          Excerpt(raw));
    }
    ProbabilityMap map;
    for (const auto& [label, value] : probs.items()) {
      if (!value.is_number()) {
        throw ProtocolError("probability for '" + label +
                            "' is not a number: " + Excerpt(raw));
      }
      map.emplace(label, value.get<double>());
    }
    prediction.probs = std::move(map);
  }
  ValidatePrediction(prediction);
  return prediction;
}

}  // namespace

Prediction ParseClassifyResponse(std::string_view body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error&) {
    throw ProtocolError("classify response is not JSON: " + Excerpt(body));
  }
  return PredictionFromJson(doc, body);
}

HealthInfo ParseHealthResponse(std::string_view body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error&) {
    throw ProtocolError("health response is not JSON: " + Excerpt(body));
  }
  if (!doc.is_object() || !doc.contains("model") || !doc["model"].is_string() ||
      !doc.contains("labels") || !doc["labels"].is_array()) {
    throw ProtocolError("health response needs model and labels: " +
                        Excerpt(body));
  }
  HealthInfo info;
  info.model = doc["model"].get<std::string>();
  for (const auto& label : doc["labels"]) {
    if (!label.is_string()) {
      throw ProtocolError("health labels must be strings: " + Excerpt(body));
    }
    info.labels.push_back(label.get<std::string>());
  }
  return info;
}

HttpClassifier::HttpClassifier(HttpOptions options)
    : transport_(std::move(options)) {}

HealthInfo HttpClassifier::FetchHealth() {
  const nlohmann::json doc = transport_.GetJson("/health");
  HealthInfo info = ParseHealthResponse(doc.dump());
  std::lock_guard<std::mutex> lock(name_mu_);
  model_name_ = info.model;
  return info;
}

std::string HttpClassifier::name() const {
  std::lock_guard<std::mutex> lock(name_mu_);
  return model_name_.value_or(transport_.options().endpoint);
}

Prediction HttpClassifier::DoClassify(std::string_view text) {
  const nlohmann::json doc =
      transport_.PostJson("/classify", nlohmann::json{{"text", std::string(text)}});
  return PredictionFromJson(doc, doc.dump());
}

}  // namespace emoji_attack
