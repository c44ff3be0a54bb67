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

#include "emoji_attack/llm_oracle.h"

#include <unicode/uchar.h>

#include <cstdlib>
#include <set>
#include <stdexcept>

#include "emoji_attack/unicode.h"

namespace emoji_attack {
namespace {

std::vector<std::string> LowerWords(std::string_view text) {
  std::vector<std::string> words;
  std::string word;
  for (char32_t cp : unicode::DecodeUtf8(text)) {
    if (u_isalnum(static_cast<UChar32>(cp))) {
      unicode::AppendUtf8(
          static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp))), word);
    } else if (!word.empty()) {
      words.push_back(std::move(word));
      word.clear();
    }
  }
  if (!word.empty()) words.push_back(std::move(word));
  return words;
}

bool ContainsRun(const std::vector<std::string>& haystack,
                 const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < needle.size() && match; ++j) {
      match = haystack[i + j] == needle[j];
    }
    if (match) return true;
  }
  return false;
}

std::string JoinLabels(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) out += ", ";
    out += labels[i];
  }
  return out;
}

void ReplaceAll(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

}  // namespace

void ValidatePromptTemplate(std::string_view prompt_template,
                            const std::vector<std::string>& labels) {
  if (labels.size() < 2) {
    throw std::invalid_argument("LLM label set needs at least two labels");
  }
  if (prompt_template.find("{text}") == std::string_view::npos) {
    throw std::invalid_argument("prompt template lacks a {text} placeholder");
  }
  if (prompt_template.find("{labels}") != std::string_view::npos) return;
  for (const std::string& label : labels) {
    if (prompt_template.find(label) == std::string_view::npos) {
      throw std::invalid_argument("prompt template does not enumerate label '" +
                                  label + "'");
    }
  }
}

std::string RenderPrompt(std::string_view prompt_template,
                         std::string_view text,
                         const std::vector<std::string>& labels) {
  std::string out(prompt_template);
  ReplaceAll(out, "{labels}", JoinLabels(labels));
  ReplaceAll(out, "{text}", text);
  return out;
}

std::string ParseLabelReply(std::string_view reply,
                            const std::vector<std::string>& labels) {
  const std::vector<std::string> words = LowerWords(reply);
  std::set<std::string> hits;
  for (const std::string& label : labels) {
    if (ContainsRun(words, LowerWords(label))) hits.insert(label);
  }
  if (hits.size() != 1) {
    throw AbstentionError("reply matches " + std::to_string(hits.size()) +
                          " labels: '" + std::string(reply.substr(0, 120)) +
                          "'");
  }
  return *hits.begin();
}

nlohmann::json BuildChatRequest(const LlmOptions& options,
                                std::string_view text) {
  return nlohmann::json{
      {"model", options.model},
      {"temperature", 0},
      {"messages",
       nlohmann::json::array(
           {nlohmann::json{{"role", "user"},
                           {"content", RenderPrompt(options.prompt_template,
                                                    text, options.labels)}}})}};
}

namespace {

HttpOptions WithAuth(const LlmOptions& options) {
  HttpOptions http = options.http;
  std::optional<std::string> key = options.api_key;
  if (!key && !options.api_key_env.empty()) {
    if (const char* env = std::getenv(options.api_key_env.c_str())) key = env;
  }
  if (key && !key->empty()) {
    http.headers.emplace_back("Authorization", "Bearer " + *key);
  }
  return http;
}

}  // namespace

LlmClassifier::LlmClassifier(LlmOptions options)
    : options_(std::move(options)), transport_(WithAuth(options_)) {
  if (options_.model.empty()) throw std::invalid_argument("LLM model is empty");
  ValidatePromptTemplate(options_.prompt_template, options_.labels);
}

Prediction LlmClassifier::DoClassify(std::string_view text) {
  const nlohmann::json reply =
      transport_.PostJson(options_.path, BuildChatRequest(options_, text));
  const nlohmann::json* content = nullptr;
  if (reply.contains("choices") && reply["choices"].is_array() &&
      !reply["choices"].empty()) {
    const nlohmann::json& choice = reply["choices"][0];
    if (choice.is_object() && choice.contains("message") &&
        choice["message"].is_object() &&
        choice["message"].contains("content") &&
        choice["message"]["content"].is_string()) {
      content = &choice["message"]["content"];
    }
  }
  if (content == nullptr) {
    throw ProtocolError("chat completion lacks choices[0].message.content");
  }
  Prediction prediction;
  prediction.label =
      ParseLabelReply(content->get<std::string>(), options_.labels);
  return prediction;
}

}  // namespace emoji_attack
