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

#ifndef EMOJI_ATTACK_LLM_ORACLE_H_
#define EMOJI_ATTACK_LLM_ORACLE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emoji_attack/http_oracle.h"
#include "emoji_attack/oracle.h"

namespace emoji_attack {

// Stand-in prompt; {labels} expands to a comma-separated label list and
// {text} to the input.
inline constexpr std::string_view kDefaultLlmPrompt =
    "Classify the sentiment of the text below. Reply with exactly one word "
    "from this list: {labels}.\n\nText: {text}";

struct LlmOptions {
  HttpOptions http;  // endpoint is the API base, e.g. http://host:8000
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string prompt_template = std::string(kDefaultLlmPrompt);
  std::vector<std::string> labels;
  // Bearer key: api_key when set, else the named environment variable.
  std::optional<std::string> api_key;
  std::string api_key_env = "OPENAI_API_KEY";
};

// Throws std::invalid_argument unless the template has a {text} placeholder
// and either a {labels} placeholder or every label spelled out.
void ValidatePromptTemplate(std::string_view prompt_template,
                            const std::vector<std::string>& labels);

std::string RenderPrompt(std::string_view prompt_template,
                         std::string_view text,
                         const std::vector<std::string>& labels);

// Case-insensitive whole-token match of exactly one label in `reply`.
// Throws AbstentionError when zero or several labels match.
std::string ParseLabelReply(std::string_view reply,
                            const std::vector<std::string>& labels);

// OpenAI-style chat-completions request body for one classification.
nlohmann::json BuildChatRequest(const LlmOptions& options,
                                std::string_view text);

// Hard-label oracle backed by a chat-completions endpoint.
class LlmClassifier : public Oracle {
 public:
  explicit LlmClassifier(LlmOptions options);

  std::string name() const override { return options_.model; }
  bool hard_label() const override { return true; }

 protected:
  Prediction DoClassify(std::string_view text) override;

 private:
  LlmOptions options_;
  HttpTransport transport_;
};

}  // namespace emoji_attack

#endif  // EMOJI_ATTACK_LLM_ORACLE_H_
