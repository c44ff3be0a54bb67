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

#include "emoji_attack/checkpoint.h"

#include <fstream>
#include <sstream>

namespace emoji_attack {
namespace {

constexpr std::string_view kFormat = "emoji-attack-policy";

nlohmann::json MatrixToJson(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

void MatrixFromJson(const nlohmann::json& rows, Eigen::MatrixXd& out,
                    std::string_view field) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != out.rows()) {
    throw CheckpointError("checkpoint field '" + std::string(field) +
                          "' has the wrong number of rows");
  }
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    const nlohmann::json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != out.cols()) {
      throw CheckpointError("checkpoint field '" + std::string(field) +
                            "' has a malformed row");
    }
    for (Eigen::Index c = 0; c < out.cols(); ++c) {
      out(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
}

}  // namespace

nlohmann::json PolicyToJson(const Policy& policy, const EmojiLexicon& lexicon,
                            const TrainingMetadata& metadata) {
  nlohmann::json b = nlohmann::json::array();
  for (Eigen::Index i = 0; i < policy.elp_b().size(); ++i) {
    b.push_back(policy.elp_b()[i]);
  }
  return nlohmann::json{
      {"format", kFormat},
      {"version", kCheckpointVersion},
      {"space",
       {{"l_min", policy.space().l_min}, {"l_max", policy.space().l_max}}},
      {"vocabulary_hash", lexicon.Fingerprint()},
      {"num_emoji", policy.num_emoji()},
      {"theta", MatrixToJson(policy.theta())},
      {"elp_w", MatrixToJson(policy.elp_w())},
      {"elp_b", std::move(b)},
      {"training",
       {{"seed", metadata.seed},
        {"pretrain_epochs", metadata.pretrain_epochs},
        {"epochs", metadata.epochs}}}};
}

void SavePolicy(const Policy& policy, const EmojiLexicon& lexicon,
                const TrainingMetadata& metadata, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError("cannot write checkpoint '" + path + "'");
  out << PolicyToJson(policy, lexicon, metadata).dump() << '\n';
  if (!out) throw CheckpointError("failed writing checkpoint '" + path + "'");
}

LoadedPolicy PolicyFromJson(const nlohmann::json& doc,
                            const EmojiLexicon& lexicon) {
  try {
    if (!doc.is_object() || doc.value("format", "") != kFormat) {
      throw CheckpointError("not an emoji-attack policy checkpoint");
    }
    const int version = doc.at("version").get<int>();
    if (version != kCheckpointVersion) {
      throw CheckpointError("unsupported checkpoint version " +
                            std::to_string(version));
    }
    const std::string hash = doc.at("vocabulary_hash").get<std::string>();
    if (hash != lexicon.Fingerprint()) {
      throw CheckpointError("checkpoint vocabulary hash " + hash +
                            " does not match the active lexicon (" +
                            lexicon.Fingerprint() + ")");
    }
    const auto num_emoji = doc.at("num_emoji").get<std::size_t>();
    if (num_emoji != lexicon.size()) {
      throw CheckpointError("checkpoint alphabet size mismatch");
    }
    SequenceSpaceConfig space{doc.at("space").at("l_min").get<int>(),
                              doc.at("space").at("l_max").get<int>()};
    LoadedPolicy loaded{Policy(num_emoji, space), {}};
    MatrixFromJson(doc.at("theta"), loaded.policy.theta(), "theta");
    MatrixFromJson(doc.at("elp_w"), loaded.policy.elp_w(), "elp_w");
    const nlohmann::json& b = doc.at("elp_b");
    if (!b.is_array() ||
        static_cast<Eigen::Index>(b.size()) != loaded.policy.elp_b().size()) {
      throw CheckpointError("checkpoint field 'elp_b' has the wrong size");
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      loaded.policy.elp_b()[static_cast<Eigen::Index>(i)] = b[i].get<double>();
    }
    const nlohmann::json& training = doc.at("training");
    loaded.metadata.seed = training.at("seed").get<std::uint64_t>();
    loaded.metadata.pretrain_epochs = training.at("pretrain_epochs").get<int>();
    loaded.metadata.epochs = training.at("epochs").get<int>();
    return loaded;
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("malformed checkpoint: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw CheckpointError(std::string("invalid checkpoint: ") + e.what());
  }
}

LoadedPolicy LoadPolicy(const std::string& path, const EmojiLexicon& lexicon) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw CheckpointError("checkpoint '" + path + "' is not JSON: " + e.what());
  }
  return PolicyFromJson(doc, lexicon);
}

}  // namespace emoji_attack
