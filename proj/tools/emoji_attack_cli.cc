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

// emoji-attack: command line front end.
//
//   emoji-attack lexicon [--parse TEXT]
//   emoji-attack attack --text TEXT --label LABEL [--policy P] [--topk K]
//   emoji-attack train --dataset D --out POLICY
//   emoji-attack bench --dataset D --topk 1,3,15,30 [--policy P]
//
// Every subcommand takes --config FILE.json whose keys are long flag names
// without the dashes; flags given on the command line win.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "emoji_attack/attack.h"
#include "emoji_attack/benchmark.h"
#include "emoji_attack/checkpoint.h"
#include "emoji_attack/dataset.h"
#include "emoji_attack/fixtures.h"
#include "emoji_attack/http_oracle.h"
#include "emoji_attack/lexicon.h"
#include "emoji_attack/llm_oracle.h"
#include "emoji_attack/pipeline.h"
#include "emoji_attack/ranking.h"
#include "emoji_attack/report.h"
#include "emoji_attack/sentiment.h"
#include "json.hpp"

#ifndef EMOJI_ATTACK_DATA_DIR
#define EMOJI_ATTACK_DATA_DIR "data"
#endif

namespace ea = emoji_attack;
using nlohmann::json;

namespace {

struct CommonFlags {
  std::string config;
  std::string lexicon = EMOJI_ATTACK_DATA_DIR "/lexicon.jsonl";
  std::string oracle = "builtin";
  std::string endpoint;
  std::string train_data = EMOJI_ATTACK_DATA_DIR "/fixture.jsonl";
  std::string model = "gpt-4o-mini";
  std::vector<std::string> labels;
  std::string label_map = "identity";
  std::string policy;
  int lmin = 1;
  int lmax = 3;
  double alpha_stealth = 0.5;
  bool hard_label = false;
  bool no_consistency = false;
  std::uint64_t seed = 0;
};

void AddCommonFlags(CLI::App& sub, CommonFlags& f) {
  sub.add_option("--config", f.config, "JSON file of flag defaults");
  sub.add_option("--lexicon", f.lexicon, "Emoji lexicon (JSONL)");
  sub.add_option("--oracle", f.oracle, "Target classifier")
      ->check(CLI::IsMember({"builtin", "http", "llm"}));
  sub.add_option("--endpoint", f.endpoint,
                 "http://host:port[/base] for http and llm oracles");
  sub.add_option("--train-data", f.train_data,
                 "Dataset the builtin naive Bayes oracle is fit on");
  sub.add_option("--model", f.model, "Model name sent to the llm oracle");
  sub.add_option("--labels", f.labels,
                 "Label set offered to the llm oracle (default: dataset labels)")
      ->delimiter(',');
  sub.add_option("--label-map", f.label_map,
                 "identity, goemotions, or a JSON file mapping labels to "
                 "positive/negative/neutral");
  sub.add_option("--policy", f.policy, "Trained policy checkpoint");
  sub.add_option("--lmin", f.lmin, "Minimum emoji sequence length");
  sub.add_option("--lmax", f.lmax, "Maximum emoji sequence length");
  sub.add_option("--alpha-stealth", f.alpha_stealth,
                 "Weight of sentiment consistency in stealthiness");
  sub.add_flag("--hard-label", f.hard_label,
               "Ignore probabilities even when the oracle returns them");
  sub.add_flag("--no-consistency", f.no_consistency,
               "Allow prefix/suffix sentiment to differ from the text");
  sub.add_option("--seed", f.seed, "Seed for candidate ranking and training");
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string ScalarToString(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  return value.dump();
}

// Fills options not given on the command line from the JSON config.
void ApplyConfig(CLI::App& sub, const std::string& path) {
  const json doc = json::parse(ReadFile(path));
  if (!doc.is_object()) throw std::runtime_error("config must be an object");
  for (const auto& [key, value] : doc.items()) {
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw std::runtime_error("config key '" + key +
                               "' is not an option of '" + sub.get_name() +
                               "'");
    }
    if (opt->count() > 0) continue;
    if (value.is_array()) {
      std::vector<std::string> items;
      for (const auto& v : value) items.push_back(ScalarToString(v));
      opt->add_result(items);
    } else {
      opt->add_result(ScalarToString(value));
    }
    opt->run_callback();
  }
}

ea::LabelSentimentMap MakeLabelMap(const std::string& spec) {
  if (spec == "identity") return ea::LabelSentimentMap::Identity();
  if (spec == "goemotions") return ea::LabelSentimentMap::GoEmotions();
  return ea::LabelSentimentMap::FromJson(ReadFile(spec));
}

ea::AttackConfig MakeAttackConfig(const CommonFlags& f, int top_k) {
  ea::AttackConfig cfg;
  cfg.top_k = top_k;
  cfg.space = {f.lmin, f.lmax};
  cfg.alpha_stealth = f.alpha_stealth;
  cfg.hard_label_mode = f.hard_label;
  cfg.require_consistency = !f.no_consistency;
  cfg.Validate();
  return cfg;
}

std::unique_ptr<ea::Oracle> MakeOracle(const CommonFlags& f,
                                       const ea::EmojiLexicon& lexicon,
                                       std::vector<std::string> labels) {
  if (f.oracle == "builtin") {
    const ea::Dataset train = ea::LoadDataset(f.train_data);
    return std::make_unique<ea::NaiveBayesClassifier>(
        ea::TrainBuiltinOracle(train, lexicon));
  }
  if (f.endpoint.empty()) {
    throw std::runtime_error("--endpoint is required for --oracle " + f.oracle);
  }
  if (f.oracle == "http") {
    auto oracle =
        std::make_unique<ea::HttpClassifier>(ea::HttpOptions{f.endpoint});
    try {
      oracle->FetchHealth();
    } catch (const std::exception& e) {
      std::cerr << "warning: /health failed: " << e.what() << "\n";
    }
    return oracle;
  }
  ea::LlmOptions options;
  options.http.endpoint = f.endpoint;
  options.model = f.model;
  options.labels = f.labels.empty() ? std::move(labels) : f.labels;
  if (options.labels.size() < 2) {
    throw std::runtime_error("the llm oracle needs at least two --labels");
  }
  return std::make_unique<ea::LlmClassifier>(std::move(options));
}

// Policy ranking when a checkpoint is given, uniform-random otherwise.
struct Ranker {
  std::optional<ea::LoadedPolicy> loaded;
  std::unique_ptr<ea::CandidateSource> source;
};

Ranker MakeRanker(const CommonFlags& f, const ea::EmojiLexicon& lexicon,
                  const ea::AttackConfig& cfg) {
  Ranker r;
  if (f.policy.empty()) {
    r.source = std::make_unique<ea::RandomRanker>(lexicon, cfg);
  } else {
    r.loaded.emplace(ea::LoadPolicy(f.policy, lexicon));
    r.source =
        std::make_unique<ea::PolicyRanker>(r.loaded->policy, lexicon, cfg);
  }
  return r;
}

std::vector<int> ParseTopK(const std::string& list) {
  std::vector<int> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const int k = std::stoi(item, &used);
    if (used != item.size() || k < 1) {
      throw std::runtime_error("bad --topk entry '" + item + "'");
    }
    out.push_back(k);
  }
  if (out.empty()) throw std::runtime_error("--topk is empty");
  return out;
}

int RunLexicon(const CommonFlags& f, const std::string& parse_text) {
  const auto lexicon = ea::LoadLexiconFile(f.lexicon);
  if (!parse_text.empty()) {
    for (const ea::TokenMatch& m : ea::ParseEmojiTokens(parse_text, lexicon)) {
      const ea::EmojiToken& t = lexicon.token(m.id);
      std::cout << m.offset << "\t" << t.surface << "\t"
                << ea::ToString(t.sentiment) << "\n";
    }
    return 0;
  }
  std::size_t counts[3][2] = {};
  for (const ea::EmojiToken& t : lexicon.tokens()) {
    ++counts[static_cast<int>(t.sentiment)]
            [t.kind == ea::TokenKind::kUnicodeEmoji ? 0 : 1];
  }
  std::cout << "tokens: " << lexicon.size() << "\n"
            << "fingerprint: " << lexicon.Fingerprint() << "\n";
  for (ea::Sentiment s : ea::kAllSentiments) {
    const auto* c = counts[static_cast<int>(s)];
    std::cout << ea::ToString(s) << ": " << c[0] << " emoji, " << c[1]
              << " emoticons\n";
  }
  return 0;
}

int RunAttack(const CommonFlags& f, const std::string& text,
              const std::string& label, int top_k) {
  const auto lexicon = ea::LoadLexiconFile(f.lexicon);
  const auto label_map = MakeLabelMap(f.label_map);
  const ea::AttackConfig cfg = MakeAttackConfig(f, top_k);
  std::vector<std::string> labels;
  for (const auto& [name, _] : label_map.entries()) labels.push_back(name);
  auto oracle = MakeOracle(f, lexicon, labels);
  Ranker ranker = MakeRanker(f, lexicon, cfg);

  const ea::AttackTarget target{text, label, label_map.Coarsen(label)};
  const auto ranked =
      ranker.source->Rank(target, static_cast<std::size_t>(top_k), f.seed);
  const ea::AttackResult result =
      ea::Attack(target, ranked.pairs, *oracle, cfg, lexicon);

  json out;
  out["success"] = result.success;
  out["queries"] = result.queries;
  out["original_label"] = result.original_label;
  out["flipped_label"] =
      result.flipped_label ? json(*result.flipped_label) : json();
  out["adversarial_text"] =
      result.adversarial_text ? json(*result.adversarial_text) : json();
  if (result.pair) {
    out["prefix"] = ea::JoinSurfaces(result.pair->prefix, lexicon);
    out["suffix"] = ea::JoinSurfaces(result.pair->suffix, lexicon);
  }
  out["loss"] = result.loss ? json(*result.loss) : json();
  out["stealth"] = result.stealth ? json(*result.stealth) : json();
  out["candidate_source"] = ranker.source->name();
  std::cout << out.dump(2) << "\n";
  return result.success ? 0 : 2;
}

int RunTrain(const CommonFlags& f, const std::string& dataset_path,
             const std::string& pretrain_path, ea::TrainConfig tcfg,
             const std::string& out_path) {
  const auto lexicon = ea::LoadLexiconFile(f.lexicon);
  const auto dataset = ea::LoadDataset(dataset_path);
  const auto label_map = MakeLabelMap(f.label_map);
  const ea::AttackConfig cfg = MakeAttackConfig(f, 1);
  auto oracle = MakeOracle(f, lexicon, dataset.labels);
  tcfg.seed = f.seed;

  // Pretraining sequences are labeled by coarse sentiment.
  ea::Dataset coarse = dataset;
  for (ea::Example& ex : coarse.examples) {
    ex.label = std::string(ea::ToString(label_map.Coarsen(ex.label)));
  }
  const auto corpus =
      pretrain_path.empty()
          ? ea::GeneratePretrainCorpus(coarse, lexicon, cfg.space, f.seed)
          : ea::LoadPretrainCorpus(pretrain_path, lexicon);
  const auto targets = ea::ToTargets(dataset, label_map);
  const ea::TrainedPolicy trained =
      ea::TrainTwoPhase(targets, corpus, *oracle, lexicon, tcfg, cfg);
  ea::SavePolicy(trained.policy, lexicon,
                 {f.seed, tcfg.pretrain_epochs, tcfg.epochs}, out_path);

  const auto& sm = trained.rl.trace.smoothed;
  std::cout << "pretrain loss " << trained.pretrain.loss_trace.front()
            << " -> " << trained.pretrain.loss_trace.back() << "\n"
            << "rl steps " << sm.size() << ", oracle queries "
            << trained.rl.queries << "\n";
  if (!sm.empty()) {
    const std::size_t q = std::max<std::size_t>(sm.size() / 4, 1);
    double first = 0.0, last = 0.0;
    for (std::size_t i = 0; i < q; ++i) {
      first += sm[i];
      last += sm[sm.size() - q + i];
    }
    std::cout << "smoothed reward, first quartile " << first / q
              << ", last quartile " << last / q << "\n";
  }
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int RunBench(const CommonFlags& f, const std::string& dataset_path,
             const std::string& topk, std::size_t jobs,
             const std::string& format, const std::string& out_path,
             bool no_timing) {
  const auto lexicon = ea::LoadLexiconFile(f.lexicon);
  const auto dataset = ea::LoadDataset(dataset_path);
  ea::BenchmarkOptions options;
  options.seed = f.seed;
  options.jobs = jobs;
  options.label_map = MakeLabelMap(f.label_map);
  int max_k = 0;
  for (int k : ParseTopK(topk)) {
    options.configs.push_back(MakeAttackConfig(f, k));
    max_k = std::max(max_k, k);
  }
  auto oracle = MakeOracle(f, lexicon, dataset.labels);
  Ranker ranker = MakeRanker(f, lexicon, MakeAttackConfig(f, max_k));
  const ea::BenchmarkReport report =
      ea::RunBenchmark(dataset, *oracle, *ranker.source, lexicon, options);

  const ea::ReportFormat fmt = ea::ParseReportFormat(format);
  ea::RenderOptions render;
  render.include_timing = !no_timing;
  if (out_path.empty() || out_path == "-") {
    std::cout << ea::RenderReport(report, fmt, render);
  } else {
    ea::EmitReport(report, fmt, out_path, render);
  }
  if (!report.complete) {
    std::cerr << "incomplete run: " << report.error << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-word-perturbation emoji attacks on text classifiers"};
  app.require_subcommand(1);

  CommonFlags flags;

  CLI::App* lexicon_cmd = app.add_subcommand("lexicon", "Inspect or validate a lexicon");
  std::string parse_text;
  AddCommonFlags(*lexicon_cmd, flags);
  lexicon_cmd->add_option("--parse", parse_text, "Print the emoji found in TEXT");

  CLI::App* attack_cmd = app.add_subcommand("attack", "Attack a single text");
  std::string text, label;
  int attack_k = 30;
  AddCommonFlags(*attack_cmd, flags);
  attack_cmd->add_option("--text", text, "Input text")->required();
  attack_cmd->add_option("--label", label, "Reference label")->required();
  attack_cmd->add_option("--topk", attack_k, "Query budget");

  CLI::App* train_cmd = app.add_subcommand("train", "Two-phase policy training");
  std::string train_dataset = EMOJI_ATTACK_DATA_DIR "/fixture.jsonl";
  std::string pretrain_path, train_out;
  ea::TrainConfig tcfg;
  AddCommonFlags(*train_cmd, flags);
  train_cmd->add_option("--dataset", train_dataset, "Training texts (JSONL)");
  train_cmd->add_option("--pretrain", pretrain_path,
                        "Supervised corpus (default: sampled from the dataset)");
  train_cmd->add_option("--out", train_out, "Checkpoint path")->required();
  train_cmd->add_option("--epochs", tcfg.epochs, "REINFORCE epochs");
  train_cmd->add_option("--pretrain-epochs", tcfg.pretrain_epochs,
                        "Supervised epochs");
  train_cmd->add_option("--learning-rate", tcfg.learning_rate, "RL step size");
  train_cmd->add_option("--pretrain-learning-rate", tcfg.pretrain_learning_rate,
                        "Supervised step size");
  train_cmd->add_option("--batch-size", tcfg.batch_size, "Samples per update");
  train_cmd->add_option("--alpha-reward", tcfg.alpha_reward, "Attack reward weight");
  train_cmd->add_option("--beta-reward", tcfg.beta_reward, "Diversity reward weight");
  train_cmd->add_option("--lambda1", tcfg.lambda1, "Adversarial loss weight");
  train_cmd->add_option("--lambda2", tcfg.lambda2, "Diversity loss weight");
  train_cmd->add_option("--smooth-k", tcfg.smooth_k, "Reward smoothing window");
  train_cmd->add_option("--mask-beta", tcfg.mask_beta, "Modality mask value");

  CLI::App* bench_cmd = app.add_subcommand("bench", "Benchmark over a dataset");
  std::string bench_dataset = EMOJI_ATTACK_DATA_DIR "/fixture.jsonl";
  std::string topk = "1,3,15,30", format = "markdown", bench_out;
  std::size_t jobs = 1;
  bool no_timing = false;
  AddCommonFlags(*bench_cmd, flags);
  bench_cmd->add_option("--dataset", bench_dataset, "Dataset (JSONL)");
  bench_cmd->add_option("--topk", topk, "Comma-separated search sizes");
  bench_cmd->add_option("--jobs", jobs, "Examples attacked concurrently")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--format", format, "markdown, csv or json")
      ->check(CLI::IsMember({"markdown", "md", "csv", "json"}));
  bench_cmd->add_option("--out", bench_out, "Report path (default stdout)");
  bench_cmd->add_flag("--no-timing", no_timing,
                      "Omit wall-clock columns for byte-stable output");

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!flags.config.empty()) ApplyConfig(*active, flags.config);
    if (active == lexicon_cmd) return RunLexicon(flags, parse_text);
    if (active == attack_cmd) return RunAttack(flags, text, label, attack_k);
    if (active == train_cmd) {
      tcfg.Validate();
      return RunTrain(flags, train_dataset, pretrain_path, tcfg, train_out);
    }
    return RunBench(flags, bench_dataset, topk, jobs, format, bench_out,
                    no_timing);
  } catch (const std::exception& e) {
    std::cerr << "emoji-attack: " << e.what() << "\n";
    return 1;
  }
}
