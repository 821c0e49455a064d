// Copyright 2026 The mdscorpus Authors.
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

#include "cli.h"

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mdscorpus/centroid.h"
#include "mdscorpus/corpus_io.h"
#include "mdscorpus/errors.h"
#include "mdscorpus/eval.h"
#include "mdscorpus/pipeline.h"
#include "mdscorpus/preprocess.h"
#include "mdscorpus/rouge.h"
#include "mdscorpus/text.h"

namespace mdscorpus {
namespace {

namespace fs = std::filesystem;

constexpr const char* kConfigEnv = "MDSCORPUS_CONFIG";

// Flags shared by build and select that override config-file values.
struct PipelineFlags {
  std::string config_path;
  std::optional<std::string> mode;
  std::optional<std::size_t> min_docs;
  std::optional<std::size_t> min_summary_tokens;
  std::optional<std::size_t> max_source_tokens;
  std::optional<double> primera_ratio;
  std::optional<std::string> match_basis;
  std::optional<std::string> entity_provider;
  std::vector<std::string> boilerplate_files;
  bool no_default_boilerplate = false;
  std::optional<std::string> mask_token;
  std::optional<std::string> separator;
  std::optional<std::string> separator_style;
};

void AddConfigFlags(CLI::App* cmd, PipelineFlags& f) {
  cmd->add_option("--config", f.config_path,
                  "key = value config file (default: $MDSCORPUS_CONFIG)");
  cmd->add_option("--match-basis", f.match_basis,
                  "match score basis: fmeasure or recall");
  cmd->add_option("--max-source-tokens", f.max_source_tokens,
                  "whitespace-token budget shared by a cluster's documents");
  cmd->add_option("--boilerplate-file", f.boilerplate_files,
                  "extra boilerplate pattern file (repeatable)");
  cmd->add_flag("--no-default-boilerplate", f.no_default_boilerplate,
                "do not load the built-in boilerplate patterns");
}

void AddBuildFlags(CLI::App* cmd, PipelineFlags& f) {
  cmd->add_option("--mode", f.mode, "centrum or primera");
  cmd->add_option("--min-docs", f.min_docs,
                  "minimum documents per cluster (default 3, primera 2)");
  cmd->add_option("--min-summary-tokens", f.min_summary_tokens,
                  "minimum centroid length in whitespace tokens (default 250)");
  cmd->add_option("--primera-ratio", f.primera_ratio,
                  "summary budget as a fraction of sentences (default 0.30)");
  cmd->add_option("--entity-provider", f.entity_provider,
                  "heuristic or external");
  cmd->add_option("--mask-token", f.mask_token, "sentence mask literal");
  cmd->add_option("--separator", f.separator, "document separator literal");
  cmd->add_option("--separator-style", f.separator_style,
                  "between or trailing");
}

// Defaults, then the config file, then flags.
PipelineConfig ResolveConfig(const PipelineFlags& f) {
  PipelineConfig config;
  std::string path = f.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv); env != nullptr) path = env;
  }
  if (!path.empty()) {
    if (!fs::is_regular_file(path)) {
      throw ConfigError("config file not found: " + path);
    }
    ApplyConfigFile(path, config);
  }
  if (f.mode) config.mode = ParseBuildMode(*f.mode);
  if (f.min_docs) config.min_docs_per_cluster = *f.min_docs;
  if (f.min_summary_tokens) config.min_summary_tokens = *f.min_summary_tokens;
  if (f.max_source_tokens) config.max_source_tokens = *f.max_source_tokens;
  if (f.primera_ratio) config.primera_ratio = *f.primera_ratio;
  if (f.match_basis) config.match_basis = ParseMatchBasis(*f.match_basis);
  if (f.entity_provider) {
    config.entity_provider = ParseEntityProvider(*f.entity_provider);
  }
  for (const std::string& file : f.boilerplate_files) {
    if (!fs::is_regular_file(file)) {
      throw ConfigError("boilerplate file not found: " + file);
    }
    for (std::string& p : ReadPatternFile(file)) {
      config.extra_boilerplate.push_back(std::move(p));
    }
  }
  if (f.no_default_boilerplate) config.default_boilerplate = false;
  if (f.mask_token) config.mask_token = *f.mask_token;
  if (f.separator) config.separator = *f.separator;
  if (f.separator_style) {
    try {
      config.separator_style = ParseSeparatorStyle(*f.separator_style);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  config.Validate();
  return config;
}

void RequireInput(const std::string& path, const char* what) {
  if (!fs::is_regular_file(path)) {
    throw ConfigError(std::string(what) + " not found: " + path);
  }
}

std::string ReadWholeFile(const std::string& path) {
  RequireInput(path, "file");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string Dump(const nlohmann::json& j, int indent = 2) {
  return j.dump(indent, ' ', false, nlohmann::json::error_handler_t::replace);
}

struct BuildArgs {
  PipelineFlags flags;
  std::string input;
  std::string output;
  std::string report;
  std::size_t workers = 1;
  bool json = false;
};

int RunBuild(const BuildArgs& a, std::ostream& out, std::ostream& err) {
  RequireInput(a.input, "input");
  const PipelineConfig config = ResolveConfig(a.flags);
  RunOptions options;
  options.workers = a.workers;
  const RunReport report = RunPipeline(a.input, a.output, config, options);
  const std::string report_path =
      a.report.empty() ? a.output + ".report.json" : a.report;
  WriteFileAtomically(report_path, Dump(report.ToJson()) + "\n");
  if (a.json) {
    out << Dump(report.ToJson()) << "\n";
  } else {
    out << report.ToText();
  }
  err << "wrote " << report.clusters_retained << " examples to " << a.output
      << ", report " << report_path << "\n";
  return kExitOk;
}

struct SelectArgs {
  PipelineFlags flags;
  std::string input;
  std::string cluster_id;
  bool raw = false;
  bool json = false;
};

int RunSelect(const SelectArgs& a, std::ostream& out, std::ostream& err) {
  RequireInput(a.input, "input");
  const PipelineConfig config = ResolveConfig(a.flags);
  std::optional<Cluster> found;
  ClusterReader reader(a.input);
  while (auto record = reader.Next()) {
    if (record->cluster && record->cluster->cluster_id == a.cluster_id) {
      found = std::move(record->cluster);
      break;
    }
  }
  if (!found) {
    err << "error: cluster \"" << a.cluster_id << "\" not found in " << a.input
        << "\n";
    return kExitFailure;
  }
  Cluster cluster;
  if (a.raw) {
    cluster = std::move(*found);
  } else {
    const BoilerplateCleaner cleaner(config.BoilerplatePatterns());
    cluster.cluster_id = found->cluster_id;
    for (const Document& d : found->documents) {
      Document c = cleaner.Clean(d);
      if (CountWhitespaceTokens(c.text) > 0) {
        cluster.documents.push_back(std::move(c));
      }
    }
    cluster = ProportionalTruncate(cluster, config.max_source_tokens);
  }
  if (cluster.size() < 2) {
    err << "error: cluster \"" << a.cluster_id << "\" has " << cluster.size()
        << " document(s); at least 2 are needed to score\n";
    return kExitFailure;
  }
  const std::size_t min_docs = PipelineConfig{}.EffectiveMinDocs();
  const std::size_t gate_docs = config.min_docs_per_cluster.value_or(min_docs);
  if (cluster.size() < gate_docs) {
    err << "warning: cluster has " << cluster.size()
        << " documents; the build gate (minimum " << gate_docs
        << ") would reject it\n";
  }
  const CentroidResult result =
      SelectCentroid(cluster, CentroidOptions{config.match_basis, {}});
  const Document& centroid = cluster.documents[result.centroid_index];
  const std::size_t centroid_tokens = CountWhitespaceTokens(centroid.text);
  if (cluster.size() >= gate_docs &&
      centroid_tokens < config.min_summary_tokens) {
    err << "warning: centroid has " << centroid_tokens
        << " tokens; the build gate (minimum " << config.min_summary_tokens
        << ") would reject it\n";
  }

  if (a.json) {
    nlohmann::json docs = nlohmann::json::array();
    for (std::size_t i = 0; i < cluster.size(); ++i) {
      docs.push_back(
          {{"index", i},
           {"doc_id", cluster.documents[i].doc_id},
           {"tokens", CountWhitespaceTokens(cluster.documents[i].text)},
           {"score", result.per_document_scores[i]}});
    }
    out << Dump({{"cluster_id", cluster.cluster_id},
                 {"match_basis", MatchBasisName(config.match_basis)},
                 {"centroid_index", result.centroid_index},
                 {"centroid_doc_id", centroid.doc_id},
                 {"centroid_score", result.centroid_score},
                 {"documents", std::move(docs)}})
        << "\n";
    return kExitOk;
  }
  out << "cluster " << cluster.cluster_id << " (" << cluster.size()
      << " documents, basis " << MatchBasisName(config.match_basis) << ")\n";
  out << "    " << std::left << std::setw(6) << "index" << std::setw(24)
      << "doc_id" << std::right << std::setw(8) << "tokens" << std::setw(12)
      << "score" << "\n";
  out << std::fixed << std::setprecision(6);
  for (std::size_t i = 0; i < cluster.size(); ++i) {
    out << (i == result.centroid_index ? "  * " : "    ") << std::left
        << std::setw(6) << i << std::setw(24) << cluster.documents[i].doc_id
        << std::right << std::setw(8)
        << CountWhitespaceTokens(cluster.documents[i].text) << std::setw(12)
        << result.per_document_scores[i] << "\n";
  }
  out << "centroid: " << result.centroid_index << " (" << centroid.doc_id
      << ")\n";
  return kExitOk;
}

struct EvalArgs {
  std::string pairs;
  std::string truncate;
  std::string multi_reference = "best";
  std::string scores_out;
  std::string report;
  std::size_t workers = 1;
  bool no_stem = false;
  bool split_summaries = false;
  bool json = false;
};

int RunEval(const EvalArgs& a, std::ostream& out, std::ostream&) {
  RequireInput(a.pairs, "pairs file");
  EvalConfig config;
  config.stem = !a.no_stem;
  config.split_summaries = a.split_summaries;
  config.multi_reference = ParseMultiReference(a.multi_reference);
  if (a.truncate == "mean-ref") {
    config.length_rule = LengthRule::kMeanReference;
  } else if (!a.truncate.empty()) {
    std::size_t consumed = 0;
    long long n = 0;
    try {
      n = std::stoll(a.truncate, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != a.truncate.size() || n < 1) {
      throw ConfigError(
          "--truncate takes a positive integer or 'mean-ref', got '" +
          a.truncate + "'");
    }
    config.length_rule = LengthRule::kExplicit;
    config.truncate_to = static_cast<std::size_t>(n);
  }
  std::vector<EvalPair> pairs;
  try {
    pairs = ReadEvalPairs(a.pairs);
  } catch (const FormatError& e) {
    throw ConfigError(a.pairs + ": " + e.what());
  }
  const EvalResult result = EvaluateRun(std::move(pairs), config, a.workers);
  if (!a.scores_out.empty())
    WriteFileAtomically(a.scores_out, result.PerPairJsonl());
  if (!a.report.empty())
    WriteFileAtomically(a.report, Dump(result.ToJson()) + "\n");
  out << (a.json ? Dump(result.ToJson()) + "\n" : result.ToText());
  return kExitOk;
}

struct ScoreArgs {
  std::string candidate;
  std::string reference;
  bool no_stem = false;
  bool split_summaries = false;
  bool json = false;
};

int RunScore(const ScoreArgs& a, std::ostream& out, std::ostream&) {
  const std::string candidate = ReadWholeFile(a.candidate);
  const std::string reference = ReadWholeFile(a.reference);
  const ProfileOptions profile{!a.no_stem, a.split_summaries};
  const RougeSet scores = ScoreAll(DocumentProfile::Build(candidate, profile),
                                   DocumentProfile::Build(reference, profile));
  out << (a.json ? Dump(RougeSetToJson(scores)) + "\n"
                 : FormatRougeTable(scores));
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Multi-document summarization corpus builder and ROUGE tools",
               "mdscorpus"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::Throw);

  BuildArgs build;
  CLI::App* build_cmd =
      app.add_subcommand("build", "Build a training corpus from clusters");
  build_cmd->add_option("--input", build.input, "cluster JSONL (.gz allowed)")
      ->required();
  build_cmd->add_option("--output", build.output, "training example JSONL")
      ->required();
  build_cmd->add_option("--report", build.report,
                        "report path (default: <output>.report.json)");
  build_cmd->add_option("--workers", build.workers, "worker threads")
      ->check(CLI::PositiveNumber);
  build_cmd->add_flag("--json", build.json, "print the report as JSON");
  AddConfigFlags(build_cmd, build.flags);
  AddBuildFlags(build_cmd, build.flags);

  SelectArgs select;
  CLI::App* select_cmd =
      app.add_subcommand("select", "Print centroid scores for one cluster");
  select_cmd->add_option("--input", select.input, "cluster JSONL")->required();
  select_cmd->add_option("--cluster-id", select.cluster_id, "cluster to score")
      ->required();
  select_cmd->add_flag("--raw", select.raw,
                       "score the documents without cleaning or truncation");
  select_cmd->add_flag("--json", select.json, "print JSON");
  AddConfigFlags(select_cmd, select.flags);

  EvalArgs eval;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Score system summaries against references");
  eval_cmd->add_option("--pairs", eval.pairs, "pairs JSONL")->required();
  eval_cmd->add_option("--truncate", eval.truncate,
                       "system length: N tokens or mean-ref");
  eval_cmd->add_option("--multi-ref", eval.multi_reference,
                       "several references: best or mean");
  eval_cmd->add_option("--scores-out", eval.scores_out,
                       "per-pair scores JSONL");
  eval_cmd->add_option("--report", eval.report, "aggregate report JSON");
  eval_cmd->add_option("--workers", eval.workers, "worker threads")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_flag("--no-stem", eval.no_stem, "disable Porter stemming");
  eval_cmd->add_flag("--split-summaries", eval.split_summaries,
                     "ROUGE-Lsum on detected sentences instead of lines");
  eval_cmd->add_flag("--json", eval.json, "print JSON");

  ScoreArgs score;
  CLI::App* score_cmd =
      app.add_subcommand("score", "ROUGE for one candidate/reference pair");
  score_cmd->add_option("--candidate", score.candidate, "candidate text file")
      ->required();
  score_cmd->add_option("--reference", score.reference, "reference text file")
      ->required();
  score_cmd->add_flag("--no-stem", score.no_stem, "disable Porter stemming");
  score_cmd->add_flag("--split-summaries", score.split_summaries,
                      "ROUGE-Lsum on detected sentences instead of lines");
  score_cmd->add_flag("--json", score.json, "print JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (build_cmd->parsed()) return RunBuild(build, out, err);
    if (select_cmd->parsed()) return RunSelect(select, out, err);
    if (eval_cmd->parsed()) return RunEval(eval, out, err);
    return RunScore(score, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace mdscorpus
