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

#include "mdscorpus/pipeline.h"

#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "mdscorpus/centroid.h"
#include "mdscorpus/errors.h"
#include "mdscorpus/text.h"
#include "mdscorpus/utf8.h"

namespace mdscorpus {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && utf8::IsAsciiSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && utf8::IsAsciiSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::size_t ParseCount(std::string_view key, std::string_view value) {
  long long n = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), n);
  if (ec != std::errc() || ptr != value.data() + value.size() || n < 0) {
    throw ConfigError(std::string(key) +
                      " must be a non-negative integer, got '" +
                      std::string(value) + "'");
  }
  return static_cast<std::size_t>(n);
}

double ParseReal(std::string_view key, std::string_view value) {
  double x = 0.0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(std::string(key) + " must be a number, got '" +
                      std::string(value) + "'");
  }
  return x;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(std::string(key) + " must be true or false, got '" +
                    std::string(value) + "'");
}

std::size_t SumTokens(const std::vector<std::string>& docs) {
  std::size_t total = 0;
  for (const std::string& d : docs) total += CountWhitespaceTokens(d);
  return total;
}

ClusterOutcome Rejected(RejectKind kind, std::string detail) {
  ClusterOutcome out;
  out.reject = RejectReason{kind, std::move(detail)};
  return out;
}

}  // namespace

std::size_t PipelineConfig::EffectiveMinDocs() const {
  if (min_docs_per_cluster) return *min_docs_per_cluster;
  return mode == BuildMode::kCentrum ? 3 : 2;
}

std::vector<std::string> PipelineConfig::BoilerplatePatterns() const {
  std::vector<std::string> patterns;
  if (default_boilerplate) patterns = DefaultBoilerplatePatterns();
  patterns.insert(patterns.end(), extra_boilerplate.begin(),
                  extra_boilerplate.end());
  return patterns;
}

void PipelineConfig::Validate() const {
  if (EffectiveMinDocs() < 2) {
    throw ConfigError("min_docs_per_cluster must be at least 2");
  }
  if (!(primera_ratio > 0.0 && primera_ratio <= 1.0)) {
    throw ConfigError("primera_ratio must be in (0, 1]");
  }
  if (max_source_tokens < 1) {
    throw ConfigError("max_source_tokens must be at least 1");
  }
  if (separator.empty()) throw ConfigError("separator must not be empty");
  if (mask_token.empty()) throw ConfigError("mask_token must not be empty");
  if (mask_token.find(separator) != std::string::npos ||
      separator.find(mask_token) != std::string::npos) {
    throw ConfigError("mask_token and separator must not contain each other");
  }
}

nlohmann::json PipelineConfig::ToJson() const {
  return {{"mode", BuildModeName(mode)},
          {"min_docs_per_cluster", EffectiveMinDocs()},
          {"min_summary_tokens", min_summary_tokens},
          {"max_source_tokens", max_source_tokens},
          {"primera_ratio", primera_ratio},
          {"match_basis", MatchBasisName(match_basis)},
          {"entity_provider", EntityProviderName(entity_provider)},
          {"boilerplate_patterns", BoilerplatePatterns()},
          {"mask_token", mask_token},
          {"separator", separator},
          {"separator_style", SeparatorStyleName(separator_style)},
          {"seed", seed}};
}

void ApplyConfigValue(std::string_view key, std::string_view value,
                      PipelineConfig& config,
                      const std::filesystem::path& base_dir) {
  if (key == "mode") {
    config.mode = ParseBuildMode(value);
  } else if (key == "min_docs_per_cluster") {
    config.min_docs_per_cluster = ParseCount(key, value);
  } else if (key == "min_summary_tokens") {
    config.min_summary_tokens = ParseCount(key, value);
  } else if (key == "max_source_tokens") {
    config.max_source_tokens = ParseCount(key, value);
  } else if (key == "primera_ratio") {
    config.primera_ratio = ParseReal(key, value);
  } else if (key == "match_basis") {
    config.match_basis = ParseMatchBasis(value);
  } else if (key == "entity_provider") {
    config.entity_provider = ParseEntityProvider(value);
  } else if (key == "boilerplate_defaults") {
    config.default_boilerplate = ParseBool(key, value);
  } else if (key == "boilerplate_file") {
    std::filesystem::path p(value);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    for (std::string& pattern : ReadPatternFile(p.string())) {
      config.extra_boilerplate.push_back(std::move(pattern));
    }
  } else if (key == "boilerplate_pattern") {
    config.extra_boilerplate.emplace_back(value);
  } else if (key == "mask_token") {
    config.mask_token = std::string(value);
  } else if (key == "separator") {
    config.separator = std::string(value);
  } else if (key == "separator_style") {
    try {
      config.separator_style = ParseSeparatorStyle(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "seed") {
    config.seed = ParseCount(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void ApplyConfigFile(const std::filesystem::path& path,
                     PipelineConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in || std::filesystem::is_directory(path)) {
    throw IoError("cannot read config file " + path.string());
  }
  const std::filesystem::path base = path.parent_path();
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    // Only whole-line comments: patterns and tokens may contain '#'.
    const std::string_view view = Trim(line);
    if (view.empty() || view.front() == '#') continue;
    const std::size_t eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(number) +
                        ": expected key = value");
    }
    const std::string_view key = Trim(view.substr(0, eq));
    const std::string_view value = Trim(view.substr(eq + 1));
    try {
      ApplyConfigValue(key, value, config, base);
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(number) + ": " +
                        e.what());
    }
  }
}

void Histogram::Add(std::size_t value) {
  ++buckets_[value / width_ * width_];
  min_ = count_ == 0 ? value : std::min(min_, value);
  max_ = count_ == 0 ? value : std::max(max_, value);
  ++count_;
  sum_ += value;
}

void Histogram::Merge(const Histogram& other) {
  if (other.count_ == 0) return;
  for (const auto& [start, n] : other.buckets_) buckets_[start] += n;
  min_ = count_ == 0 ? other.min_ : std::min(min_, other.min_);
  max_ = count_ == 0 ? other.max_ : std::max(max_, other.max_);
  count_ += other.count_;
  sum_ += other.sum_;
}

nlohmann::json Histogram::ToJson() const {
  nlohmann::json buckets = nlohmann::json::array();
  for (const auto& [start, n] : buckets_) {
    buckets.push_back(
        {{"from", start}, {"to", start + width_ - 1}, {"count", n}});
  }
  return {{"count", count_},
          {"sum", sum_},
          {"min", min_},
          {"max", max_},
          {"mean", count_ == 0 ? 0.0
                               : static_cast<double>(sum_) /
                                     static_cast<double>(count_)},
          {"bucket_width", width_},
          {"buckets", std::move(buckets)}};
}

std::size_t RunReport::total_rejects() const {
  std::size_t total = 0;
  for (const auto& [kind, n] : rejects_by_reason) total += n;
  return total;
}

double RunReport::retained_fraction() const {
  return clusters_read == 0 ? 0.0
                            : static_cast<double>(clusters_retained) /
                                  static_cast<double>(clusters_read);
}

void RunReport::Reject(RejectKind kind, RejectSample sample) {
  ++rejects_by_reason[kind];
  auto& samples = reject_samples[kind];
  if (samples.size() < kMaxSamplesPerReason)
    samples.push_back(std::move(sample));
}

nlohmann::json RunReport::ToJson(bool include_timing) const {
  nlohmann::json rejects = nlohmann::json::object();
  nlohmann::json samples = nlohmann::json::object();
  for (RejectKind kind : kAllRejectKinds) {
    const std::string name(RejectKindName(kind));
    auto it = rejects_by_reason.find(kind);
    rejects[name] = it == rejects_by_reason.end() ? 0 : it->second;
    nlohmann::json list = nlohmann::json::array();
    if (auto s = reject_samples.find(kind); s != reject_samples.end()) {
      for (const RejectSample& r : s->second) {
        list.push_back({{"line", r.line_number},
                        {"cluster_id", r.cluster_id},
                        {"detail", r.detail}});
      }
    }
    samples[name] = std::move(list);
  }
  nlohmann::json j = {{"input", input},
                      {"clusters_read", clusters_read},
                      {"clusters_retained", clusters_retained},
                      {"rejects_by_reason", std::move(rejects)},
                      {"total_rejects", total_rejects()},
                      {"retained_fraction", retained_fraction()},
                      {"histograms",
                       {{"docs_per_cluster", docs_per_cluster.ToJson()},
                        {"source_tokens", source_tokens.ToJson()},
                        {"target_tokens", target_tokens.ToJson()}}},
                      {"reject_samples", std::move(samples)},
                      {"config", config}};
  if (include_timing) {
    j["timing"] = {
        {"wall_seconds", wall_seconds},
        {"clusters_per_second",
         wall_seconds > 0.0 ? static_cast<double>(clusters_read) / wall_seconds
                            : 0.0},
        {"workers", workers}};
  }
  return j;
}

std::string RunReport::ToText() const {
  std::ostringstream out;
  out << "input:              " << input << "\n"
      << "mode:               " << config.value("mode", "") << "\n"
      << "clusters read:      " << clusters_read << "\n"
      << "clusters retained:  " << clusters_retained << "\n"
      << "retained fraction:  " << std::fixed << std::setprecision(4)
      << retained_fraction() << "\n"
      << "rejects:\n";
  for (RejectKind kind : kAllRejectKinds) {
    auto it = rejects_by_reason.find(kind);
    out << "  " << std::left << std::setw(20) << RejectKindName(kind)
        << std::right << (it == rejects_by_reason.end() ? 0 : it->second)
        << "\n";
  }
  auto line = [&](const char* name, const Histogram& h) {
    out << "  " << std::left << std::setw(20) << name << std::right;
    if (h.count() == 0) {
      out << "-\n";
      return;
    }
    const nlohmann::json j = h.ToJson();
    out << "min " << j["min"].get<std::size_t>() << ", mean "
        << std::setprecision(1) << j["mean"].get<double>() << ", max "
        << j["max"].get<std::size_t>() << "\n";
  };
  out << "retained lengths:\n";
  line("documents/cluster", docs_per_cluster);
  line("source tokens", source_tokens);
  line("target tokens", target_tokens);
  out << "wall time:          " << std::setprecision(3) << wall_seconds
      << " s (" << workers << (workers == 1 ? " worker, " : " workers, ")
      << std::setprecision(1)
      << (wall_seconds > 0.0 ? static_cast<double>(clusters_read) / wall_seconds
                             : 0.0)
      << " clusters/s)\n";
  return out.str();
}

ClusterProcessor::ClusterProcessor(PipelineConfig config)
    : config_((config.Validate(), std::move(config))),
      cleaner_(config_.BoilerplatePatterns()) {}

ClusterOutcome ClusterProcessor::Process(const Cluster& cluster) const {
  try {
    for (const Document& d : cluster.documents) {
      if (d.text.find(config_.separator) != std::string::npos) {
        return Rejected(RejectKind::kMalformedRecord,
                        "document \"" + d.doc_id + "\" contains the separator");
      }
      if (config_.mode == BuildMode::kPrimera &&
          d.text.find(config_.mask_token) != std::string::npos) {
        return Rejected(
            RejectKind::kMalformedRecord,
            "document \"" + d.doc_id + "\" contains the mask token");
      }
    }

    Cluster cleaned;
    cleaned.cluster_id = cluster.cluster_id;
    cleaned.source_meta = cluster.source_meta;
    for (const Document& d : cluster.documents) {
      Document c = cleaner_.Clean(d);
      if (!Trim(c.text).empty()) cleaned.documents.push_back(std::move(c));
    }
    if (cleaned.documents.empty() && !cluster.documents.empty()) {
      return Rejected(RejectKind::kEmptyAfterCleaning,
                      "no document has text left after cleaning");
    }

    const GateConfig gate{config_.mode, config_.EffectiveMinDocs(),
                          config_.min_summary_tokens};
    if (cleaned.size() < gate.min_docs) {
      ClusterOutcome out;
      out.reject = GateCluster(cleaned, gate, nullptr);
      out.docs = cleaned.size();
      return out;
    }

    const Cluster truncated =
        ProportionalTruncate(cleaned, config_.max_source_tokens);
    const SerializeOptions serialize{config_.separator,
                                     config_.separator_style};
    ClusterOutcome out;
    out.docs = truncated.size();

    if (config_.mode == BuildMode::kCentrum) {
      const CentroidResult result =
          SelectCentroid(truncated, CentroidOptions{config_.match_basis, {}});
      if (auto reject = GateCluster(truncated, gate, &result)) {
        out.reject = std::move(reject);
        return out;
      }
      out.example = BuildCentrumExample(truncated, result, serialize);
      std::vector<std::string> inputs;
      for (std::size_t i = 0; i < truncated.size(); ++i) {
        if (i != result.centroid_index)
          inputs.push_back(truncated.documents[i].text);
      }
      out.source_tokens = SumTokens(inputs);
    } else {
      PrimeraOptions options;
      options.ratio = config_.primera_ratio;
      options.mask_token = config_.mask_token;
      options.provider = config_.entity_provider;
      options.basis = config_.match_basis;
      const SyntheticExample synthetic =
          BuildPrimeraExample(truncated, options);
      if (synthetic.summary_sentences.empty()) {
        out.reject = RejectReason{RejectKind::kSummaryTooShort,
                                  "no sentence mentions an entity"};
        return out;
      }
      out.example = PrimeraTrainingExample(truncated, synthetic, serialize);
      out.example->meta["ratio"] = config_.primera_ratio;
      out.source_tokens = SumTokens(synthetic.masked_documents);
    }
    out.target_tokens = CountWhitespaceTokens(out.example->target);
    return out;
  } catch (const std::invalid_argument& e) {
    return Rejected(RejectKind::kMalformedRecord, e.what());
  }
}

RunReport RunPipeline(const std::filesystem::path& input,
                      const std::filesystem::path& output,
                      const PipelineConfig& config, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const ClusterProcessor processor(config);
  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  const std::size_t batch_limit =
      std::max<std::size_t>(1, options.batch_size) * workers;

  RunReport report;
  report.input = input.string();
  report.config = processor.config().ToJson();
  report.workers = workers;

  ClusterReader reader(input);
  ExampleWriter writer(
      output, SerializeOptions{config.separator, config.separator_style});

  std::vector<ClusterRecordResult> batch;
  std::vector<ClusterOutcome> outcomes;
  bool done = false;
  while (!done) {
    batch.clear();
    while (batch.size() < batch_limit) {
      std::optional<ClusterRecordResult> record = reader.Next();
      if (!record) {
        done = true;
        break;
      }
      batch.push_back(std::move(*record));
    }
    if (batch.empty()) break;

    outcomes.assign(batch.size(), ClusterOutcome{});
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&] {
      try {
        for (std::size_t i = next++; i < batch.size(); i = next++) {
          if (batch[i].cluster)
            outcomes[i] = processor.Process(*batch[i].cluster);
        }
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    };
    const std::size_t threads = std::min(workers, batch.size());
    if (threads <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t i = 0; i < batch.size(); ++i) {
      ++report.clusters_read;
      const ClusterRecordResult& record = batch[i];
      if (!record.cluster) {
        report.Reject(RejectKind::kMalformedRecord,
                      RejectSample{record.line_number, "", record.error});
        continue;
      }
      ClusterOutcome& outcome = outcomes[i];
      if (outcome.reject) {
        report.Reject(
            outcome.reject->kind,
            RejectSample{record.line_number, record.cluster->cluster_id,
                         outcome.reject->detail});
        continue;
      }
      writer.Write(*outcome.example);
      ++report.clusters_retained;
      report.docs_per_cluster.Add(outcome.docs);
      report.source_tokens.Add(outcome.source_tokens);
      report.target_tokens.Add(outcome.target_tokens);
    }
  }
  writer.Commit();
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace mdscorpus
