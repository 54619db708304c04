// File formats: line-delimited JSON for papers, profiles, ground truth,
// link caches, clusters, and metrics reports, plus run manifests with
// content digests.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "disamb/clustering.hpp"
#include "disamb/corpus.hpp"
#include "disamb/metrics.hpp"
#include "disamb/similarity.hpp"
#include "disamb/synth.hpp"

namespace disamb::io {

// Papers. Malformed lines raise std::runtime_error naming the line number.
std::vector<PaperRecord> read_papers(const std::string& path);
void write_papers(const std::string& path, std::span<const PaperRecord> papers);
Corpus load_corpus(const std::string& path, LoadReport* report = nullptr);

// Profiles: a file may mix pre-resolved lines ({profile_id, surname,
// paper_ids}) and raw lines ({profile_id, surname, entries}).
struct ProfileFileContent {
  std::vector<ResolvedProfile> resolved;
  std::vector<RawProfile> raw;
};
ProfileFileContent read_profiles(const std::string& path);
void write_resolved_profiles(const std::string& path,
                             std::span<const ResolvedProfile> profiles);
void write_raw_profiles(const std::string& path,
                        std::span<const RawProfile> profiles);

// Maps external paper ids onto corpus indices; unknown ids are an error.
std::vector<GoldProfile> to_gold_profiles(
    const Corpus& corpus, std::span<const ResolvedProfile> resolved);

// Ground truth.
std::vector<TruthEntry> read_truth(const std::string& path);
void write_truth(const std::string& path, std::span<const TruthEntry> truth);

// Similarity-term cache: one line per link, keyed by block.
void write_links(const std::string& path,
                 std::span<const SimilarityGraph> graphs, const Corpus& corpus);
// Returns block key -> links (dense indices, sorted by pair).
std::map<std::string, std::vector<LinkTerms>> read_links(
    const std::string& path, const Corpus& corpus);

// Clusterings.
void write_clusters(const std::string& path,
                    std::span<const Clustering> clusterings,
                    const Corpus& corpus);

// Parameter vectors.
DisambiguationParams read_params(const std::string& path);
void write_params(const std::string& path, const DisambiguationParams& params,
                  const nlohmann::json& extra = {});

// Metrics report: one line per scored cluster and profile plus a summary.
void write_metrics_report(const std::string& path, const EvalResult& result);

struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> input_digests;  // path -> fnv1a64 hex
  std::vector<std::string> outputs;
  double wall_ms = 0.0;
  int threads = 1;
};
void write_manifest(const std::string& path, const RunManifest& manifest);

// FNV-1a of the file bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

}  // namespace disamb::io
