// Evaluation quantities: h-index, initial-based cluster precision, profile
// recall / h-recall against gold profiles, aggregate error means, and the
// auxiliary second-initial and merged-name protocols.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "disamb/clustering.hpp"
#include "disamb/corpus.hpp"

namespace disamb {

// Largest h such that at least h entries are >= h.
int h_index(std::vector<std::uint32_t> citation_counts);

// Modal-first-initial share among the cluster's focal mentions that carry
// an initial; nullopt when none do (such clusters are skipped upstream).
std::optional<double> cluster_precision(const Cluster& cluster,
                                        const Corpus& corpus,
                                        const NameBlock& block);

// Index of the profile's best cluster: largest intersection, ties toward
// higher h-index of the intersection, then smaller cluster_id. Returns -1
// for an empty clustering. intersection is filled with the winning overlap.
int best_cluster_for_profile(const Clustering& clustering,
                             const GoldProfile& profile, const Corpus& corpus,
                             std::vector<std::uint32_t>* intersection = nullptr);

// |best ∩ profile| / |profile|.
double profile_recall(const Clustering& clustering, const GoldProfile& profile,
                      const Corpus& corpus);

// h(best ∩ profile) / h(profile); caller must ensure h(profile) >= 1.
double profile_h_recall(const Clustering& clustering,
                        const GoldProfile& profile, const Corpus& corpus);

struct EvalResult {
  double p_error = 0.0;   // ⟨(1 − P) · √|K|⟩ over scored clusters
  double rh_error = 0.0;  // ⟨1 − R^h⟩ over scored profiles
  std::vector<double> cluster_precisions;  // per scored cluster
  std::vector<double> profile_h_recalls;   // per scored profile
  std::size_t clusters_scored = 0;
  std::size_t clusters_skipped_no_initials = 0;
  std::size_t profiles_scored = 0;
  std::size_t profiles_skipped_empty = 0;
  std::size_t profiles_skipped_h0 = 0;
  std::size_t profiles_skipped_no_block = 0;
};

// clusterings[k] must be the clustering of blocks[k]. Profiles are routed
// to the block whose key equals their surname (SurnameOnly runs); profiles
// with no matching block are skipped and counted.
EvalResult aggregate_errors(std::span<const Clustering> clusterings,
                            std::span<const NameBlock> blocks,
                            std::span<const GoldProfile> profiles,
                            const Corpus& corpus);

struct SecondInitialResult {
  double precision = 0.0;      // mean modal share over qualifying clusters
  std::size_t clusters_used = 0;
  std::size_t clusters_total = 0;
};

// Qualifying cluster: >= 2 distinct second initials among its focal
// mentions. clusters_used == 0 means the value is undefined.
SecondInitialResult second_initial_precision(
    std::span<const Clustering> clusterings, std::span<const NameBlock> blocks,
    const Corpus& corpus);

struct MergedNameReport {
  std::size_t pairs = 0;
  std::size_t clusters = 0;  // across all union blocks
  std::size_t mixed = 0;     // clusters holding papers from both names
  std::vector<std::pair<std::size_t, std::size_t>> per_pair;  // (clusters, mixed)

  double mixed_fraction() const {
    return clusters == 0 ? 0.0
                         : static_cast<double>(mixed) /
                               static_cast<double>(clusters);
  }
};

// Clusters the union of each block pair as if the two names were one name;
// counts clusters containing papers from both sources. Blocks of a pair
// must be disjoint and share the key mode.
MergedNameReport merged_name_test(
    const Corpus& corpus,
    std::span<const std::pair<const NameBlock*, const NameBlock*>> pairs,
    const DisambiguationParams& params, int year_gap = 5);

// Union block used by merged_name_test; exposed for tests.
NameBlock merge_blocks(const Corpus& corpus, const NameBlock& a,
                       const NameBlock& b);

// Seeded sample of up to n distinct block pairs with disjoint paper sets,
// for merged_name_test. Pointers alias into `blocks`.
std::vector<std::pair<const NameBlock*, const NameBlock*>>
sample_disjoint_pairs(const std::vector<NameBlock>& blocks, std::size_t n,
                      std::uint64_t seed);

}  // namespace disamb
