// Two-step agglomerative clustering of a block's similarity graph:
// strict-threshold connected components, then cluster-level merging and
// attachment of leftover singletons.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "disamb/similarity.hpp"

namespace disamb {

struct Cluster {
  std::uint32_t cluster_id = 0;
  std::vector<std::uint32_t> papers;  // dense corpus indices, sorted
};

// Clusters are disjoint, cover every block paper, and are numbered 0..n-1
// in order of their smallest contained paper.
struct Clustering {
  std::string block_key;
  std::vector<Cluster> clusters;

  std::size_t paper_count() const {
    std::size_t n = 0;
    for (const auto& c : clusters) n += c.papers.size();
    return n;
  }
};

// Connected components over links with score > beta1; unlinked papers
// become singletons.
Clustering step1_components(const SimilarityGraph& graph,
                            const DisambiguationParams& params);

// Mean gated link strength between two disjoint clusters:
// sum of s_ij over pairs with s_ij > beta2, divided by |gamma|*|kappa|.
double cluster_similarity(const Cluster& gamma, const Cluster& kappa,
                          const SimilarityGraph& graph,
                          const DisambiguationParams& params);

// One round of merging (components of the cluster graph with similarity
// > beta3), then each still-singleton paper joins the cluster holding its
// strongest link above beta4 (ties: smaller cluster_id).
Clustering step2_merge(const Clustering& step1, const SimilarityGraph& graph,
                       const DisambiguationParams& params);

// Merge phase of step2 alone, without singleton attachment.
Clustering merge_clusters(const Clustering& step1, const SimilarityGraph& graph,
                          const DisambiguationParams& params);

// compute_terms -> step1 -> step2.
Clustering disambiguate_block(const Corpus& corpus, const NameBlock& block,
                              const DisambiguationParams& params,
                              int year_gap = 5);

namespace detail {

// Plain union-find over 0..n-1.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::uint32_t> parent_;
};

// Sorts papers within groups, drops empties, orders groups by smallest
// paper, and assigns sequential cluster ids.
Clustering canonicalize(std::string block_key,
                        std::vector<std::vector<std::uint32_t>> groups);

}  // namespace detail
}  // namespace disamb
