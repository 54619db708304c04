// Parameter-free pairwise similarity terms within a name block, plus the
// weighted score that turns terms into a link strength.
#pragma once

#include <cstdint>
#include <vector>

#include "disamb/corpus.hpp"

namespace disamb {

// Raw evidence for one paper pair (i < j, dense corpus indices; index order
// coincides with paper-id order). Terms are stored unweighted so a new
// parameter vector can re-score cached graphs without touching the corpus.
struct LinkTerms {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double coauthor_overlap = 0.0;   // |A_i ∩ A_j| / min(|A_i|,|A_j|), focal removed
  std::uint8_t self_cite_count = 0;  // [i cites j] + [j cites i]
  std::uint32_t shared_refs = 0;
  double cocitation_overlap = 0.0;  // |C_i ∩ C_j| / min(|C_i|,|C_j|)
};

struct SimilarityGraph {
  std::string block_key;
  std::vector<std::uint32_t> papers;  // block's distinct papers, sorted
  std::vector<LinkTerms> links;       // sorted by (i, j); no all-zero entries
};

struct DisambiguationParams {
  double alpha_a = 0.0;
  double alpha_s = 0.0;
  double alpha_r = 0.0;
  double alpha_c = 0.0;
  static constexpr double beta1 = 1.0;  // step-1 edge threshold, not tunable
  double beta2 = 0.0;
  double beta3 = 0.0;
  double beta4 = 0.0;

  void validate() const;  // throws std::invalid_argument on negative/non-finite
};

inline double score(const LinkTerms& t, const DisambiguationParams& p) {
  return p.alpha_a * t.coauthor_overlap + p.alpha_s * t.self_cite_count +
         p.alpha_r * t.shared_refs + p.alpha_c * t.cocitation_overlap;
}

// All pairs within the block whose years differ by at most year_gap and
// that carry at least one nonzero term.
SimilarityGraph compute_terms(const Corpus& corpus, const NameBlock& block,
                              int year_gap = 5);

// Binary search into graph.links; nullptr when the pair has no stored link.
const LinkTerms* find_link(const SimilarityGraph& graph, std::uint32_t i,
                           std::uint32_t j);

}  // namespace disamb
