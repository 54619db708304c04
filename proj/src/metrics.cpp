#include "disamb/metrics.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "disamb/common.hpp"

namespace disamb {
namespace {

// Focal mentions of `block` grouped by the cluster that holds their paper.
// Returns per-cluster member lists, indexed like clustering.clusters.
std::vector<std::vector<BlockMember>> members_by_cluster(
    const Clustering& clustering, const NameBlock& block) {
  std::unordered_map<std::uint32_t, std::uint32_t> cluster_of;
  for (const auto& c : clustering.clusters)
    for (std::uint32_t p : c.papers) cluster_of.emplace(p, c.cluster_id);
  std::vector<std::vector<BlockMember>> out(clustering.clusters.size());
  for (const auto& m : block.members) {
    auto it = cluster_of.find(m.paper);
    if (it != cluster_of.end()) out[it->second].push_back(m);
  }
  return out;
}

struct InitialCounts {
  std::array<std::uint32_t, 256> count{};
  std::uint32_t total = 0;
  std::uint32_t distinct = 0;

  void add(char initial) {
    auto idx = static_cast<unsigned char>(initial);
    if (count[idx]++ == 0) ++distinct;
    ++total;
  }
  std::uint32_t modal() const {
    return *std::max_element(count.begin(), count.end());
  }
};

std::optional<double> precision_of_members(std::span<const BlockMember> members,
                                           const Corpus& corpus) {
  InitialCounts ic;
  for (const auto& m : members) {
    const auto& a = corpus.paper(m.paper).authors[m.author_pos];
    if (a.has_first()) ic.add(a.first_initial);
  }
  if (ic.total == 0) return std::nullopt;
  return static_cast<double>(ic.modal()) / static_cast<double>(ic.total);
}

}  // namespace

int h_index(std::vector<std::uint32_t> citation_counts) {
  std::sort(citation_counts.begin(), citation_counts.end(),
            std::greater<>());
  int h = 0;
  while (h < static_cast<int>(citation_counts.size()) &&
         citation_counts[h] >= static_cast<std::uint32_t>(h + 1))
    ++h;
  return h;
}

std::optional<double> cluster_precision(const Cluster& cluster,
                                        const Corpus& corpus,
                                        const NameBlock& block) {
  std::vector<BlockMember> members;
  for (const auto& m : block.members)
    if (std::binary_search(cluster.papers.begin(), cluster.papers.end(),
                           m.paper))
      members.push_back(m);
  return precision_of_members(members, corpus);
}

namespace {

int h_of_papers(std::span<const std::uint32_t> papers, const Corpus& corpus) {
  std::vector<std::uint32_t> counts;
  counts.reserve(papers.size());
  for (std::uint32_t p : papers) counts.push_back(corpus.citation_count(p));
  return h_index(std::move(counts));
}

}  // namespace

int best_cluster_for_profile(const Clustering& clustering,
                             const GoldProfile& profile, const Corpus& corpus,
                             std::vector<std::uint32_t>* intersection) {
  int best = -1;
  std::size_t best_size = 0;
  int best_h = -1;  // computed lazily, only to break size ties
  std::vector<std::uint32_t> best_overlap;
  for (const auto& c : clustering.clusters) {
    std::vector<std::uint32_t> overlap;
    std::set_intersection(c.papers.begin(), c.papers.end(),
                          profile.papers.begin(), profile.papers.end(),
                          std::back_inserter(overlap));
    if (best >= 0 && overlap.size() < best_size) continue;
    if (best < 0 || overlap.size() > best_size) {
      best = static_cast<int>(c.cluster_id);
      best_size = overlap.size();
      best_h = -1;
      best_overlap = std::move(overlap);
      continue;
    }
    // size tie: prefer higher intersection h, then the incumbent (smaller id)
    if (best_h < 0) best_h = h_of_papers(best_overlap, corpus);
    int h = h_of_papers(overlap, corpus);
    if (h > best_h) {
      best = static_cast<int>(c.cluster_id);
      best_h = h;
      best_overlap = std::move(overlap);
    }
  }
  if (intersection) *intersection = std::move(best_overlap);
  return best;
}

double profile_recall(const Clustering& clustering, const GoldProfile& profile,
                      const Corpus& corpus) {
  if (profile.papers.empty())
    throw std::invalid_argument("profile_recall: empty profile");
  std::vector<std::uint32_t> overlap;
  best_cluster_for_profile(clustering, profile, corpus, &overlap);
  return static_cast<double>(overlap.size()) /
         static_cast<double>(profile.papers.size());
}

double profile_h_recall(const Clustering& clustering,
                        const GoldProfile& profile, const Corpus& corpus) {
  int gold_h = h_of_papers(profile.papers, corpus);
  if (gold_h < 1)
    throw std::invalid_argument("profile_h_recall: profile h-index is 0");
  std::vector<std::uint32_t> overlap;
  best_cluster_for_profile(clustering, profile, corpus, &overlap);
  return static_cast<double>(h_of_papers(overlap, corpus)) /
         static_cast<double>(gold_h);
}

EvalResult aggregate_errors(std::span<const Clustering> clusterings,
                            std::span<const NameBlock> blocks,
                            std::span<const GoldProfile> profiles,
                            const Corpus& corpus) {
  if (clusterings.size() != blocks.size())
    throw std::invalid_argument("aggregate_errors: clusterings/blocks mismatch");
  EvalResult r;
  KahanSum p_sum;
  for (std::size_t k = 0; k < clusterings.size(); ++k) {
    auto grouped = members_by_cluster(clusterings[k], blocks[k]);
    for (std::size_t c = 0; c < grouped.size(); ++c) {
      auto prec = precision_of_members(grouped[c], corpus);
      if (!prec) {
        ++r.clusters_skipped_no_initials;
        continue;
      }
      r.cluster_precisions.push_back(*prec);
      double size = static_cast<double>(clusterings[k].clusters[c].papers.size());
      p_sum.add((1.0 - *prec) * std::sqrt(size));
      ++r.clusters_scored;
    }
  }

  std::unordered_map<std::string, std::size_t> block_by_key;
  for (std::size_t k = 0; k < blocks.size(); ++k)
    block_by_key.emplace(blocks[k].key, k);

  KahanSum rh_sum;
  for (const auto& prof : profiles) {
    auto it = block_by_key.find(prof.surname);
    if (it == block_by_key.end()) {
      ++r.profiles_skipped_no_block;
      continue;
    }
    if (prof.papers.empty()) {
      ++r.profiles_skipped_empty;
      continue;
    }
    if (h_of_papers(prof.papers, corpus) < 1) {
      ++r.profiles_skipped_h0;
      continue;
    }
    double rh = profile_h_recall(clusterings[it->second], prof, corpus);
    r.profile_h_recalls.push_back(rh);
    rh_sum.add(1.0 - rh);
    ++r.profiles_scored;
  }

  if (r.clusters_scored == 0)
    throw std::runtime_error("aggregate_errors: no scorable cluster");
  if (r.profiles_scored == 0)
    throw std::runtime_error("aggregate_errors: no scorable profile");
  r.p_error = p_sum.value() / static_cast<double>(r.clusters_scored);
  r.rh_error = rh_sum.value() / static_cast<double>(r.profiles_scored);
  return r;
}

SecondInitialResult second_initial_precision(
    std::span<const Clustering> clusterings, std::span<const NameBlock> blocks,
    const Corpus& corpus) {
  if (clusterings.size() != blocks.size())
    throw std::invalid_argument(
        "second_initial_precision: clusterings/blocks mismatch");
  SecondInitialResult res;
  KahanSum sum;
  for (std::size_t k = 0; k < clusterings.size(); ++k) {
    auto grouped = members_by_cluster(clusterings[k], blocks[k]);
    for (const auto& members : grouped) {
      ++res.clusters_total;
      InitialCounts ic;
      for (const auto& m : members) {
        const auto& a = corpus.paper(m.paper).authors[m.author_pos];
        if (a.has_second()) ic.add(a.second_initial);
      }
      if (ic.distinct < 2) continue;
      sum.add(static_cast<double>(ic.modal()) / static_cast<double>(ic.total));
      ++res.clusters_used;
    }
  }
  if (res.clusters_used > 0)
    res.precision = sum.value() / static_cast<double>(res.clusters_used);
  return res;
}

NameBlock merge_blocks(const Corpus& corpus, const NameBlock& a,
                       const NameBlock& b) {
  (void)corpus;
  if (a.mode != b.mode)
    throw std::invalid_argument("merge_blocks: key modes differ");
  NameBlock u;
  u.key = a.key + "+" + b.key;
  u.mode = a.mode;
  u.focal_keys = a.focal_keys;
  u.focal_keys.insert(u.focal_keys.end(), b.focal_keys.begin(),
                      b.focal_keys.end());
  std::sort(u.focal_keys.begin(), u.focal_keys.end());
  u.focal_keys.erase(std::unique(u.focal_keys.begin(), u.focal_keys.end()),
                     u.focal_keys.end());
  u.members = a.members;
  u.members.insert(u.members.end(), b.members.begin(), b.members.end());
  std::sort(u.members.begin(), u.members.end(),
            [](const BlockMember& x, const BlockMember& y) {
              return x.paper != y.paper ? x.paper < y.paper
                                        : x.author_pos < y.author_pos;
            });
  return u;
}

MergedNameReport merged_name_test(
    const Corpus& corpus,
    std::span<const std::pair<const NameBlock*, const NameBlock*>> pairs,
    const DisambiguationParams& params, int year_gap) {
  MergedNameReport rep;
  for (const auto& [pa, pb] : pairs) {
    // paper sets of each side, for the mixing check
    std::vector<std::uint32_t> papers_a, papers_b;
    for (const auto& m : pa->members) papers_a.push_back(m.paper);
    for (const auto& m : pb->members) papers_b.push_back(m.paper);
    std::sort(papers_a.begin(), papers_a.end());
    papers_a.erase(std::unique(papers_a.begin(), papers_a.end()),
                   papers_a.end());
    std::sort(papers_b.begin(), papers_b.end());
    papers_b.erase(std::unique(papers_b.begin(), papers_b.end()),
                   papers_b.end());
    {
      std::vector<std::uint32_t> common;
      std::set_intersection(papers_a.begin(), papers_a.end(),
                            papers_b.begin(), papers_b.end(),
                            std::back_inserter(common));
      if (!common.empty())
        throw std::invalid_argument("merged_name_test: blocks share papers");
    }

    NameBlock u = merge_blocks(corpus, *pa, *pb);
    Clustering cl = disambiguate_block(corpus, u, params, year_gap);
    std::size_t mixed = 0;
    for (const auto& c : cl.clusters) {
      bool has_a = false, has_b = false;
      for (std::uint32_t p : c.papers) {
        has_a = has_a || std::binary_search(papers_a.begin(), papers_a.end(), p);
        has_b = has_b || std::binary_search(papers_b.begin(), papers_b.end(), p);
        if (has_a && has_b) break;
      }
      if (has_a && has_b) ++mixed;
    }
    ++rep.pairs;
    rep.clusters += cl.clusters.size();
    rep.mixed += mixed;
    rep.per_pair.emplace_back(cl.clusters.size(), mixed);
  }
  return rep;
}

std::vector<std::pair<const NameBlock*, const NameBlock*>>
sample_disjoint_pairs(const std::vector<NameBlock>& blocks, std::size_t n,
                      std::uint64_t seed) {
  std::vector<std::pair<const NameBlock*, const NameBlock*>> pairs;
  if (blocks.size() < 2 || n == 0) return pairs;

  auto papers_of = [](const NameBlock& b) {
    std::vector<std::uint32_t> ps;
    ps.reserve(b.members.size());
    for (const auto& m : b.members) ps.push_back(m.paper);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
  };
  std::vector<std::vector<std::uint32_t>> papers(blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) papers[k] = papers_of(blocks[k]);

  Rng rng(seed);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t attempts = 200 * n + 200;
  while (pairs.size() < n && attempts-- > 0) {
    std::size_t a = rng.below(blocks.size());
    std::size_t b = rng.below(blocks.size());
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) continue;
    std::vector<std::uint32_t> common;
    std::set_intersection(papers[a].begin(), papers[a].end(),
                          papers[b].begin(), papers[b].end(),
                          std::back_inserter(common));
    if (!common.empty()) continue;
    pairs.emplace_back(&blocks[a], &blocks[b]);
  }
  return pairs;
}

}  // namespace disamb
