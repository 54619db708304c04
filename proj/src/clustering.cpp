#include "disamb/clustering.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace disamb {
namespace detail {

Clustering canonicalize(std::string block_key,
                        std::vector<std::vector<std::uint32_t>> groups) {
  Clustering out;
  out.block_key = std::move(block_key);
  groups.erase(std::remove_if(groups.begin(), groups.end(),
                              [](const auto& g) { return g.empty(); }),
               groups.end());
  for (auto& g : groups) std::sort(g.begin(), g.end());
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  out.clusters.reserve(groups.size());
  for (std::uint32_t id = 0; id < groups.size(); ++id)
    out.clusters.push_back({id, std::move(groups[id])});
  return out;
}

}  // namespace detail

namespace {

// Index of each graph paper within graph.papers (which is sorted).
std::uint32_t local_index(const SimilarityGraph& g, std::uint32_t paper) {
  auto it = std::lower_bound(g.papers.begin(), g.papers.end(), paper);
  if (it == g.papers.end() || *it != paper)
    throw std::logic_error("paper missing from similarity graph");
  return static_cast<std::uint32_t>(it - g.papers.begin());
}

std::vector<std::vector<std::uint32_t>> groups_from_dsu(
    detail::UnionFind& dsu, const std::vector<std::uint32_t>& papers) {
  std::unordered_map<std::uint32_t, std::uint32_t> root_to_group;
  std::vector<std::vector<std::uint32_t>> groups;
  for (std::uint32_t k = 0; k < papers.size(); ++k) {
    std::uint32_t r = dsu.find(k);
    auto [it, fresh] =
        root_to_group.emplace(r, static_cast<std::uint32_t>(groups.size()));
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(papers[k]);
  }
  return groups;
}

}  // namespace

Clustering step1_components(const SimilarityGraph& graph,
                            const DisambiguationParams& params) {
  params.validate();
  detail::UnionFind dsu(graph.papers.size());
  for (const auto& link : graph.links)
    if (score(link, params) > DisambiguationParams::beta1)
      dsu.unite(local_index(graph, link.i), local_index(graph, link.j));
  return detail::canonicalize(graph.block_key,
                              groups_from_dsu(dsu, graph.papers));
}

double cluster_similarity(const Cluster& gamma, const Cluster& kappa,
                          const SimilarityGraph& graph,
                          const DisambiguationParams& params) {
  if (gamma.papers.empty() || kappa.papers.empty())
    throw std::invalid_argument("cluster_similarity: empty cluster");
  double sum = 0.0;
  for (std::uint32_t a : gamma.papers) {
    for (std::uint32_t b : kappa.papers) {
      if (a == b) throw std::invalid_argument("cluster_similarity: overlap");
      if (const LinkTerms* t = find_link(graph, a, b)) {
        double s = score(*t, params);
        if (s > params.beta2) sum += s;
      }
    }
  }
  return sum / (static_cast<double>(gamma.papers.size()) *
                static_cast<double>(kappa.papers.size()));
}

Clustering merge_clusters(const Clustering& step1, const SimilarityGraph& graph,
                          const DisambiguationParams& params) {
  params.validate();
  const auto& clusters = step1.clusters;
  // cluster index per local paper
  std::vector<std::uint32_t> cluster_of(graph.papers.size(), 0);
  for (std::uint32_t c = 0; c < clusters.size(); ++c)
    for (std::uint32_t p : clusters[c].papers)
      cluster_of[local_index(graph, p)] = c;

  // One pass over stored links accumulates the gated cross-cluster sums of
  // the cluster-similarity formula; every cluster pair without links has
  // similarity 0 and can't merge, so the pass is exhaustive.
  std::unordered_map<std::uint64_t, double> sums;
  for (const auto& link : graph.links) {
    double s = score(link, params);
    if (s <= params.beta2) continue;
    std::uint32_t ca = cluster_of[local_index(graph, link.i)];
    std::uint32_t cb = cluster_of[local_index(graph, link.j)];
    if (ca == cb) continue;
    if (ca > cb) std::swap(ca, cb);
    sums[(static_cast<std::uint64_t>(ca) << 32) | cb] += s;
  }

  detail::UnionFind dsu(clusters.size());
  for (const auto& [key, sum] : sums) {
    auto ca = static_cast<std::uint32_t>(key >> 32);
    auto cb = static_cast<std::uint32_t>(key & 0xffffffffu);
    double denom = static_cast<double>(clusters[ca].papers.size()) *
                   static_cast<double>(clusters[cb].papers.size());
    if (sum / denom > params.beta3) dsu.unite(ca, cb);
  }

  std::vector<std::vector<std::uint32_t>> groups(clusters.size());
  for (std::uint32_t c = 0; c < clusters.size(); ++c) {
    std::uint32_t r = dsu.find(c);
    auto& dst = groups[r];
    dst.insert(dst.end(), clusters[c].papers.begin(), clusters[c].papers.end());
  }
  return detail::canonicalize(step1.block_key, std::move(groups));
}

Clustering step2_merge(const Clustering& step1, const SimilarityGraph& graph,
                       const DisambiguationParams& params) {
  Clustering merged = merge_clusters(step1, graph, params);
  const auto& clusters = merged.clusters;

  std::vector<std::uint32_t> cluster_of(graph.papers.size(), 0);
  for (std::uint32_t c = 0; c < clusters.size(); ++c)
    for (std::uint32_t p : clusters[c].papers)
      cluster_of[local_index(graph, p)] = c;

  // Best attachment target per still-singleton paper: strongest link above
  // beta4 into another cluster, ties to the smaller cluster_id. All
  // attachments are decided against the merged partition, then applied at
  // once (mutually attaching singletons just end up united).
  struct Target {
    double s = -1.0;
    std::uint32_t cluster = 0;
  };
  std::unordered_map<std::uint32_t, Target> best;  // keyed by cluster index
  auto consider = [&](std::uint32_t singleton_cluster, double s,
                      std::uint32_t target_cluster) {
    auto& t = best[singleton_cluster];
    if (s > t.s || (s == t.s && target_cluster < t.cluster)) {
      t.s = s;
      t.cluster = target_cluster;
    }
  };
  for (const auto& link : graph.links) {
    double s = score(link, params);
    if (s <= params.beta4) continue;
    std::uint32_t ca = cluster_of[local_index(graph, link.i)];
    std::uint32_t cb = cluster_of[local_index(graph, link.j)];
    if (ca == cb) continue;
    if (clusters[ca].papers.size() == 1) consider(ca, s, cb);
    if (clusters[cb].papers.size() == 1) consider(cb, s, ca);
  }

  detail::UnionFind dsu(clusters.size());
  for (const auto& [singleton_cluster, target] : best)
    dsu.unite(singleton_cluster, target.cluster);

  std::vector<std::vector<std::uint32_t>> groups(clusters.size());
  for (std::uint32_t c = 0; c < clusters.size(); ++c) {
    std::uint32_t r = dsu.find(c);
    auto& dst = groups[r];
    dst.insert(dst.end(), clusters[c].papers.begin(), clusters[c].papers.end());
  }
  return detail::canonicalize(merged.block_key, std::move(groups));
}

Clustering disambiguate_block(const Corpus& corpus, const NameBlock& block,
                              const DisambiguationParams& params,
                              int year_gap) {
  params.validate();
  if (block.members.empty()) return Clustering{block.key, {}};
  SimilarityGraph graph = compute_terms(corpus, block, year_gap);
  return step2_merge(step1_components(graph, params), graph, params);
}

}  // namespace disamb
