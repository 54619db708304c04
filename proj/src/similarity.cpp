#include "disamb/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace disamb {
namespace {

std::uint32_t intersection_size(const std::vector<std::uint32_t>& a,
                                const std::vector<std::uint32_t>& b) {
  std::uint32_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

bool contains(const std::vector<std::uint32_t>& sorted, std::uint32_t x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace

void DisambiguationParams::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!ok(alpha_a) || !ok(alpha_s) || !ok(alpha_r) || !ok(alpha_c) ||
      !ok(beta2) || !ok(beta3) || !ok(beta4))
    throw std::invalid_argument(
        "disambiguation parameters must be finite and non-negative");
}

SimilarityGraph compute_terms(const Corpus& corpus, const NameBlock& block,
                              int year_gap) {
  SimilarityGraph g;
  g.block_key = block.key;
  g.papers.reserve(block.members.size());
  for (const auto& m : block.members) g.papers.push_back(m.paper);
  std::sort(g.papers.begin(), g.papers.end());
  g.papers.erase(std::unique(g.papers.begin(), g.papers.end()),
                 g.papers.end());
  if (g.papers.size() < 2) return g;

  // Per paper: coauthor identities (surname + first initial) with every
  // mention matching the block's key(s) removed.
  const bool surname_mode = block.mode == KeyMode::SurnameOnly;
  std::vector<std::vector<std::uint32_t>> coauthors(g.papers.size());
  for (std::size_t k = 0; k < g.papers.size(); ++k) {
    std::uint32_t p = g.papers[k];
    const auto& match_keys =
        surname_mode ? corpus.surname_keys(p) : corpus.full_keys(p);
    const auto& ident = corpus.full_keys(p);
    auto& out = coauthors[k];
    for (std::size_t pos = 0; pos < ident.size(); ++pos) {
      if (block.is_focal(match_keys[pos])) continue;
      out.push_back(ident[pos]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }

  // Sweep papers in year order so the gap filter bounds the inner loop.
  std::vector<std::uint32_t> order(g.papers.size());
  for (std::uint32_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    int ya = corpus.paper(g.papers[a]).year;
    int yb = corpus.paper(g.papers[b]).year;
    return ya != yb ? ya < yb : g.papers[a] < g.papers[b];
  });

  for (std::size_t a = 0; a < order.size(); ++a) {
    std::uint32_t ka = order[a];
    int ya = corpus.paper(g.papers[ka]).year;
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      std::uint32_t kb = order[b];
      if (corpus.paper(g.papers[kb]).year - ya > year_gap) break;
      std::uint32_t lo = std::min(ka, kb);
      std::uint32_t hi = std::max(ka, kb);
      std::uint32_t pi = g.papers[lo];
      std::uint32_t pj = g.papers[hi];

      LinkTerms t;
      t.i = pi;
      t.j = pj;
      const auto& ca = coauthors[lo];
      const auto& cb = coauthors[hi];
      if (!ca.empty() && !cb.empty()) {
        std::uint32_t inter = intersection_size(ca, cb);
        if (inter)
          t.coauthor_overlap = static_cast<double>(inter) /
                               static_cast<double>(std::min(ca.size(), cb.size()));
      }
      t.self_cite_count =
          static_cast<std::uint8_t>((contains(corpus.refs_of(pj), pi) ? 1 : 0) +
                                    (contains(corpus.refs_of(pi), pj) ? 1 : 0));
      t.shared_refs = intersection_size(corpus.refs_of(pi), corpus.refs_of(pj));
      const auto& ci = corpus.citers_of(pi);
      const auto& cj = corpus.citers_of(pj);
      if (!ci.empty() && !cj.empty()) {
        std::uint32_t inter = intersection_size(ci, cj);
        if (inter)
          t.cocitation_overlap = static_cast<double>(inter) /
                                 static_cast<double>(std::min(ci.size(), cj.size()));
      }
      if (t.coauthor_overlap > 0 || t.self_cite_count > 0 ||
          t.shared_refs > 0 || t.cocitation_overlap > 0)
        g.links.push_back(t);
    }
  }
  std::sort(g.links.begin(), g.links.end(),
            [](const LinkTerms& x, const LinkTerms& y) {
              return x.i != y.i ? x.i < y.i : x.j < y.j;
            });
  return g;
}

const LinkTerms* find_link(const SimilarityGraph& graph, std::uint32_t i,
                           std::uint32_t j) {
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(graph.links.begin(), graph.links.end(),
                             std::make_pair(i, j),
                             [](const LinkTerms& t, std::pair<std::uint32_t,
                                                              std::uint32_t> key) {
                               return t.i != key.first ? t.i < key.first
                                                       : t.j < key.second;
                             });
  if (it == graph.links.end() || it->i != i || it->j != j) return nullptr;
  return &*it;
}

}  // namespace disamb
