#include "disamb/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "disamb/common.hpp"

namespace disamb {
namespace {

struct RangeView {
  const ParamRange* r;
  double DisambiguationParams::*field;
};

// Fixed dimension order; every sampling routine draws in this order so a
// seed defines the sample stream exactly.
std::array<RangeView, 7> dims(const ParamSpace& s) {
  return {{{&s.alpha_a, &DisambiguationParams::alpha_a},
           {&s.alpha_s, &DisambiguationParams::alpha_s},
           {&s.alpha_r, &DisambiguationParams::alpha_r},
           {&s.alpha_c, &DisambiguationParams::alpha_c},
           {&s.beta2, &DisambiguationParams::beta2},
           {&s.beta3, &DisambiguationParams::beta3},
           {&s.beta4, &DisambiguationParams::beta4}}};
}

DisambiguationParams sample_uniform(const ParamSpace& s, Rng& rng) {
  DisambiguationParams p;
  for (const auto& d : dims(s)) p.*(d.field) = rng.uniform(d.r->lo, d.r->hi);
  return p;
}

double scalar_objective(double p_error, double rh_error, double weight) {
  return weight * rh_error + (1.0 - weight) * p_error;
}

}  // namespace

void ParamSpace::validate() const {
  for (const auto& d : dims(*this)) {
    if (!std::isfinite(d.r->lo) || !std::isfinite(d.r->hi) ||
        d.r->lo > d.r->hi || d.r->lo < 0.0)
      throw std::invalid_argument("parameter range must satisfy 0 <= lo <= hi");
  }
}

DisambiguationParams ParamSpace::clip(DisambiguationParams p) const {
  for (const auto& d : dims(*this))
    p.*(d.field) = std::clamp(p.*(d.field), d.r->lo, d.r->hi);
  return p;
}

std::string FeatureMask::name() const {
  if (coauthor && self_cite && shared_refs && cocitation) return "all";
  std::string s;
  if (coauthor) s += "a";
  if (self_cite) s += "s";
  if (shared_refs) s += "r";
  if (cocitation) s += "c";
  return s.empty() ? "none" : s;
}

ParamSpace apply_mask(ParamSpace space, const FeatureMask& mask) {
  if (!mask.coauthor) space.alpha_a = {0.0, 0.0};
  if (!mask.self_cite) space.alpha_s = {0.0, 0.0};
  if (!mask.shared_refs) space.alpha_r = {0.0, 0.0};
  if (!mask.cocitation) space.alpha_c = {0.0, 0.0};
  return space;
}

EvalSet build_eval_set(const Corpus& corpus, std::vector<GoldProfile> profiles,
                       int year_gap, int threads) {
  EvalSet es;
  es.corpus = &corpus;
  es.blocks = build_blocks(corpus, KeyMode::SurnameOnly);
  es.graphs.resize(es.blocks.size());
  parallel_for(es.blocks.size(), threads, [&](std::size_t k) {
    es.graphs[k] = compute_terms(corpus, es.blocks[k], year_gap);
  });
  es.profiles = std::move(profiles);
  return es;
}

std::pair<double, double> evaluate(const DisambiguationParams& params,
                                   const EvalSet& eval_set) {
  params.validate();
  std::vector<Clustering> clusterings(eval_set.blocks.size());
  for (std::size_t k = 0; k < eval_set.blocks.size(); ++k)
    clusterings[k] = step2_merge(
        step1_components(eval_set.graphs[k], params), eval_set.graphs[k],
        params);
  EvalResult r = aggregate_errors(clusterings, eval_set.blocks,
                                  eval_set.profiles, *eval_set.corpus);
  return {r.p_error, r.rh_error};
}

ErrorFn make_objective(const EvalSet& eval_set) {
  return [&eval_set](const DisambiguationParams& p) {
    return evaluate(p, eval_set);
  };
}

std::vector<SearchResult> random_search(const ParamSpace& space, std::size_t n,
                                        std::uint64_t seed, double weight,
                                        const ErrorFn& errors, int threads) {
  space.validate();
  if (n == 0) throw std::invalid_argument("random_search: n must be >= 1");
  Rng rng(seed);
  std::vector<DisambiguationParams> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) samples.push_back(sample_uniform(space, rng));

  std::vector<SearchResult> results(n);
  parallel_for(n, threads, [&](std::size_t i) {
    auto [pe, rhe] = errors(samples[i]);
    results[i] = {samples[i], pe,   rhe, scalar_objective(pe, rhe, weight),
                  i,          seed, weight};
  });
  return results;
}

const SearchResult& best_result(std::span<const SearchResult> results) {
  if (results.empty())
    throw std::invalid_argument("best_result: empty result list");
  const SearchResult* best = &results[0];
  for (const auto& r : results)
    if (r.objective < best->objective) best = &r;
  return *best;
}

SearchResult local_search(const DisambiguationParams& start,
                          const ParamSpace& space,
                          const LocalSearchSchedule& schedule,
                          std::uint64_t seed, double weight,
                          const ErrorFn& errors, int threads) {
  space.validate();
  if (schedule.probes < 1 || schedule.shrink <= 0.0 || schedule.shrink >= 1.0)
    throw std::invalid_argument("local_search: bad schedule");
  Rng rng(seed);
  auto dim_views = dims(space);

  DisambiguationParams cur = space.clip(start);
  auto [cur_p, cur_rh] = errors(cur);
  double cur_obj = scalar_objective(cur_p, cur_rh, weight);
  std::uint64_t evals = 1;

  double radius = schedule.initial_radius;
  for (int iter = 0; iter < schedule.max_iters && radius >= schedule.min_radius;
       ++iter) {
    // Probe points on the sphere of the current radius, one uniform
    // direction per probe, in coordinates scaled by each range's width.
    std::vector<DisambiguationParams> probes(schedule.probes);
    for (auto& probe : probes) {
      std::array<double, 7> dir;
      double norm2 = 0.0;
      for (double& d : dir) {
        d = rng.normal();
        norm2 += d * d;
      }
      double norm = std::sqrt(norm2);
      probe = cur;
      if (norm > 0.0) {
        for (std::size_t k = 0; k < dir.size(); ++k) {
          const auto& dv = dim_views[k];
          double width = dv.r->hi - dv.r->lo;
          probe.*(dv.field) += radius * (dir[k] / norm) * width;
        }
        probe = space.clip(probe);
      }
    }
    std::vector<double> objs(probes.size());
    std::vector<std::pair<double, double>> errpairs(probes.size());
    parallel_for(probes.size(), threads, [&](std::size_t i) {
      errpairs[i] = errors(probes[i]);
      objs[i] = scalar_objective(errpairs[i].first, errpairs[i].second, weight);
    });
    evals += probes.size();

    std::size_t best = 0;
    for (std::size_t i = 1; i < objs.size(); ++i)
      if (objs[i] < objs[best]) best = i;
    if (objs[best] < cur_obj) {
      cur = probes[best];
      cur_p = errpairs[best].first;
      cur_rh = errpairs[best].second;
      cur_obj = objs[best];
    } else {
      radius *= schedule.shrink;
    }
  }
  return {cur, cur_p, cur_rh, cur_obj, evals, seed, weight};
}

std::vector<HullPoint> lower_hull(std::span<const SearchResult> results) {
  std::vector<std::size_t> order(results.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (results[a].p_error != results[b].p_error)
      return results[a].p_error < results[b].p_error;
    if (results[a].rh_error != results[b].rh_error)
      return results[a].rh_error < results[b].rh_error;
    return a < b;
  });
  std::vector<HullPoint> hull;
  double min_rh = std::numeric_limits<double>::infinity();
  for (std::size_t i : order) {
    if (results[i].rh_error < min_rh) {
      hull.push_back({results[i].p_error, results[i].rh_error, i});
      min_rh = results[i].rh_error;
    }
  }
  return hull;
}

double hull_rh_at(std::span<const HullPoint> hull, double p) {
  // hull is sorted by p_error ascending with strictly decreasing rh_error
  double best = std::numeric_limits<double>::infinity();
  for (const auto& h : hull) {
    if (h.p_error > p) break;
    best = h.rh_error;
  }
  return best;
}

std::vector<AblationRun> ablation_runs(const ParamSpace& space,
                                       std::span<const FeatureMask> masks,
                                       std::size_t n, std::uint64_t seed,
                                       double weight, const ErrorFn& errors,
                                       int threads) {
  std::vector<AblationRun> runs;
  runs.reserve(masks.size());
  for (std::size_t k = 0; k < masks.size(); ++k) {
    AblationRun run;
    run.mask = masks[k];
    std::uint64_t run_seed = seed ^ (0x9e3779b97f4a7c15ull * (k + 1));
    run.results = random_search(apply_mask(space, masks[k]), n, run_seed,
                                weight, errors, threads);
    run.hull = lower_hull(run.results);
    runs.push_back(std::move(run));
  }
  return runs;
}

}  // namespace disamb
