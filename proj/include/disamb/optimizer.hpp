// Parameter search: random sampling and sphere local search over the
// 7-dimensional weight/threshold space, evaluation against cached term
// graphs, and Pareto lower hulls for feature-ablation comparisons.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "disamb/clustering.hpp"
#include "disamb/metrics.hpp"

namespace disamb {

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct ParamSpace {
  ParamRange alpha_a{0.0, 2.0};
  ParamRange alpha_s{0.0, 2.0};
  ParamRange alpha_r{0.0, 2.0};
  ParamRange alpha_c{0.0, 2.0};
  ParamRange beta2{0.0, 1.0};
  ParamRange beta3{0.0, 0.2};
  ParamRange beta4{0.0, 2.0};

  void validate() const;
  DisambiguationParams clip(DisambiguationParams p) const;
};

// Which similarity terms a search may weight; disabled terms get their
// alpha range pinned to {0,0}.
struct FeatureMask {
  bool coauthor = true;
  bool self_cite = true;
  bool shared_refs = true;
  bool cocitation = true;

  std::string name() const;
};

ParamSpace apply_mask(ParamSpace space, const FeatureMask& mask);

// (p_error, rh_error) for a parameter vector; the library objective reuses
// precomputed graphs, tests may substitute surrogates.
using ErrorFn =
    std::function<std::pair<double, double>(const DisambiguationParams&)>;

// Everything evaluate() needs, precomputed once: SurnameOnly blocks, their
// term graphs, and gold profiles. Re-scoring a parameter vector never
// touches the corpus text again.
struct EvalSet {
  const Corpus* corpus = nullptr;
  std::vector<NameBlock> blocks;
  std::vector<SimilarityGraph> graphs;  // parallel to blocks
  std::vector<GoldProfile> profiles;
};

EvalSet build_eval_set(const Corpus& corpus, std::vector<GoldProfile> profiles,
                       int year_gap = 5, int threads = 1);

std::pair<double, double> evaluate(const DisambiguationParams& params,
                                   const EvalSet& eval_set);

ErrorFn make_objective(const EvalSet& eval_set);

struct SearchResult {
  DisambiguationParams params;
  double p_error = 0.0;
  double rh_error = 0.0;
  double objective = 0.0;  // weight*rh_error + (1-weight)*p_error
  std::uint64_t evaluations = 0;
  std::uint64_t seed = 0;
  double weight = 0.5;
};

// n uniform draws over the space; deterministic for a fixed seed and
// independent of the thread count (samples are drawn up front, results
// keyed by sample index).
std::vector<SearchResult> random_search(const ParamSpace& space, std::size_t n,
                                        std::uint64_t seed, double weight,
                                        const ErrorFn& errors, int threads = 1);

// Smallest objective, ties to the earliest result.
const SearchResult& best_result(std::span<const SearchResult> results);

struct LocalSearchSchedule {
  double initial_radius = 0.25;  // in range-normalized coordinates
  double shrink = 0.5;
  double min_radius = 1e-3;
  int probes = 20;
  int max_iters = 100;
};

// Probes points on the sphere of the current radius around the incumbent
// (coordinates scaled by each parameter's range, then clipped); moves on
// strict improvement, shrinks otherwise. Never returns anything worse than
// the start.
SearchResult local_search(const DisambiguationParams& start,
                          const ParamSpace& space,
                          const LocalSearchSchedule& schedule,
                          std::uint64_t seed, double weight,
                          const ErrorFn& errors, int threads = 1);

struct HullPoint {
  double p_error = 0.0;
  double rh_error = 0.0;
  std::size_t index = 0;  // position in the source result list
};

// Staircase Pareto frontier: the points not weakly dominated by any other
// (duplicates collapse to their first occurrence), sorted by p_error
// ascending / rh_error descending.
std::vector<HullPoint> lower_hull(std::span<const SearchResult> results);

// Smallest rh_error among hull points with p_error <= p; +inf when the
// hull has no point there.
double hull_rh_at(std::span<const HullPoint> hull, double p);

struct AblationRun {
  FeatureMask mask;
  std::vector<SearchResult> results;
  std::vector<HullPoint> hull;
};

// One random_search per mask (seeds decorrelated per subset), each with its
// lower hull.
std::vector<AblationRun> ablation_runs(const ParamSpace& space,
                                       std::span<const FeatureMask> masks,
                                       std::size_t n, std::uint64_t seed,
                                       double weight, const ErrorFn& errors,
                                       int threads = 1);

}  // namespace disamb
