// Seeded synthetic bibliography with known per-mention author labels, so
// clustering and metrics can be scored against exact ground truth.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "disamb/corpus.hpp"

namespace disamb {

struct SynthConfig {
  std::uint32_t authors = 2000;
  std::uint32_t surname_pool = 500;   // smaller pool -> more name collisions
  double papers_per_author_mean = 8.0;  // exponential, rounded, floor 1
  int career_span = 15;               // years an author stays active
  int year_min = 1970;
  int year_max = 2010;
  double coauthors_mean = 2.5;        // Poisson, capped by collaborator circle
  std::uint32_t refs_per_paper = 10;  // target; capped by available papers
  double p_self = 0.30;               // cite own earlier paper
  double p_community = 0.35;          // cite within coauthor community
  double p_random = 0.35;             // cite anything earlier
  double missing_initial_rate = 0.05;
  double second_initial_rate = 0.5;   // share of authors owning one
  std::uint32_t community_size = 40;  // authors per coauthor pool; loose
                                      // enough that no single citation
                                      // pattern identifies an author alone
  bool noisy_profiles = false;        // emit raw entries instead of paper ids
  double title_typo_rate = 0.1;       // noisy mode only
  std::uint64_t seed = 7;

  void validate() const;  // throws std::invalid_argument
};

struct TruthEntry {
  PaperId paper_id = 0;
  std::uint16_t author_position = 0;
  std::uint32_t true_author_id = 0;
};

struct ResolvedProfile {
  std::string profile_id;
  std::string surname;
  std::vector<PaperId> paper_ids;  // sorted
};

struct SynthOutput {
  std::vector<PaperRecord> papers;          // ids 1..N, ascending by year
  std::vector<TruthEntry> truth;            // one entry per mention
  std::vector<ResolvedProfile> profiles;    // per author, all their papers
  std::vector<RawProfile> raw_profiles;     // noisy mode only
};

// Deterministic for a fixed config. Citations point only at earlier papers
// (strictly smaller id, never a later year); the self-citation category
// targets the citing author's own earlier papers.
SynthOutput generate(const SynthConfig& config);

}  // namespace disamb
