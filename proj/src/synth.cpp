#include "disamb/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "disamb/common.hpp"

namespace disamb {
namespace {

const char* kSyllables[] = {
    "ba", "be", "bo", "da", "del", "dor", "fa", "gar", "gen", "ha",
    "kel", "kin", "la", "lan", "lor", "ma", "mer", "mi", "na", "nor",
    "pe", "ran", "ri", "sa", "sel", "sto", "ta", "tor", "va", "ven",
    "vi", "wal", "wen", "yu", "zan", "zu"};
constexpr std::uint32_t kSyllableCount = 36;

std::string pool_surname(std::uint32_t i) {
  std::string s;
  s += kSyllables[i % kSyllableCount];
  s += kSyllables[(i / kSyllableCount) % kSyllableCount];
  s += kSyllables[(i / (kSyllableCount * kSyllableCount)) % kSyllableCount];
  std::uint32_t wrap = i / (kSyllableCount * kSyllableCount * kSyllableCount);
  if (wrap > 0) s += std::to_string(wrap);
  return s;
}

const char* kTitleWords[] = {
    "stability",   "dynamics",  "networks",   "scaling",   "diffusion",
    "resonance",   "entropy",   "clusters",   "lattices",  "membranes",
    "catalysis",   "symmetry",  "turbulence", "growth",    "transport",
    "interfaces",  "polymers",  "plasmas",    "signaling", "kinetics",
    "percolation", "relaxation", "adsorption", "screening"};
constexpr std::uint32_t kTitleWordCount = 24;

const char* kJournals[] = {"annals of %",      "journal of %",
                           "letters on %",     "reviews of %",
                           "archive for %",    "bulletin of %",
                           "advances in %",    "transactions on %"};
constexpr std::uint32_t kJournalCount = 8;

struct AuthorSpec {
  std::uint32_t surname_idx = 0;
  char first_initial = '\0';
  char second_initial = '\0';  // '\0' when the author has none
  int start_year = 0;
  std::uint32_t n_papers = 0;
  std::uint32_t community = 0;
  std::vector<std::uint32_t> circle;  // recurring collaborators
};

}  // namespace

void SynthConfig::validate() const {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (authors == 0) throw std::invalid_argument("synth: authors must be > 0");
  if (surname_pool == 0)
    throw std::invalid_argument("synth: surname_pool must be > 0");
  if (!(papers_per_author_mean > 0.0))
    throw std::invalid_argument("synth: papers_per_author_mean must be > 0");
  if (career_span < 1)
    throw std::invalid_argument("synth: career_span must be >= 1");
  if (year_max - year_min + 1 < career_span)
    throw std::invalid_argument("synth: year range shorter than career span");
  if (!(coauthors_mean >= 0.0))
    throw std::invalid_argument("synth: coauthors_mean must be >= 0");
  if (!prob(p_self) || !prob(p_community) || !prob(p_random) ||
      std::abs(p_self + p_community + p_random - 1.0) > 1e-9)
    throw std::invalid_argument("synth: citation probabilities must sum to 1");
  if (!prob(missing_initial_rate) || !prob(second_initial_rate) ||
      !prob(title_typo_rate))
    throw std::invalid_argument("synth: rates must lie in [0,1]");
  if (community_size == 0)
    throw std::invalid_argument("synth: community_size must be > 0");
}

SynthOutput generate(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);

  // Zipf(1) cumulative weights over the surname pool.
  std::vector<double> zipf_cum(config.surname_pool);
  {
    double acc = 0.0;
    for (std::uint32_t r = 0; r < config.surname_pool; ++r) {
      acc += 1.0 / static_cast<double>(r + 1);
      zipf_cum[r] = acc;
    }
  }
  auto draw_surname = [&]() -> std::uint32_t {
    double u = rng.u01() * zipf_cum.back();
    auto it = std::upper_bound(zipf_cum.begin(), zipf_cum.end(), u);
    if (it == zipf_cum.end()) --it;
    return static_cast<std::uint32_t>(it - zipf_cum.begin());
  };

  std::vector<AuthorSpec> authors(config.authors);
  // Latest start year that still fits a full career in [year_min, year_max].
  int start_range = config.year_max - config.year_min - config.career_span + 2;
  for (auto& a : authors) {
    a.surname_idx = draw_surname();
    a.first_initial = static_cast<char>('a' + rng.below(26));
    if (rng.u01() < config.second_initial_rate)
      a.second_initial = static_cast<char>('a' + rng.below(26));
    a.n_papers = static_cast<std::uint32_t>(
        std::max<long long>(1, std::llround(rng.expo(config.papers_per_author_mean))));
    a.start_year = config.year_min + static_cast<int>(rng.below(start_range));
  }
  // Communities draw disproportionately from few surnames — labs and
  // geography correlate family names with collaboration circles — so name
  // blocks contain internally coupled distinct authors, while authors of
  // unrelated surnames rarely share a circle. Half the population sorts by
  // surname, the other half scatters uniformly.
  {
    std::vector<std::pair<double, std::uint32_t>> slots(config.authors);
    for (std::uint32_t i = 0; i < config.authors; ++i) {
      double key = rng.u01() < 0.5
                       ? static_cast<double>(authors[i].surname_idx) + rng.u01()
                       : rng.u01() * static_cast<double>(config.surname_pool);
      slots[i] = {key, i};
    }
    std::sort(slots.begin(), slots.end());
    for (std::uint32_t k = 0; k < config.authors; ++k)
      authors[slots[k].second].community = k / config.community_size;
  }

  // Collaboration is persistent: each author works with a small recurring
  // circle inside the community rather than with arbitrary members, so one
  // person's papers share coauthors while two people's rarely do.
  constexpr std::uint32_t kCircleSize = 8;
  {
    std::uint32_t n_comm =
        (config.authors + config.community_size - 1) / config.community_size;
    std::vector<std::vector<std::uint32_t>> members(n_comm);
    for (std::uint32_t i = 0; i < config.authors; ++i)
      members[authors[i].community].push_back(i);
    std::vector<std::uint32_t> peers;
    for (std::uint32_t i = 0; i < config.authors; ++i) {
      peers.clear();
      for (std::uint32_t j : members[authors[i].community])
        if (j != i) peers.push_back(j);
      std::uint32_t take =
          std::min<std::uint32_t>(kCircleSize, static_cast<std::uint32_t>(peers.size()));
      for (std::uint32_t k = 0; k < take; ++k) {
        auto j = k + rng.below(peers.size() - k);
        std::swap(peers[k], peers[j]);
      }
      authors[i].circle.assign(peers.begin(), peers.begin() + take);
    }
  }

  // Plan one entry per paper, then order chronologically and hand out ids.
  struct Plan {
    int year;
    std::uint32_t owner;
    std::uint32_t seq;
  };
  std::vector<Plan> plan;
  for (std::uint32_t i = 0; i < config.authors; ++i)
    for (std::uint32_t k = 0; k < authors[i].n_papers; ++k)
      plan.push_back({authors[i].start_year +
                          static_cast<int>(rng.below(config.career_span)),
                      i, k});
  std::sort(plan.begin(), plan.end(), [](const Plan& a, const Plan& b) {
    if (a.year != b.year) return a.year < b.year;
    if (a.owner != b.owner) return a.owner < b.owner;
    return a.seq < b.seq;
  });
  if (config.refs_per_paper > 0 && plan.size() < 2)
    throw std::invalid_argument("synth: references requested but corpus cannot"
                                " contain earlier papers");

  SynthOutput out;
  out.papers.reserve(plan.size());
  out.truth.reserve(plan.size() * 3);
  std::vector<std::vector<std::uint32_t>> papers_of_author(config.authors);
  std::uint32_t n_communities =
      (config.authors + config.community_size - 1) / config.community_size;
  std::vector<std::vector<std::uint32_t>> papers_of_community(n_communities);
  std::vector<std::vector<PaperId>> mentions_of_author(config.authors);

  std::vector<std::uint32_t> peers;    // scratch
  std::vector<std::uint32_t> members;  // scratch: author list of one paper
  for (std::uint32_t p = 0; p < plan.size(); ++p) {
    std::uint32_t owner = plan[p].owner;
    const AuthorSpec& os = authors[owner];
    PaperRecord rec;
    rec.id = static_cast<PaperId>(p) + 1;
    rec.year = plan[p].year;

    // Coauthors: a Poisson number of distinct circle members.
    peers.assign(os.circle.begin(), os.circle.end());
    std::uint32_t n_co = std::min<std::uint32_t>(rng.poisson(config.coauthors_mean),
                                                 static_cast<std::uint32_t>(peers.size()));
    for (std::uint32_t k = 0; k < n_co; ++k) {
      auto j = k + rng.below(peers.size() - k);
      std::swap(peers[k], peers[j]);
    }
    members.assign(peers.begin(), peers.begin() + n_co);
    members.push_back(owner);
    // Author order on the byline is random.
    for (std::size_t k = members.size(); k > 1; --k) {
      auto j = rng.below(k);
      std::swap(members[k - 1], members[j]);
    }

    for (std::uint16_t pos = 0; pos < members.size(); ++pos) {
      const AuthorSpec& as = authors[members[pos]];
      AuthorMention m;
      m.surname = pool_surname(as.surname_idx);
      bool show_first = rng.u01() >= config.missing_initial_rate;
      if (show_first) {
        m.first_initial = as.first_initial;
        if (as.second_initial != '\0' &&
            rng.u01() >= config.missing_initial_rate)
          m.second_initial = as.second_initial;
      }
      rec.authors.push_back(std::move(m));
      out.truth.push_back({rec.id, pos, members[pos]});
      mentions_of_author[members[pos]].push_back(rec.id);
    }

    // References: categories self / community / anywhere, all strictly
    // earlier (smaller id, hence not a later year).
    if (p > 0 && config.refs_per_paper > 0) {
      std::vector<PaperId> refs;
      std::uint32_t attempts = 0;
      std::uint32_t max_attempts = config.refs_per_paper * 3;
      const auto& own = papers_of_author[owner];
      const auto& comm = papers_of_community[os.community];
      while (refs.size() < config.refs_per_paper && attempts < max_attempts) {
        ++attempts;
        double u = rng.u01();
        std::uint32_t target;
        if (u < config.p_self && !own.empty()) {
          target = own[rng.below(own.size())];
        } else if (u < config.p_self + config.p_community && !comm.empty()) {
          target = comm[rng.below(comm.size())];
        } else {
          target = static_cast<std::uint32_t>(rng.below(p));
        }
        PaperId id = static_cast<PaperId>(target) + 1;
        if (std::find(refs.begin(), refs.end(), id) == refs.end())
          refs.push_back(id);
      }
      std::sort(refs.begin(), refs.end());
      rec.refs = std::move(refs);
    }

    rec.title = std::string("on the ") +
                kTitleWords[rng.below(kTitleWordCount)] + " of " +
                kTitleWords[rng.below(kTitleWordCount)] + " and " +
                kTitleWords[rng.below(kTitleWordCount)];
    std::string jpat = kJournals[rng.below(kJournalCount)];
    rec.journal = jpat.substr(0, jpat.size() - 1) +
                  kTitleWords[rng.below(kTitleWordCount)];

    papers_of_author[owner].push_back(p);
    papers_of_community[os.community].push_back(p);
    out.papers.push_back(std::move(rec));
  }

  // One profile per author: every paper that carries one of their mentions.
  for (std::uint32_t i = 0; i < config.authors; ++i) {
    ResolvedProfile prof;
    prof.profile_id = "author-" + std::to_string(i);
    prof.surname = pool_surname(authors[i].surname_idx);
    prof.paper_ids = mentions_of_author[i];
    std::sort(prof.paper_ids.begin(), prof.paper_ids.end());
    out.profiles.push_back(std::move(prof));
  }

  if (config.noisy_profiles) {
    for (const auto& prof : out.profiles) {
      RawProfile rp;
      rp.profile_id = prof.profile_id;
      rp.surname = prof.surname;
      for (PaperId id : prof.paper_ids) {
        const PaperRecord& rec = out.papers[static_cast<std::size_t>(id - 1)];
        RawProfileEntry e;
        e.year = rec.year;
        e.title = rec.title;
        if (rng.u01() < config.title_typo_rate && !e.title.empty()) {
          auto pos = rng.below(e.title.size());
          e.title[pos] = static_cast<char>('a' + rng.below(26));
        }
        e.journal = rec.journal;
        for (const auto& m : rec.authors) e.surnames.push_back(m.surname);
        rp.entries.push_back(std::move(e));
      }
      out.raw_profiles.push_back(std::move(rp));
    }
  }
  return out;
}

}  // namespace disamb
