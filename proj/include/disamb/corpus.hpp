// Paper corpus: records, name normalization, citation index, name blocks,
// and matching of external publication profiles onto corpus papers.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "disamb/common.hpp"

namespace disamb {

// One author slot on a paper. Names are stored normalized (lowercase,
// diacritics folded, separators collapsed); initials are single letters,
// '\0' when absent.
struct AuthorMention {
  std::string surname;
  char first_initial = '\0';
  char second_initial = '\0';

  bool has_first() const { return first_initial != '\0'; }
  bool has_second() const { return second_initial != '\0'; }
};

struct PaperRecord {
  PaperId id = 0;
  int year = 0;
  std::vector<AuthorMention> authors;
  std::vector<PaperId> refs;  // outbound citations, by external id
  std::string title;          // empty = absent
  std::string journal;        // empty = absent
};

struct LoadReport {
  std::size_t papers = 0;
  std::size_t dangling_refs = 0;  // refs to ids not in the corpus (dropped)
  std::size_t self_refs = 0;      // refs of a paper to itself (dropped)
};

// Lowercase, fold Latin-1 / Latin Extended-A diacritics to ASCII, collapse
// runs of whitespace and hyphens to a single space, trim. Unknown
// codepoints pass through untouched.
std::string normalize_name(std::string_view raw);

// Immutable corpus with id->index maps, a bidirectional citation index,
// and interned per-mention name keys. Paper order is ascending by id.
class Corpus {
 public:
  static Corpus from_records(std::vector<PaperRecord> records,
                             LoadReport* report = nullptr);

  std::size_t size() const { return papers_.size(); }
  const PaperRecord& paper(std::uint32_t idx) const { return papers_[idx]; }
  std::span<const PaperRecord> papers() const { return papers_; }

  std::uint32_t index_of(PaperId id) const;  // throws on unknown id
  std::optional<std::uint32_t> find_index(PaperId id) const;

  // Dense-index citation adjacency, both sorted ascending.
  const std::vector<std::uint32_t>& refs_of(std::uint32_t idx) const {
    return refs_[idx];
  }
  const std::vector<std::uint32_t>& citers_of(std::uint32_t idx) const {
    return citers_[idx];
  }
  std::uint32_t citation_count(std::uint32_t idx) const {
    return static_cast<std::uint32_t>(citers_[idx].size());
  }

  // Interned name keys per mention, parallel to paper(idx).authors.
  // surname_key covers just the surname ("smith"); full_key adds the first
  // initial ("smith_j", or "smith_" when the initial is missing).
  const std::vector<std::uint32_t>& surname_keys(std::uint32_t idx) const {
    return surname_keys_[idx];
  }
  const std::vector<std::uint32_t>& full_keys(std::uint32_t idx) const {
    return full_keys_[idx];
  }
  const std::string& key_string(std::uint32_t key) const {
    return key_strings_[key];
  }
  std::optional<std::uint32_t> find_key(std::string_view key) const;
  std::size_t key_count() const { return key_strings_.size(); }

 private:
  std::vector<PaperRecord> papers_;
  std::unordered_map<PaperId, std::uint32_t> id_to_index_;
  std::vector<std::vector<std::uint32_t>> refs_;
  std::vector<std::vector<std::uint32_t>> citers_;
  std::vector<std::vector<std::uint32_t>> surname_keys_;
  std::vector<std::vector<std::uint32_t>> full_keys_;
  std::vector<std::string> key_strings_;
  std::unordered_map<std::string, std::uint32_t> key_lookup_;

  std::uint32_t intern(const std::string& s);
};

enum class KeyMode { SurnameOnly, SurnameFirstInitial };

// Key under which a mention is blocked: the bare surname, or
// "<surname>_<first initial>" ("<surname>_" when the initial is missing).
std::string block_key(const AuthorMention& m, KeyMode mode);

struct BlockMember {
  std::uint32_t paper = 0;       // dense corpus index
  std::uint16_t author_pos = 0;  // position in paper's author list
};

// All mentions sharing one name key. focal_keys normally holds just the
// block's own key; unions built for mixing experiments carry both source
// keys so that every focal mention is excluded from coauthor sets.
struct NameBlock {
  std::string key;
  KeyMode mode = KeyMode::SurnameOnly;
  std::vector<std::uint32_t> focal_keys;  // interned, see Corpus::key_string
  std::vector<BlockMember> members;       // sorted by (paper, author_pos)

  bool is_focal(std::uint32_t key_id) const {
    for (auto k : focal_keys)
      if (k == key_id) return true;
    return false;
  }
};

// Partition of all mentions into blocks, sorted by key. Every mention lands
// in exactly one block.
std::vector<NameBlock> build_blocks(const Corpus& corpus, KeyMode mode);

// Gold profile: one researcher's publication list resolved to corpus papers.
struct GoldProfile {
  std::string profile_id;
  std::string surname;                // normalized
  std::vector<std::uint32_t> papers;  // dense indices, sorted unique
};

// Unresolved profile entry as it arrives from an external service: no paper
// ids, just bibliographic fields.
struct RawProfileEntry {
  int year = 0;
  std::string title;
  std::string journal;
  std::vector<std::string> surnames;  // all authors, normalized
};

struct RawProfile {
  std::string profile_id;
  std::string surname;
  std::vector<RawProfileEntry> entries;
};

struct CrossrefReport {
  std::size_t entries = 0;
  std::size_t matched = 0;
  std::size_t ambiguous = 0;  // several equally good candidates (dropped)
  std::size_t unmatched = 0;
};

// Resolve raw profile entries against the corpus. An entry matches a paper
// when the year is equal, the profile surname appears among the paper's
// author surnames, and title similarity is >= 0.9; it resolves only if
// exactly one paper qualifies (several -> ambiguous, dropped).
std::vector<GoldProfile> crossref_profiles(const Corpus& corpus,
                                           std::span<const RawProfile> raw,
                                           CrossrefReport* report = nullptr);

// Similarity in [0,1]: 1 - edit_distance/max_len over normalized strings.
double title_similarity(std::string_view a, std::string_view b);

}  // namespace disamb
