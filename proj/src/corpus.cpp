#include "disamb/corpus.hpp"

#include <algorithm>
#include <stdexcept>

namespace disamb {
namespace {

// Transliteration for Latin-1 Supplement and Latin Extended-A letters.
// Returns nullptr when the codepoint has no mapping.
const char* fold_codepoint(char32_t cp) {
  switch (cp) {
    case U'À': case U'Á': case U'Â': case U'Ã': case U'Ä': case U'Å':
    case U'à': case U'á': case U'â': case U'ã': case U'ä': case U'å':
    case U'Ā': case U'ā': case U'Ă': case U'ă': case U'Ą': case U'ą':
      return "a";
    case U'Æ': case U'æ':
      return "ae";
    case U'Ç': case U'ç': case U'Ć': case U'ć': case U'Ĉ': case U'ĉ':
    case U'Ċ': case U'ċ': case U'Č': case U'č':
      return "c";
    case U'Ð': case U'ð': case U'Ď': case U'ď': case U'Đ': case U'đ':
      return "d";
    case U'È': case U'É': case U'Ê': case U'Ë':
    case U'è': case U'é': case U'ê': case U'ë':
    case U'Ē': case U'ē': case U'Ĕ': case U'ĕ': case U'Ė': case U'ė':
    case U'Ę': case U'ę': case U'Ě': case U'ě':
      return "e";
    case U'Ĝ': case U'ĝ': case U'Ğ': case U'ğ': case U'Ġ': case U'ġ':
    case U'Ģ': case U'ģ':
      return "g";
    case U'Ĥ': case U'ĥ': case U'Ħ': case U'ħ':
      return "h";
    case U'Ì': case U'Í': case U'Î': case U'Ï':
    case U'ì': case U'í': case U'î': case U'ï':
    case U'Ĩ': case U'ĩ': case U'Ī': case U'ī': case U'Ĭ': case U'ĭ':
    case U'Į': case U'į': case U'İ': case U'ı':
      return "i";
    case U'Ĳ': case U'ĳ':
      return "ij";
    case U'Ĵ': case U'ĵ':
      return "j";
    case U'Ķ': case U'ķ': case U'ĸ':
      return "k";
    case U'Ĺ': case U'ĺ': case U'Ļ': case U'ļ': case U'Ľ': case U'ľ':
    case U'Ŀ': case U'ŀ': case U'Ł': case U'ł':
      return "l";
    case U'Ñ': case U'ñ': case U'Ń': case U'ń': case U'Ņ': case U'ņ':
    case U'Ň': case U'ň': case U'ŉ': case U'Ŋ': case U'ŋ':
      return "n";
    case U'Ò': case U'Ó': case U'Ô': case U'Õ': case U'Ö': case U'Ø':
    case U'ò': case U'ó': case U'ô': case U'õ': case U'ö': case U'ø':
    case U'Ō': case U'ō': case U'Ŏ': case U'ŏ': case U'Ő': case U'ő':
      return "o";
    case U'Œ': case U'œ':
      return "oe";
    case U'Ŕ': case U'ŕ': case U'Ŗ': case U'ŗ': case U'Ř': case U'ř':
      return "r";
    case U'Ś': case U'ś': case U'Ŝ': case U'ŝ': case U'Ş': case U'ş':
    case U'Š': case U'š': case U'ſ':
      return "s";
    case U'ß':
      return "ss";
    case U'Ţ': case U'ţ': case U'Ť': case U'ť': case U'Ŧ': case U'ŧ':
      return "t";
    case U'Þ': case U'þ':
      return "th";
    case U'Ù': case U'Ú': case U'Û': case U'Ü':
    case U'ù': case U'ú': case U'û': case U'ü':
    case U'Ũ': case U'ũ': case U'Ū': case U'ū': case U'Ŭ': case U'ŭ':
    case U'Ů': case U'ů': case U'Ű': case U'ű': case U'Ų': case U'ų':
      return "u";
    case U'Ŵ': case U'ŵ':
      return "w";
    case U'Ý': case U'ý': case U'ÿ': case U'Ŷ': case U'ŷ': case U'Ÿ':
      return "y";
    case U'Ź': case U'ź': case U'Ż': case U'ż': case U'Ž': case U'ž':
      return "z";
    case U'×': case U'÷':
      return "";
    default:
      return nullptr;
  }
}

// Minimal UTF-8 decode; malformed bytes are treated as Latin-1.
char32_t next_codepoint(std::string_view s, std::size_t& i) {
  unsigned char c = s[i];
  if (c < 0x80) {
    ++i;
    return c;
  }
  int extra = 0;
  char32_t cp = 0;
  if ((c & 0xE0) == 0xC0) {
    cp = c & 0x1F;
    extra = 1;
  } else if ((c & 0xF0) == 0xE0) {
    cp = c & 0x0F;
    extra = 2;
  } else if ((c & 0xF8) == 0xF0) {
    cp = c & 0x07;
    extra = 3;
  } else {
    ++i;
    return c;  // stray continuation byte
  }
  std::size_t j = i + 1;
  for (int k = 0; k < extra; ++k, ++j) {
    if (j >= s.size() || (static_cast<unsigned char>(s[j]) & 0xC0) != 0x80) {
      ++i;
      return c;
    }
    cp = (cp << 6) | (static_cast<unsigned char>(s[j]) & 0x3F);
  }
  i = j;
  return cp;
}

void append_codepoint(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

std::string normalize_name(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_sep = false;
  auto emit_sep = [&] {
    if (pending_sep && !out.empty()) out.push_back(' ');
    pending_sep = false;
  };
  std::size_t i = 0;
  while (i < raw.size()) {
    char32_t cp = next_codepoint(raw, i);
    if (cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
        cp == U'-' || cp == 0xA0 || cp == 0x2010 || cp == 0x2013 ||
        cp == 0x2014) {
      pending_sep = true;
      continue;
    }
    if (cp < 0x80) {
      emit_sep();
      char c = static_cast<char>(cp);
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      out.push_back(c);
      continue;
    }
    if (const char* folded = fold_codepoint(cp)) {
      if (*folded != '\0') {
        emit_sep();
        out += folded;
      }
      continue;
    }
    emit_sep();
    append_codepoint(out, cp);
  }
  return out;
}

std::uint32_t Corpus::intern(const std::string& s) {
  auto it = key_lookup_.find(s);
  if (it != key_lookup_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(key_strings_.size());
  key_strings_.push_back(s);
  key_lookup_.emplace(s, id);
  return id;
}

Corpus Corpus::from_records(std::vector<PaperRecord> records,
                            LoadReport* report) {
  Corpus c;
  std::sort(records.begin(), records.end(),
            [](const PaperRecord& a, const PaperRecord& b) {
              return a.id < b.id;
            });
  for (std::size_t k = 1; k < records.size(); ++k) {
    if (records[k].id == records[k - 1].id)
      throw std::runtime_error("duplicate paper id " +
                               std::to_string(records[k].id));
  }
  c.papers_ = std::move(records);
  c.id_to_index_.reserve(c.papers_.size() * 2);
  for (std::uint32_t i = 0; i < c.papers_.size(); ++i)
    c.id_to_index_.emplace(c.papers_[i].id, i);

  LoadReport rep;
  rep.papers = c.papers_.size();
  c.refs_.resize(c.papers_.size());
  c.citers_.resize(c.papers_.size());
  for (std::uint32_t i = 0; i < c.papers_.size(); ++i) {
    auto& out = c.refs_[i];
    for (PaperId ref : c.papers_[i].refs) {
      auto it = c.id_to_index_.find(ref);
      if (it == c.id_to_index_.end()) {
        ++rep.dangling_refs;
        continue;
      }
      if (it->second == i) {
        ++rep.self_refs;
        continue;
      }
      out.push_back(it->second);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  for (std::uint32_t i = 0; i < c.papers_.size(); ++i)
    for (std::uint32_t r : c.refs_[i]) c.citers_[r].push_back(i);
  for (auto& v : c.citers_) std::sort(v.begin(), v.end());

  c.surname_keys_.resize(c.papers_.size());
  c.full_keys_.resize(c.papers_.size());
  for (std::uint32_t i = 0; i < c.papers_.size(); ++i) {
    const auto& authors = c.papers_[i].authors;
    c.surname_keys_[i].reserve(authors.size());
    c.full_keys_[i].reserve(authors.size());
    for (const auto& m : authors) {
      c.surname_keys_[i].push_back(c.intern(block_key(m, KeyMode::SurnameOnly)));
      c.full_keys_[i].push_back(
          c.intern(block_key(m, KeyMode::SurnameFirstInitial)));
    }
  }
  if (report) *report = rep;
  return c;
}

std::uint32_t Corpus::index_of(PaperId id) const {
  auto it = id_to_index_.find(id);
  if (it == id_to_index_.end())
    throw std::out_of_range("unknown paper id " + std::to_string(id));
  return it->second;
}

std::optional<std::uint32_t> Corpus::find_index(PaperId id) const {
  auto it = id_to_index_.find(id);
  if (it == id_to_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> Corpus::find_key(std::string_view key) const {
  auto it = key_lookup_.find(std::string(key));
  if (it == key_lookup_.end()) return std::nullopt;
  return it->second;
}

std::string block_key(const AuthorMention& m, KeyMode mode) {
  if (mode == KeyMode::SurnameOnly) return m.surname;
  std::string key = m.surname;
  key.push_back('_');
  if (m.has_first()) key.push_back(m.first_initial);
  return key;
}

std::vector<NameBlock> build_blocks(const Corpus& corpus, KeyMode mode) {
  // Group members by interned key, then order blocks by key string.
  std::unordered_map<std::uint32_t, std::vector<BlockMember>> groups;
  for (std::uint32_t i = 0; i < corpus.size(); ++i) {
    const auto& keys = mode == KeyMode::SurnameOnly ? corpus.surname_keys(i)
                                                    : corpus.full_keys(i);
    for (std::uint16_t pos = 0; pos < keys.size(); ++pos)
      groups[keys[pos]].push_back({i, pos});
  }
  std::vector<NameBlock> blocks;
  blocks.reserve(groups.size());
  for (auto& [key, members] : groups) {
    NameBlock b;
    b.key = corpus.key_string(key);
    b.mode = mode;
    b.focal_keys = {key};
    b.members = std::move(members);  // construction order is (paper, pos)
    blocks.push_back(std::move(b));
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const NameBlock& a, const NameBlock& b) { return a.key < b.key; });
  return blocks;
}

double title_similarity(std::string_view a, std::string_view b) {
  std::string na = normalize_name(a);
  std::string nb = normalize_name(b);
  if (na.empty() && nb.empty()) return 1.0;
  std::size_t n = na.size(), m = nb.size();
  if (n == 0 || m == 0) return 0.0;
  // Single-row Levenshtein.
  std::vector<std::size_t> row(m + 1);
  for (std::size_t j = 0; j <= m; ++j) row[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t cost = na[i - 1] == nb[j - 1] ? 0 : 1;
      std::size_t best = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = row[j];
      row[j] = best;
    }
  }
  double dist = static_cast<double>(row[m]);
  return 1.0 - dist / static_cast<double>(std::max(n, m));
}

std::vector<GoldProfile> crossref_profiles(const Corpus& corpus,
                                           std::span<const RawProfile> raw,
                                           CrossrefReport* report) {
  CrossrefReport rep;
  // Candidate pool per (year, author surname); a paper shows up once per
  // distinct surname on it.
  std::unordered_map<std::string, std::vector<std::uint32_t>> by_year_name;
  for (std::uint32_t i = 0; i < corpus.size(); ++i) {
    const auto& p = corpus.paper(i);
    std::vector<std::string> seen;
    for (const auto& m : p.authors) {
      if (std::find(seen.begin(), seen.end(), m.surname) != seen.end())
        continue;
      seen.push_back(m.surname);
      std::string sig = std::to_string(p.year);
      sig.push_back('\x1f');
      sig += m.surname;
      by_year_name[sig].push_back(i);
    }
  }

  // An entry matches iff exactly one corpus paper passes year + surname +
  // title-similarity; several qualifying papers make it ambiguous.
  constexpr double kMinTitleSim = 0.9;
  std::vector<GoldProfile> out;
  out.reserve(raw.size());
  for (const auto& rp : raw) {
    GoldProfile gp;
    gp.profile_id = rp.profile_id;
    gp.surname = normalize_name(rp.surname);
    for (const auto& e : rp.entries) {
      ++rep.entries;
      std::string sig = std::to_string(e.year);
      sig.push_back('\x1f');
      sig += gp.surname;
      auto it = by_year_name.find(sig);
      if (it == by_year_name.end()) {
        ++rep.unmatched;
        continue;
      }
      std::uint32_t hit = 0;
      int n_hits = 0;
      for (std::uint32_t cand : it->second) {
        if (title_similarity(e.title, corpus.paper(cand).title) >=
            kMinTitleSim) {
          hit = cand;
          if (++n_hits > 1) break;
        }
      }
      if (n_hits == 0) {
        ++rep.unmatched;
      } else if (n_hits > 1) {
        ++rep.ambiguous;
      } else {
        ++rep.matched;
        gp.papers.push_back(hit);
      }
    }
    std::sort(gp.papers.begin(), gp.papers.end());
    gp.papers.erase(std::unique(gp.papers.begin(), gp.papers.end()),
                    gp.papers.end());
    out.push_back(std::move(gp));
  }
  if (report) *report = rep;
  return out;
}

}  // namespace disamb
