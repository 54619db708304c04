#include "disamb/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "disamb/common.hpp"

namespace disamb::io {
namespace {

using nlohmann::json;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

[[noreturn]] void line_error(const std::string& path, std::size_t line,
                             const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

// Applies fn to every non-empty line, reporting parse failures with the
// 1-based line number.
template <class Fn>
void for_each_record(const std::string& path, Fn&& fn) {
  std::ifstream in = open_in(path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      line_error(path, lineno, std::string("malformed JSON: ") + e.what());
    }
    try {
      fn(j);
    } catch (const json::exception& e) {
      line_error(path, lineno, std::string("bad record: ") + e.what());
    } catch (const std::exception& e) {
      line_error(path, lineno, e.what());
    }
  }
}

char parse_initial(const json& j, const char* field) {
  if (!j.contains(field)) return '\0';
  std::string norm = normalize_name(j.at(field).get<std::string>());
  if (norm.empty()) return '\0';
  char c = norm[0];
  if (c < 'a' || c > 'z')
    throw std::runtime_error(std::string(field) + " must start with a letter");
  return c;
}

json mention_to_json(const AuthorMention& m) {
  json j;
  j["surname"] = m.surname;
  if (m.has_first()) j["first_initial"] = std::string(1, m.first_initial);
  if (m.has_second()) j["second_initial"] = std::string(1, m.second_initial);
  return j;
}

}  // namespace

std::vector<PaperRecord> read_papers(const std::string& path) {
  std::vector<PaperRecord> papers;
  for_each_record(path, [&](const json& j) {
    PaperRecord p;
    p.id = j.at("id").get<PaperId>();
    p.year = j.at("year").get<int>();
    for (const auto& a : j.at("authors")) {
      AuthorMention m;
      m.surname = normalize_name(a.at("surname").get<std::string>());
      if (m.surname.empty()) throw std::runtime_error("empty surname");
      m.first_initial = parse_initial(a, "first_initial");
      m.second_initial = parse_initial(a, "second_initial");
      p.authors.push_back(std::move(m));
    }
    if (p.authors.empty()) throw std::runtime_error("paper without authors");
    if (j.contains("refs"))
      for (const auto& r : j.at("refs")) p.refs.push_back(r.get<PaperId>());
    if (j.contains("title")) p.title = j.at("title").get<std::string>();
    if (j.contains("journal")) p.journal = j.at("journal").get<std::string>();
    papers.push_back(std::move(p));
  });
  return papers;
}

void write_papers(const std::string& path,
                  std::span<const PaperRecord> papers) {
  std::ofstream out = open_out(path);
  for (const auto& p : papers) {
    json j;
    j["id"] = p.id;
    j["year"] = p.year;
    json authors = json::array();
    for (const auto& m : p.authors) authors.push_back(mention_to_json(m));
    j["authors"] = std::move(authors);
    j["refs"] = p.refs;
    if (!p.title.empty()) j["title"] = p.title;
    if (!p.journal.empty()) j["journal"] = p.journal;
    out << j.dump() << '\n';
  }
}

Corpus load_corpus(const std::string& path, LoadReport* report) {
  return Corpus::from_records(read_papers(path), report);
}

ProfileFileContent read_profiles(const std::string& path) {
  ProfileFileContent content;
  for_each_record(path, [&](const json& j) {
    bool has_ids = j.contains("paper_ids");
    bool has_entries = j.contains("entries");
    if (has_ids == has_entries)
      throw std::runtime_error(
          "profile must carry exactly one of paper_ids / entries");
    if (has_ids) {
      ResolvedProfile p;
      p.profile_id = j.at("profile_id").get<std::string>();
      p.surname = normalize_name(j.at("surname").get<std::string>());
      for (const auto& id : j.at("paper_ids"))
        p.paper_ids.push_back(id.get<PaperId>());
      std::sort(p.paper_ids.begin(), p.paper_ids.end());
      p.paper_ids.erase(std::unique(p.paper_ids.begin(), p.paper_ids.end()),
                        p.paper_ids.end());
      content.resolved.push_back(std::move(p));
    } else {
      RawProfile p;
      p.profile_id = j.at("profile_id").get<std::string>();
      p.surname = normalize_name(j.at("surname").get<std::string>());
      for (const auto& e : j.at("entries")) {
        RawProfileEntry entry;
        entry.year = e.at("year").get<int>();
        entry.title = e.at("title").get<std::string>();
        if (e.contains("journal"))
          entry.journal = e.at("journal").get<std::string>();
        if (e.contains("surnames"))
          for (const auto& s : e.at("surnames"))
            entry.surnames.push_back(normalize_name(s.get<std::string>()));
        p.entries.push_back(std::move(entry));
      }
      content.raw.push_back(std::move(p));
    }
  });
  return content;
}

void write_resolved_profiles(const std::string& path,
                             std::span<const ResolvedProfile> profiles) {
  std::ofstream out = open_out(path);
  for (const auto& p : profiles) {
    json j;
    j["profile_id"] = p.profile_id;
    j["surname"] = p.surname;
    j["paper_ids"] = p.paper_ids;
    out << j.dump() << '\n';
  }
}

void write_raw_profiles(const std::string& path,
                        std::span<const RawProfile> profiles) {
  std::ofstream out = open_out(path);
  for (const auto& p : profiles) {
    json j;
    j["profile_id"] = p.profile_id;
    j["surname"] = p.surname;
    json entries = json::array();
    for (const auto& e : p.entries) {
      json je;
      je["year"] = e.year;
      je["title"] = e.title;
      if (!e.journal.empty()) je["journal"] = e.journal;
      je["surnames"] = e.surnames;
      entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    out << j.dump() << '\n';
  }
}

std::vector<GoldProfile> to_gold_profiles(
    const Corpus& corpus, std::span<const ResolvedProfile> resolved) {
  std::vector<GoldProfile> out;
  out.reserve(resolved.size());
  for (const auto& r : resolved) {
    GoldProfile g;
    g.profile_id = r.profile_id;
    g.surname = normalize_name(r.surname);
    g.papers.reserve(r.paper_ids.size());
    for (PaperId id : r.paper_ids) g.papers.push_back(corpus.index_of(id));
    std::sort(g.papers.begin(), g.papers.end());
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<TruthEntry> read_truth(const std::string& path) {
  std::vector<TruthEntry> truth;
  for_each_record(path, [&](const json& j) {
    TruthEntry t;
    t.paper_id = j.at("paper_id").get<PaperId>();
    t.author_position = j.at("author_position").get<std::uint16_t>();
    t.true_author_id = j.at("true_author_id").get<std::uint32_t>();
    truth.push_back(t);
  });
  return truth;
}

void write_truth(const std::string& path, std::span<const TruthEntry> truth) {
  std::ofstream out = open_out(path);
  for (const auto& t : truth) {
    json j;
    j["paper_id"] = t.paper_id;
    j["author_position"] = t.author_position;
    j["true_author_id"] = t.true_author_id;
    out << j.dump() << '\n';
  }
}

void write_links(const std::string& path,
                 std::span<const SimilarityGraph> graphs,
                 const Corpus& corpus) {
  std::ofstream out = open_out(path);
  for (const auto& g : graphs) {
    for (const auto& t : g.links) {
      json j;
      j["block"] = g.block_key;
      j["i"] = corpus.paper(t.i).id;
      j["j"] = corpus.paper(t.j).id;
      j["a"] = t.coauthor_overlap;
      j["s"] = t.self_cite_count;
      j["r"] = t.shared_refs;
      j["c"] = t.cocitation_overlap;
      out << j.dump() << '\n';
    }
  }
}

std::map<std::string, std::vector<LinkTerms>> read_links(
    const std::string& path, const Corpus& corpus) {
  std::map<std::string, std::vector<LinkTerms>> by_block;
  for_each_record(path, [&](const json& j) {
    LinkTerms t;
    t.i = corpus.index_of(j.at("i").get<PaperId>());
    t.j = corpus.index_of(j.at("j").get<PaperId>());
    if (t.i > t.j) std::swap(t.i, t.j);
    t.coauthor_overlap = j.at("a").get<double>();
    t.self_cite_count = j.at("s").get<std::uint8_t>();
    t.shared_refs = j.at("r").get<std::uint32_t>();
    t.cocitation_overlap = j.at("c").get<double>();
    by_block[j.at("block").get<std::string>()].push_back(t);
  });
  for (auto& [key, links] : by_block)
    std::sort(links.begin(), links.end(),
              [](const LinkTerms& a, const LinkTerms& b) {
                return a.i != b.i ? a.i < b.i : a.j < b.j;
              });
  return by_block;
}

void write_clusters(const std::string& path,
                    std::span<const Clustering> clusterings,
                    const Corpus& corpus) {
  std::ofstream out = open_out(path);
  for (const auto& cl : clusterings) {
    for (const auto& c : cl.clusters) {
      json j;
      j["block"] = cl.block_key;
      j["cluster_id"] = c.cluster_id;
      std::vector<PaperId> ids;
      ids.reserve(c.papers.size());
      for (std::uint32_t p : c.papers) ids.push_back(corpus.paper(p).id);
      j["paper_ids"] = ids;
      out << j.dump() << '\n';
    }
  }
}

DisambiguationParams read_params(const std::string& path) {
  std::ifstream in = open_in(path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": malformed JSON: " + e.what());
  }
  DisambiguationParams p;
  p.alpha_a = j.at("alpha_a").get<double>();
  p.alpha_s = j.at("alpha_s").get<double>();
  p.alpha_r = j.at("alpha_r").get<double>();
  p.alpha_c = j.at("alpha_c").get<double>();
  p.beta2 = j.at("beta2").get<double>();
  p.beta3 = j.at("beta3").get<double>();
  p.beta4 = j.at("beta4").get<double>();
  p.validate();
  return p;
}

void write_params(const std::string& path, const DisambiguationParams& params,
                  const nlohmann::json& extra) {
  json j = extra.is_null() ? json::object() : extra;
  j["alpha_a"] = params.alpha_a;
  j["alpha_s"] = params.alpha_s;
  j["alpha_r"] = params.alpha_r;
  j["alpha_c"] = params.alpha_c;
  j["beta1"] = DisambiguationParams::beta1;
  j["beta2"] = params.beta2;
  j["beta3"] = params.beta3;
  j["beta4"] = params.beta4;
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_metrics_report(const std::string& path, const EvalResult& result) {
  std::ofstream out = open_out(path);
  for (double p : result.cluster_precisions) {
    json j;
    j["type"] = "cluster";
    j["precision"] = p;
    out << j.dump() << '\n';
  }
  for (double rh : result.profile_h_recalls) {
    json j;
    j["type"] = "profile";
    j["h_recall"] = rh;
    out << j.dump() << '\n';
  }
  json s;
  s["type"] = "summary";
  s["p_error"] = result.p_error;
  s["rh_error"] = result.rh_error;
  s["clusters_scored"] = result.clusters_scored;
  s["clusters_skipped_no_initials"] = result.clusters_skipped_no_initials;
  s["profiles_scored"] = result.profiles_scored;
  s["profiles_skipped_empty"] = result.profiles_skipped_empty;
  s["profiles_skipped_h0"] = result.profiles_skipped_h0;
  s["profiles_skipped_no_block"] = result.profiles_skipped_no_block;
  out << s.dump() << '\n';
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  json j;
  j["command"] = manifest.command;
  j["config"] = manifest.config;
  j["seed"] = manifest.seed;
  j["inputs"] = manifest.input_digests;
  j["outputs"] = manifest.outputs;
  j["wall_ms"] = manifest.wall_ms;
  j["threads"] = manifest.threads;
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

std::string file_digest(const std::string& path) {
  std::ifstream in = open_in(path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[65536];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    h = fnv1a64(std::string_view(buf, static_cast<std::size_t>(in.gcount())), h);
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(hex);
}

}  // namespace disamb::io
