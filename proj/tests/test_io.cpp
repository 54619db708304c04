#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "disamb/corpus.hpp"
#include "disamb/io.hpp"
#include "disamb/similarity.hpp"
#include "disamb/synth.hpp"

using namespace disamb;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / "disamb_io_tests";
  fs::create_directories(dir);
  return dir;
}

std::string tmp_file(const std::string& name) {
  return (scratch_dir() / name).string();
}

std::string write_text(const std::string& name, const std::string& text) {
  std::string path = tmp_file(name);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  return path;
}

// Expects fn() to throw a runtime_error whose message contains all needles.
template <class Fn>
void check_error_contains(Fn&& fn, const std::vector<std::string>& needles) {
  try {
    fn();
    FAIL("expected a runtime_error");
  } catch (const std::runtime_error& e) {
    std::string msg = e.what();
    for (const auto& n : needles) {
      CAPTURE(msg);
      CAPTURE(n);
      CHECK(msg.find(n) != std::string::npos);
    }
  }
}

bool same_papers(const std::vector<PaperRecord>& a,
                 const std::vector<PaperRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto& x = a[k];
    const auto& y = b[k];
    if (x.id != y.id || x.year != y.year || x.refs != y.refs ||
        x.title != y.title || x.journal != y.journal ||
        x.authors.size() != y.authors.size())
      return false;
    for (std::size_t m = 0; m < x.authors.size(); ++m)
      if (x.authors[m].surname != y.authors[m].surname ||
          x.authors[m].first_initial != y.authors[m].first_initial ||
          x.authors[m].second_initial != y.authors[m].second_initial)
        return false;
  }
  return true;
}

}  // namespace

TEST_CASE("papers survive a write/read round trip") {
  SynthConfig cfg;
  cfg.authors = 60;
  cfg.surname_pool = 25;
  cfg.missing_initial_rate = 0.2;  // exercise absent initials
  cfg.seed = 12;
  auto out = generate(cfg);

  std::string path = tmp_file("papers_roundtrip.jsonl");
  io::write_papers(path, out.papers);
  auto back = io::read_papers(path);
  CHECK(same_papers(out.papers, back));

  // Reading through load_corpus keeps the same records and counts them.
  LoadReport report;
  Corpus corpus = io::load_corpus(path, &report);
  CHECK(report.papers == out.papers.size());
  CHECK(report.dangling_refs == 0);
  CHECK(corpus.size() == out.papers.size());
}

TEST_CASE("paper reader reports the offending line") {
  std::string path = write_text("papers_bad_json.jsonl",
                                R"({"id":1,"year":2000,"authors":[{"surname":"a"}]})"
                                "\n"
                                "{not json\n");
  check_error_contains([&] { io::read_papers(path); },
                       {path + ":2:", "malformed JSON"});

  path = write_text("papers_no_authors.jsonl",
                    R"({"id":1,"year":2000,"authors":[]})" "\n");
  check_error_contains([&] { io::read_papers(path); },
                       {path + ":1:", "without authors"});

  path = write_text("papers_missing_year.jsonl",
                    R"({"id":1,"authors":[{"surname":"a"}]})" "\n");
  check_error_contains([&] { io::read_papers(path); }, {path + ":1:"});

  path = write_text("papers_bad_initial.jsonl",
                    R"({"id":1,"year":2,"authors":[{"surname":"a","first_initial":"9"}]})"
                    "\n");
  check_error_contains([&] { io::read_papers(path); },
                       {path + ":1:", "must start with a letter"});

  // Blank lines are fine; names and initials are normalized on the way in.
  path = write_text("papers_normalize.jsonl",
                    "\n"
                    R"({"id":7,"year":1999,"authors":[{"surname":"Müller","first_initial":"J"}]})"
                    "\n\n");
  auto papers = io::read_papers(path);
  REQUIRE(papers.size() == 1);
  CHECK(papers[0].authors[0].surname == "muller");
  CHECK(papers[0].authors[0].first_initial == 'j');
}

TEST_CASE("profile files may mix resolved and raw lines") {
  std::string path = write_text(
      "profiles_mixed.jsonl",
      R"({"profile_id":"p1","surname":"Gómez","paper_ids":[5,2,5,1]})"
      "\n"
      R"({"profile_id":"p2","surname":"kim","entries":[{"year":1990,"title":"On Things","surnames":["Kim","Lee"]}]})"
      "\n");
  auto content = io::read_profiles(path);
  REQUIRE(content.resolved.size() == 1);
  REQUIRE(content.raw.size() == 1);

  // ids sorted and deduplicated, surname normalized
  CHECK(content.resolved[0].profile_id == "p1");
  CHECK(content.resolved[0].surname == "gomez");
  CHECK(content.resolved[0].paper_ids == std::vector<PaperId>{1, 2, 5});

  CHECK(content.raw[0].profile_id == "p2");
  REQUIRE(content.raw[0].entries.size() == 1);
  CHECK(content.raw[0].entries[0].year == 1990);
  CHECK(content.raw[0].entries[0].title == "On Things");
  CHECK(content.raw[0].entries[0].surnames ==
        std::vector<std::string>{"kim", "lee"});
}

TEST_CASE("a profile line must pick one of paper_ids or entries") {
  std::string both = write_text(
      "profiles_both.jsonl",
      R"({"profile_id":"p","surname":"s","paper_ids":[1],"entries":[]})" "\n");
  check_error_contains([&] { io::read_profiles(both); },
                       {both + ":1:", "exactly one"});

  std::string neither = write_text(
      "profiles_neither.jsonl", R"({"profile_id":"p","surname":"s"})" "\n");
  check_error_contains([&] { io::read_profiles(neither); },
                       {neither + ":1:", "exactly one"});
}

TEST_CASE("resolved and raw profile writers invert the reader") {
  SynthConfig cfg;
  cfg.authors = 30;
  cfg.surname_pool = 100;
  cfg.noisy_profiles = true;
  cfg.seed = 9;
  auto out = generate(cfg);

  std::string rpath = tmp_file("profiles_resolved.jsonl");
  io::write_resolved_profiles(rpath, out.profiles);
  auto rcontent = io::read_profiles(rpath);
  CHECK(rcontent.raw.empty());
  REQUIRE(rcontent.resolved.size() == out.profiles.size());
  for (std::size_t k = 0; k < out.profiles.size(); ++k) {
    CHECK(rcontent.resolved[k].profile_id == out.profiles[k].profile_id);
    CHECK(rcontent.resolved[k].surname == out.profiles[k].surname);
    CHECK(rcontent.resolved[k].paper_ids == out.profiles[k].paper_ids);
  }

  std::string wpath = tmp_file("profiles_raw.jsonl");
  io::write_raw_profiles(wpath, out.raw_profiles);
  auto wcontent = io::read_profiles(wpath);
  CHECK(wcontent.resolved.empty());
  REQUIRE(wcontent.raw.size() == out.raw_profiles.size());
  for (std::size_t k = 0; k < out.raw_profiles.size(); ++k) {
    const auto& x = out.raw_profiles[k];
    const auto& y = wcontent.raw[k];
    CHECK(y.profile_id == x.profile_id);
    REQUIRE(y.entries.size() == x.entries.size());
    for (std::size_t m = 0; m < x.entries.size(); ++m) {
      CHECK(y.entries[m].year == x.entries[m].year);
      CHECK(y.entries[m].title == x.entries[m].title);
      CHECK(y.entries[m].journal == x.entries[m].journal);
      CHECK(y.entries[m].surnames == x.entries[m].surnames);
    }
  }
}

TEST_CASE("gold profiles map external ids onto corpus indices") {
  std::vector<PaperRecord> recs;
  recs.push_back({10, 2000, {{"smith", 'j'}}, {}, "", ""});
  recs.push_back({20, 2001, {{"smith", 'j'}}, {}, "", ""});
  recs.push_back({30, 2002, {{"smith", 'j'}}, {}, "", ""});
  Corpus corpus = Corpus::from_records(recs);

  std::vector<ResolvedProfile> resolved(1);
  resolved[0].profile_id = "p";
  resolved[0].surname = "Smith";
  resolved[0].paper_ids = {30, 10};
  auto gold = io::to_gold_profiles(corpus, resolved);
  REQUIRE(gold.size() == 1);
  CHECK(gold[0].surname == "smith");
  CHECK(gold[0].papers == std::vector<std::uint32_t>{0, 2});

  resolved[0].paper_ids = {10, 99};
  CHECK_THROWS_AS(io::to_gold_profiles(corpus, resolved), std::out_of_range);
}

TEST_CASE("truth entries round-trip") {
  SynthConfig cfg;
  cfg.authors = 40;
  cfg.seed = 8;
  auto out = generate(cfg);
  std::string path = tmp_file("truth.jsonl");
  io::write_truth(path, out.truth);
  auto back = io::read_truth(path);
  REQUIRE(back.size() == out.truth.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    CHECK(back[k].paper_id == out.truth[k].paper_id);
    CHECK(back[k].author_position == out.truth[k].author_position);
    CHECK(back[k].true_author_id == out.truth[k].true_author_id);
  }
}

TEST_CASE("link caches reload exactly, keyed by block") {
  SynthConfig cfg;
  cfg.authors = 120;
  cfg.surname_pool = 15;
  cfg.seed = 16;
  auto out = generate(cfg);
  Corpus corpus = Corpus::from_records(out.papers);
  auto blocks = build_blocks(corpus, KeyMode::SurnameOnly);
  std::vector<SimilarityGraph> graphs;
  for (const auto& b : blocks) graphs.push_back(compute_terms(corpus, b, 5));

  std::string path = tmp_file("links.jsonl");
  io::write_links(path, graphs, corpus);
  auto loaded = io::read_links(path, corpus);

  std::size_t nonempty = 0;
  for (const auto& g : graphs) {
    if (g.links.empty()) continue;
    ++nonempty;
    auto it = loaded.find(g.block_key);
    REQUIRE(it != loaded.end());
    REQUIRE(it->second.size() == g.links.size());
    for (std::size_t k = 0; k < g.links.size(); ++k) {
      const auto& a = g.links[k];
      const auto& b = it->second[k];
      CHECK(a.i == b.i);
      CHECK(a.j == b.j);
      CHECK(a.coauthor_overlap == b.coauthor_overlap);
      CHECK(a.self_cite_count == b.self_cite_count);
      CHECK(a.shared_refs == b.shared_refs);
      CHECK(a.cocitation_overlap == b.cocitation_overlap);
    }
  }
  CHECK(loaded.size() == nonempty);
  REQUIRE(nonempty > 0);
}

TEST_CASE("cluster files carry external paper ids per block") {
  std::vector<PaperRecord> recs;
  recs.push_back({100, 2000, {{"smith", 'j'}}, {}, "", ""});
  recs.push_back({200, 2001, {{"smith", 'j'}}, {100}, "", ""});
  Corpus corpus = Corpus::from_records(recs);

  Clustering cl;
  cl.block_key = "smith";
  Cluster c;
  c.cluster_id = 0;
  c.papers = {0, 1};
  cl.clusters.push_back(c);
  std::vector<Clustering> clusterings{cl};

  std::string path = tmp_file("clusters.jsonl");
  io::write_clusters(path, clusterings, corpus);

  std::ifstream in(path);
  std::string line;
  std::vector<nlohmann::json> lines;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(nlohmann::json::parse(line));
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].at("block") == "smith");
  CHECK(lines[0].at("cluster_id") == 0);
  CHECK(lines[0].at("paper_ids") == nlohmann::json::array({100, 200}));
}

TEST_CASE("parameter files round-trip and validate") {
  DisambiguationParams p;
  p.alpha_a = 0.54;
  p.alpha_s = 0.75;
  p.alpha_r = 0.19;
  p.alpha_c = 1.02;
  p.beta2 = 0.19;
  p.beta3 = 0.011;
  p.beta4 = 0.49;

  std::string path = tmp_file("params.json");
  nlohmann::json extra;
  extra["note"] = "tuned";
  io::write_params(path, p, extra);

  auto q = io::read_params(path);
  CHECK(q.alpha_a == p.alpha_a);
  CHECK(q.alpha_s == p.alpha_s);
  CHECK(q.alpha_r == p.alpha_r);
  CHECK(q.alpha_c == p.alpha_c);
  CHECK(q.beta2 == p.beta2);
  CHECK(q.beta3 == p.beta3);
  CHECK(q.beta4 == p.beta4);

  std::ifstream in(path);
  nlohmann::json j;
  in >> j;
  CHECK(j.at("beta1") == 1.0);       // fixed threshold is recorded
  CHECK(j.at("note") == "tuned");    // extra fields pass through

  // Values that fail validation never come back.
  std::string bad = write_text("params_bad.json", R"({"alpha_a":-1,
    "alpha_s":0,"alpha_r":0,"alpha_c":0,"beta2":0,"beta3":0,"beta4":0})");
  CHECK_THROWS_AS(io::read_params(bad), std::invalid_argument);

  std::string broken = write_text("params_broken.json", "{oops");
  check_error_contains([&] { io::read_params(broken); }, {"malformed JSON"});

  std::string missing = write_text("params_missing.json", R"({"alpha_a":1})");
  CHECK_THROWS(io::read_params(missing));
}

TEST_CASE("metrics reports list every score plus a summary") {
  EvalResult r;
  r.p_error = 0.125;
  r.rh_error = 0.25;
  r.cluster_precisions = {1.0, 0.75};
  r.profile_h_recalls = {1.0, 0.5, 0.75};
  r.clusters_scored = 2;
  r.clusters_skipped_no_initials = 1;
  r.profiles_scored = 3;
  r.profiles_skipped_empty = 1;
  r.profiles_skipped_h0 = 2;
  r.profiles_skipped_no_block = 0;

  std::string path = tmp_file("metrics.jsonl");
  io::write_metrics_report(path, r);

  std::ifstream in(path);
  std::string line;
  std::vector<nlohmann::json> lines;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(nlohmann::json::parse(line));
  REQUIRE(lines.size() == 6);  // 2 clusters + 3 profiles + summary
  CHECK(lines[0].at("type") == "cluster");
  CHECK(lines[0].at("precision") == 1.0);
  CHECK(lines[2].at("type") == "profile");
  const auto& s = lines.back();
  CHECK(s.at("type") == "summary");
  CHECK(s.at("p_error") == 0.125);
  CHECK(s.at("rh_error") == 0.25);
  CHECK(s.at("clusters_scored") == 2);
  CHECK(s.at("profiles_skipped_h0") == 2);
}

TEST_CASE("manifests record the run shape") {
  io::RunManifest m;
  m.command = "links";
  m.config["year_gap"] = 5;
  m.seed = 42;
  m.input_digests["papers.jsonl"] = "0123456789abcdef";
  m.outputs = {"links.jsonl"};
  m.wall_ms = 12.5;
  m.threads = 4;

  std::string path = tmp_file("manifest.json");
  io::write_manifest(path, m);
  std::ifstream in(path);
  nlohmann::json j;
  in >> j;
  CHECK(j.at("command") == "links");
  CHECK(j.at("config").at("year_gap") == 5);
  CHECK(j.at("seed") == 42);
  CHECK(j.at("inputs").at("papers.jsonl") == "0123456789abcdef");
  CHECK(j.at("outputs") == nlohmann::json::array({"links.jsonl"}));
  CHECK(j.at("threads") == 4);
}

TEST_CASE("file digests are FNV-1a over the bytes") {
  std::string hello = write_text("digest_hello.bin", "hello");
  CHECK(io::file_digest(hello) == "a430d84680aabd0b");

  std::string empty = write_text("digest_empty.bin", "");
  CHECK(io::file_digest(empty) == "cbf29ce484222325");

  // Same bytes, different name: same digest. Different bytes: different.
  std::string hello2 = write_text("digest_hello2.bin", "hello");
  CHECK(io::file_digest(hello2) == io::file_digest(hello));
  std::string other = write_text("digest_other.bin", "hello!");
  CHECK(io::file_digest(other) != io::file_digest(hello));

  CHECK_THROWS_AS(io::file_digest(tmp_file("digest_nonexistent.bin")),
                  std::runtime_error);
}
