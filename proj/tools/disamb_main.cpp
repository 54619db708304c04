// Command-line driver wiring the library into reproducible batch commands.
// Every artifact-producing subcommand writes its outputs plus a manifest
// (config snapshot, input digests, wall time) into --out.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "disamb/clustering.hpp"
#include "disamb/common.hpp"
#include "disamb/hmodel.hpp"
#include "disamb/io.hpp"
#include "disamb/metrics.hpp"
#include "disamb/optimizer.hpp"
#include "disamb/synth.hpp"

namespace {

using disamb::Clustering;
using disamb::Corpus;
using disamb::DisambiguationParams;
using disamb::KeyMode;
using disamb::NameBlock;
using nlohmann::json;
namespace fs = std::filesystem;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

std::string out_path(const std::string& dir, const char* name) {
  return (fs::path(dir) / name).string();
}

void finish_manifest(disamb::io::RunManifest& m, const std::string& out_dir,
                     const Timer& timer) {
  m.wall_ms = timer.ms();
  disamb::io::write_manifest(out_path(out_dir, "manifest.json"), m);
}

KeyMode parse_key_mode(const std::string& s) {
  if (s == "surname") return KeyMode::SurnameOnly;
  if (s == "surname-initial") return KeyMode::SurnameFirstInitial;
  throw CLI::ValidationError("--key-mode",
                             "expected 'surname' or 'surname-initial'");
}

// Compute (or load from cache) the similarity graphs of all blocks;
// graphs[k] belongs to blocks[k].
std::vector<disamb::SimilarityGraph> block_graphs(
    const Corpus& corpus, const std::vector<NameBlock>& blocks, int year_gap,
    int threads, const std::string& links_path) {
  std::vector<disamb::SimilarityGraph> graphs(blocks.size());
  if (!links_path.empty()) {
    auto cache = disamb::io::read_links(links_path, corpus);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      graphs[k].block_key = blocks[k].key;
      for (const auto& m : blocks[k].members)
        graphs[k].papers.push_back(m.paper);
      std::sort(graphs[k].papers.begin(), graphs[k].papers.end());
      graphs[k].papers.erase(
          std::unique(graphs[k].papers.begin(), graphs[k].papers.end()),
          graphs[k].papers.end());
      auto it = cache.find(blocks[k].key);
      if (it != cache.end()) graphs[k].links = it->second;
    }
    return graphs;
  }
  disamb::parallel_for(blocks.size(), threads, [&](std::size_t k) {
    graphs[k] = disamb::compute_terms(corpus, blocks[k], year_gap);
  });
  return graphs;
}

std::vector<Clustering> cluster_blocks(
    const std::vector<NameBlock>& blocks,
    const std::vector<disamb::SimilarityGraph>& graphs,
    const DisambiguationParams& params, int threads) {
  std::vector<Clustering> out(blocks.size());
  disamb::parallel_for(blocks.size(), threads, [&](std::size_t k) {
    out[k] = disamb::step2_merge(disamb::step1_components(graphs[k], params),
                                 graphs[k], params);
  });
  return out;
}

json search_result_json(const disamb::SearchResult& r) {
  json j;
  j["alpha_a"] = r.params.alpha_a;
  j["alpha_s"] = r.params.alpha_s;
  j["alpha_r"] = r.params.alpha_r;
  j["alpha_c"] = r.params.alpha_c;
  j["beta2"] = r.params.beta2;
  j["beta3"] = r.params.beta3;
  j["beta4"] = r.params.beta4;
  j["p_error"] = r.p_error;
  j["rh_error"] = r.rh_error;
  j["objective"] = r.objective;
  return j;
}

disamb::EvalSet make_eval_set(const Corpus& corpus,
                              const std::string& profiles_path, int year_gap,
                              int threads, const std::string& links_path) {
  auto content = disamb::io::read_profiles(profiles_path);
  if (!content.raw.empty())
    throw std::runtime_error(profiles_path +
                             ": contains unresolved entries; run `disamb "
                             "crossref` first");
  auto gold = disamb::io::to_gold_profiles(corpus, content.resolved);
  if (links_path.empty())
    return disamb::build_eval_set(corpus, std::move(gold), year_gap, threads);
  disamb::EvalSet es;
  es.corpus = &corpus;
  es.blocks = disamb::build_blocks(corpus, KeyMode::SurnameOnly);
  es.graphs = block_graphs(corpus, es.blocks, year_gap, threads, links_path);
  es.profiles = std::move(gold);
  return es;
}

int run(int argc, char** argv) {
  CLI::App app{"bibliographic author disambiguation toolkit"};
  app.require_subcommand(1);

  // ---- synth ----------------------------------------------------------
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  disamb::SynthConfig scfg;
  std::string synth_out;
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--seed", scfg.seed, "random seed");
  synth->add_option("--authors", scfg.authors, "author count");
  synth->add_option("--surnames", scfg.surname_pool, "surname pool size");
  synth->add_option("--papers-mean", scfg.papers_per_author_mean,
                    "mean papers per author");
  synth->add_option("--career", scfg.career_span, "career span in years");
  synth->add_option("--year-min", scfg.year_min, "earliest start year");
  synth->add_option("--year-max", scfg.year_max, "latest paper year");
  synth->add_option("--coauthors-mean", scfg.coauthors_mean,
                    "mean coauthors per paper");
  synth->add_option("--refs", scfg.refs_per_paper, "references per paper");
  synth->add_option("--p-self", scfg.p_self, "self-citation probability");
  synth->add_option("--p-community", scfg.p_community,
                    "community-citation probability");
  synth->add_option("--p-random", scfg.p_random,
                    "random-citation probability");
  synth->add_option("--missing-initial", scfg.missing_initial_rate,
                    "chance an initial is omitted from a mention");
  synth->add_option("--second-initial", scfg.second_initial_rate,
                    "share of authors with a second initial");
  synth->add_option("--community", scfg.community_size,
                    "authors per coauthor community");
  synth->add_flag("--noisy", scfg.noisy_profiles,
                  "emit raw profile entries instead of paper ids");
  synth->callback([&] {
    Timer timer;
    fs::create_directories(synth_out);
    disamb::SynthOutput out = disamb::generate(scfg);
    auto papers = out_path(synth_out, "papers.jsonl");
    auto truth = out_path(synth_out, "truth.jsonl");
    auto profiles = out_path(synth_out, "profiles.jsonl");
    disamb::io::write_papers(papers, out.papers);
    disamb::io::write_truth(truth, out.truth);
    disamb::io::RunManifest m;
    m.command = "synth";
    m.seed = scfg.seed;
    m.config = {{"authors", scfg.authors},
                {"surname_pool", scfg.surname_pool},
                {"papers_per_author_mean", scfg.papers_per_author_mean},
                {"career_span", scfg.career_span},
                {"year_min", scfg.year_min},
                {"year_max", scfg.year_max},
                {"coauthors_mean", scfg.coauthors_mean},
                {"refs_per_paper", scfg.refs_per_paper},
                {"p_self", scfg.p_self},
                {"p_community", scfg.p_community},
                {"p_random", scfg.p_random},
                {"missing_initial_rate", scfg.missing_initial_rate},
                {"second_initial_rate", scfg.second_initial_rate},
                {"community_size", scfg.community_size},
                {"noisy_profiles", scfg.noisy_profiles}};
    if (scfg.noisy_profiles) {
      disamb::io::write_raw_profiles(profiles, out.raw_profiles);
    } else {
      disamb::io::write_resolved_profiles(profiles, out.profiles);
    }
    m.outputs = {papers, truth, profiles};
    std::cerr << "synth: " << out.papers.size() << " papers, "
              << out.profiles.size() << " authors\n";
    finish_manifest(m, synth_out, timer);
  });

  // ---- links ----------------------------------------------------------
  auto* links = app.add_subcommand("links", "precompute similarity terms");
  std::string l_papers, l_out, l_mode = "surname";
  int l_gap = 5, l_threads = 0;
  links->add_option("--papers", l_papers, "papers file")->required();
  links->add_option("--out", l_out, "output directory")->required();
  links->add_option("--key-mode", l_mode, "surname | surname-initial");
  links->add_option("--year-gap", l_gap, "max year difference for pairs");
  links->add_option("--threads", l_threads, "worker threads (0 = auto)");
  links->callback([&] {
    Timer timer;
    KeyMode mode = parse_key_mode(l_mode);
    fs::create_directories(l_out);
    Corpus corpus = disamb::io::load_corpus(l_papers);
    auto blocks = disamb::build_blocks(corpus, mode);
    auto graphs = block_graphs(corpus, blocks, l_gap, l_threads, "");
    auto links_file = out_path(l_out, "links.jsonl");
    disamb::io::write_links(links_file, graphs, corpus);
    disamb::io::RunManifest m;
    m.command = "links";
    m.config = {{"key_mode", l_mode}, {"year_gap", l_gap}};
    m.threads = l_threads;
    m.input_digests[l_papers] = disamb::io::file_digest(l_papers);
    m.outputs = {links_file};
    std::size_t n_links = 0;
    for (const auto& g : graphs) n_links += g.links.size();
    std::cerr << "links: " << blocks.size() << " blocks, " << n_links
              << " links\n";
    finish_manifest(m, l_out, timer);
  });

  // ---- disambiguate ---------------------------------------------------
  auto* dis = app.add_subcommand("disambiguate", "cluster all name blocks");
  std::string d_papers, d_out, d_params, d_links, d_mode = "surname-initial";
  int d_gap = 5, d_threads = 0;
  dis->add_option("--papers", d_papers, "papers file")->required();
  dis->add_option("--params", d_params, "parameter file (from optimize)")
      ->required();
  dis->add_option("--out", d_out, "output directory")->required();
  dis->add_option("--key-mode", d_mode, "surname | surname-initial");
  dis->add_option("--year-gap", d_gap, "max year difference for pairs");
  dis->add_option("--threads", d_threads, "worker threads (0 = auto)");
  dis->add_option("--links", d_links, "precomputed links.jsonl");
  dis->callback([&] {
    Timer timer;
    KeyMode mode = parse_key_mode(d_mode);
    fs::create_directories(d_out);
    Corpus corpus = disamb::io::load_corpus(d_papers);
    DisambiguationParams params = disamb::io::read_params(d_params);
    auto blocks = disamb::build_blocks(corpus, mode);
    auto graphs = block_graphs(corpus, blocks, d_gap, d_threads, d_links);
    auto clusterings = cluster_blocks(blocks, graphs, params, d_threads);
    auto clusters_file = out_path(d_out, "clusters.jsonl");
    disamb::io::write_clusters(clusters_file, clusterings, corpus);
    disamb::io::RunManifest m;
    m.command = "disambiguate";
    m.config = {{"key_mode", d_mode}, {"year_gap", d_gap}};
    m.threads = d_threads;
    m.input_digests[d_papers] = disamb::io::file_digest(d_papers);
    m.input_digests[d_params] = disamb::io::file_digest(d_params);
    if (!d_links.empty())
      m.input_digests[d_links] = disamb::io::file_digest(d_links);
    m.outputs = {clusters_file};
    std::size_t n_clusters = 0;
    for (const auto& c : clusterings) n_clusters += c.clusters.size();
    std::cerr << "disambiguate: " << blocks.size() << " blocks -> "
              << n_clusters << " clusters\n";
    finish_manifest(m, d_out, timer);
  });

  // ---- validate -------------------------------------------------------
  auto* val = app.add_subcommand(
      "validate", "score a parameter vector against gold profiles");
  std::string v_papers, v_profiles, v_params, v_out, v_links;
  int v_gap = 5, v_threads = 0, v_merged_pairs = 0;
  std::uint64_t v_merged_seed = 1;
  bool v_second = false;
  val->add_option("--papers", v_papers, "papers file")->required();
  val->add_option("--profiles", v_profiles, "resolved profiles file")
      ->required();
  val->add_option("--params", v_params, "parameter file")->required();
  val->add_option("--out", v_out, "output directory")->required();
  val->add_option("--year-gap", v_gap, "max year difference for pairs");
  val->add_option("--threads", v_threads, "worker threads (0 = auto)");
  val->add_option("--links", v_links, "precomputed links.jsonl (surname mode)");
  val->add_option("--merged-pairs", v_merged_pairs,
                  "also run the merged-name mixing test on N block pairs");
  val->add_option("--merged-seed", v_merged_seed, "seed for pair sampling");
  val->add_flag("--second-initial", v_second,
                "also compute second-initial precision");
  val->callback([&] {
    Timer timer;
    fs::create_directories(v_out);
    Corpus corpus = disamb::io::load_corpus(v_papers);
    DisambiguationParams params = disamb::io::read_params(v_params);
    disamb::EvalSet es =
        make_eval_set(corpus, v_profiles, v_gap, v_threads, v_links);
    auto clusterings =
        cluster_blocks(es.blocks, es.graphs, params, v_threads);
    disamb::EvalResult result = disamb::aggregate_errors(
        clusterings, es.blocks, es.profiles, corpus);
    auto metrics_file = out_path(v_out, "metrics.jsonl");
    disamb::io::write_metrics_report(metrics_file, result);

    std::ofstream extra(metrics_file, std::ios::app | std::ios::binary);
    if (v_second) {
      auto blocks2 = disamb::build_blocks(corpus, KeyMode::SurnameFirstInitial);
      auto graphs2 = block_graphs(corpus, blocks2, v_gap, v_threads, "");
      auto cl2 = cluster_blocks(blocks2, graphs2, params, v_threads);
      auto si = disamb::second_initial_precision(cl2, blocks2, corpus);
      json j;
      j["type"] = "second_initial";
      j["precision"] = si.precision;
      j["clusters_used"] = si.clusters_used;
      j["clusters_total"] = si.clusters_total;
      extra << j.dump() << '\n';
    }
    if (v_merged_pairs > 0) {
      auto blocks2 = disamb::build_blocks(corpus, KeyMode::SurnameFirstInitial);
      auto pairs = disamb::sample_disjoint_pairs(
          blocks2, static_cast<std::size_t>(v_merged_pairs), v_merged_seed);
      auto rep = disamb::merged_name_test(corpus, pairs, params, v_gap);
      json j;
      j["type"] = "merged_name";
      j["pairs"] = rep.pairs;
      j["clusters"] = rep.clusters;
      j["mixed"] = rep.mixed;
      j["mixed_fraction"] = rep.mixed_fraction();
      extra << j.dump() << '\n';
    }
    extra.close();

    disamb::io::RunManifest m;
    m.command = "validate";
    m.config = {{"year_gap", v_gap},
                {"merged_pairs", v_merged_pairs},
                {"second_initial", v_second}};
    m.threads = v_threads;
    m.seed = v_merged_seed;
    m.input_digests[v_papers] = disamb::io::file_digest(v_papers);
    m.input_digests[v_profiles] = disamb::io::file_digest(v_profiles);
    m.input_digests[v_params] = disamb::io::file_digest(v_params);
    m.outputs = {metrics_file};
    std::cerr << "validate: p_error=" << result.p_error
              << " rh_error=" << result.rh_error << "\n";
    finish_manifest(m, v_out, timer);
  });

  // ---- optimize -------------------------------------------------------
  auto* opt = app.add_subcommand("optimize", "search disambiguation params");
  std::string o_papers, o_profiles, o_out, o_links;
  std::size_t o_samples = 200;
  std::uint64_t o_seed = 1;
  double o_weight = 0.5;
  int o_gap = 5, o_threads = 0, o_local_iters = 100, o_probes = 20;
  bool o_no_local = false;
  opt->add_option("--papers", o_papers, "papers file")->required();
  opt->add_option("--profiles", o_profiles, "resolved profiles file")
      ->required();
  opt->add_option("--out", o_out, "output directory")->required();
  opt->add_option("--samples", o_samples, "random search size");
  opt->add_option("--seed", o_seed, "search seed");
  opt->add_option("--weight", o_weight, "objective weight on rh_error");
  opt->add_option("--local-iters", o_local_iters, "local search iteration cap");
  opt->add_option("--local-probes", o_probes, "probes per local iteration");
  opt->add_option("--year-gap", o_gap, "max year difference for pairs");
  opt->add_option("--threads", o_threads, "worker threads (0 = auto)");
  opt->add_option("--links", o_links, "precomputed links.jsonl (surname mode)");
  opt->add_flag("--no-local", o_no_local, "skip the local search stage");
  opt->callback([&] {
    Timer timer;
    fs::create_directories(o_out);
    Corpus corpus = disamb::io::load_corpus(o_papers);
    disamb::EvalSet es =
        make_eval_set(corpus, o_profiles, o_gap, o_threads, o_links);
    disamb::ErrorFn errors = disamb::make_objective(es);
    disamb::ParamSpace space;
    auto results = disamb::random_search(space, o_samples, o_seed, o_weight,
                                         errors, o_threads);
    auto results_file = out_path(o_out, "results.jsonl");
    {
      std::ofstream out(results_file, std::ios::binary);
      for (const auto& r : results) out << search_result_json(r).dump() << '\n';
    }
    disamb::SearchResult best = disamb::best_result(results);
    if (!o_no_local) {
      disamb::LocalSearchSchedule schedule;
      schedule.max_iters = o_local_iters;
      schedule.probes = o_probes;
      best = disamb::local_search(best.params, space, schedule, o_seed + 1,
                                  o_weight, errors, o_threads);
    }
    auto best_file = out_path(o_out, "best.json");
    json extra = {{"p_error", best.p_error},
                  {"rh_error", best.rh_error},
                  {"objective", best.objective},
                  {"weight", o_weight},
                  {"seed", o_seed},
                  {"evaluations", best.evaluations}};
    disamb::io::write_params(best_file, best.params, extra);
    disamb::io::RunManifest m;
    m.command = "optimize";
    m.config = {{"samples", o_samples},
                {"weight", o_weight},
                {"year_gap", o_gap},
                {"local_iters", o_local_iters},
                {"local_probes", o_probes},
                {"no_local", o_no_local}};
    m.seed = o_seed;
    m.threads = o_threads;
    m.input_digests[o_papers] = disamb::io::file_digest(o_papers);
    m.input_digests[o_profiles] = disamb::io::file_digest(o_profiles);
    if (!o_links.empty())
      m.input_digests[o_links] = disamb::io::file_digest(o_links);
    m.outputs = {results_file, best_file};
    std::cerr << "optimize: best p_error=" << best.p_error
              << " rh_error=" << best.rh_error << "\n";
    finish_manifest(m, o_out, timer);
  });

  // ---- ablate ---------------------------------------------------------
  auto* abl = app.add_subcommand(
      "ablate", "feature-subset random searches + Pareto hulls");
  std::string a_papers, a_profiles, a_out, a_links;
  std::size_t a_samples = 200;
  std::uint64_t a_seed = 1;
  double a_weight = 0.5;
  int a_gap = 5, a_threads = 0;
  abl->add_option("--papers", a_papers, "papers file")->required();
  abl->add_option("--profiles", a_profiles, "resolved profiles file")
      ->required();
  abl->add_option("--out", a_out, "output directory")->required();
  abl->add_option("--samples", a_samples, "random search size per subset");
  abl->add_option("--seed", a_seed, "search seed");
  abl->add_option("--weight", a_weight, "objective weight on rh_error");
  abl->add_option("--year-gap", a_gap, "max year difference for pairs");
  abl->add_option("--threads", a_threads, "worker threads (0 = auto)");
  abl->add_option("--links", a_links, "precomputed links.jsonl (surname mode)");
  abl->callback([&] {
    Timer timer;
    fs::create_directories(a_out);
    Corpus corpus = disamb::io::load_corpus(a_papers);
    disamb::EvalSet es =
        make_eval_set(corpus, a_profiles, a_gap, a_threads, a_links);
    disamb::ErrorFn errors = disamb::make_objective(es);
    std::vector<disamb::FeatureMask> masks = {
        {true, true, true, true},
        {true, false, false, false},
        {false, true, false, false},
        {false, false, true, false},
        {false, false, false, true}};
    auto runs = disamb::ablation_runs(disamb::ParamSpace{}, masks, a_samples,
                                      a_seed, a_weight, errors, a_threads);
    auto results_file = out_path(a_out, "ablation.jsonl");
    auto hulls_file = out_path(a_out, "hulls.jsonl");
    {
      std::ofstream rf(results_file, std::ios::binary);
      std::ofstream hf(hulls_file, std::ios::binary);
      for (const auto& run : runs) {
        for (const auto& r : run.results) {
          json j = search_result_json(r);
          j["subset"] = run.mask.name();
          rf << j.dump() << '\n';
        }
        for (const auto& h : run.hull) {
          json j;
          j["subset"] = run.mask.name();
          j["p_error"] = h.p_error;
          j["rh_error"] = h.rh_error;
          hf << j.dump() << '\n';
        }
      }
    }
    disamb::io::RunManifest m;
    m.command = "ablate";
    m.config = {{"samples", a_samples}, {"weight", a_weight},
                {"year_gap", a_gap}};
    m.seed = a_seed;
    m.threads = a_threads;
    m.input_digests[a_papers] = disamb::io::file_digest(a_papers);
    m.input_digests[a_profiles] = disamb::io::file_digest(a_profiles);
    m.outputs = {results_file, hulls_file};
    finish_manifest(m, a_out, timer);
  });

  // ---- hdist ----------------------------------------------------------
  auto* hd = app.add_subcommand(
      "hdist", "cluster h-index histogram + model fit");
  std::string h_papers, h_params, h_out, h_mode = "surname-initial";
  int h_gap = 5, h_threads = 0, h_support = 2, h_linear = 10, h_bpd = 5;
  hd->add_option("--papers", h_papers, "papers file")->required();
  hd->add_option("--params", h_params, "parameter file")->required();
  hd->add_option("--out", h_out, "output directory")->required();
  hd->add_option("--key-mode", h_mode, "surname | surname-initial");
  hd->add_option("--support-min", h_support, "fit support lower bound");
  hd->add_option("--linear-upto", h_linear, "unit-width bins up to here");
  hd->add_option("--bins-per-decade", h_bpd, "log bins per decade");
  hd->add_option("--year-gap", h_gap, "max year difference for pairs");
  hd->add_option("--threads", h_threads, "worker threads (0 = auto)");
  hd->callback([&] {
    Timer timer;
    KeyMode mode = parse_key_mode(h_mode);
    fs::create_directories(h_out);
    Corpus corpus = disamb::io::load_corpus(h_papers);
    DisambiguationParams params = disamb::io::read_params(h_params);
    auto blocks = disamb::build_blocks(corpus, mode);
    auto graphs = block_graphs(corpus, blocks, h_gap, h_threads, "");
    auto clusterings = cluster_blocks(blocks, graphs, params, h_threads);

    std::vector<std::uint32_t> hs;
    std::size_t clusters_total = 0;
    for (const auto& cl : clusterings) {
      for (const auto& c : cl.clusters) {
        ++clusters_total;
        std::vector<std::uint32_t> counts;
        counts.reserve(c.papers.size());
        for (std::uint32_t p : c.papers)
          counts.push_back(corpus.citation_count(p));
        int h = disamb::h_index(std::move(counts));
        if (h >= h_support) hs.push_back(static_cast<std::uint32_t>(h));
      }
    }
    if (hs.empty())
      throw std::runtime_error("hdist: no cluster reaches the fit support");
    auto binned = disamb::log_bin(hs, h_linear, h_bpd);
    auto fit = disamb::fit_m(binned, h_support);

    auto hdist_file = out_path(h_out, "hdist.jsonl");
    {
      std::ofstream out(hdist_file, std::ios::binary);
      double denom = disamb::pm_ccdf(h_support, fit.model);
      for (std::size_t b = 0; b < binned.masses.size(); ++b) {
        json j;
        j["type"] = "bin";
        j["lo"] = binned.edges[b];
        j["hi"] = binned.edges[b + 1];
        j["empirical"] = binned.masses[b];
        j["model"] =
            (disamb::pm_ccdf(static_cast<double>(binned.edges[b]), fit.model) -
             disamb::pm_ccdf(static_cast<double>(binned.edges[b + 1]),
                             fit.model)) /
            denom;
        out << j.dump() << '\n';
      }
      json j;
      j["type"] = "fit";
      j["m"] = fit.model.m;
      j["residual"] = fit.residual;
      j["bins_used"] = fit.bins_used;
      j["clusters_total"] = clusters_total;
      j["clusters_fit"] = hs.size();
      out << j.dump() << '\n';
    }
    disamb::io::RunManifest m;
    m.command = "hdist";
    m.config = {{"key_mode", h_mode},
                {"support_min", h_support},
                {"linear_upto", h_linear},
                {"bins_per_decade", h_bpd},
                {"year_gap", h_gap}};
    m.threads = h_threads;
    m.input_digests[h_papers] = disamb::io::file_digest(h_papers);
    m.input_digests[h_params] = disamb::io::file_digest(h_params);
    m.outputs = {hdist_file};
    std::cerr << "hdist: fitted m=" << fit.model.m << " over " << hs.size()
              << " clusters\n";
    finish_manifest(m, h_out, timer);
  });

  // ---- crossref -------------------------------------------------------
  auto* cr = app.add_subcommand(
      "crossref", "resolve raw profile entries to corpus papers");
  std::string c_papers, c_profiles, c_out;
  cr->add_option("--papers", c_papers, "papers file")->required();
  cr->add_option("--profiles", c_profiles, "raw profiles file")->required();
  cr->add_option("--out", c_out, "output directory")->required();
  cr->callback([&] {
    Timer timer;
    fs::create_directories(c_out);
    Corpus corpus = disamb::io::load_corpus(c_papers);
    auto content = disamb::io::read_profiles(c_profiles);
    disamb::CrossrefReport report;
    auto gold = disamb::crossref_profiles(corpus, content.raw, &report);
    // Pass already-resolved lines straight through.
    std::vector<disamb::ResolvedProfile> resolved;
    for (const auto& g : gold) {
      disamb::ResolvedProfile p;
      p.profile_id = g.profile_id;
      p.surname = g.surname;
      for (std::uint32_t idx : g.papers)
        p.paper_ids.push_back(corpus.paper(idx).id);
      resolved.push_back(std::move(p));
    }
    resolved.insert(resolved.end(), content.resolved.begin(),
                    content.resolved.end());
    auto profiles_file = out_path(c_out, "profiles.jsonl");
    disamb::io::write_resolved_profiles(profiles_file, resolved);
    disamb::io::RunManifest m;
    m.command = "crossref";
    m.config = {{"entries", report.entries},
                {"matched", report.matched},
                {"ambiguous", report.ambiguous},
                {"unmatched", report.unmatched}};
    m.input_digests[c_papers] = disamb::io::file_digest(c_papers);
    m.input_digests[c_profiles] = disamb::io::file_digest(c_profiles);
    m.outputs = {profiles_file};
    std::cerr << "crossref: " << report.matched << "/" << report.entries
              << " matched (" << report.ambiguous << " ambiguous, "
              << report.unmatched << " unmatched)\n";
    finish_manifest(m, c_out, timer);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
