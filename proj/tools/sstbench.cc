// tools/sstbench.cc

// Copyright 2026  The sstbench Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// sstbench: command-line front end.
//
//   sstbench <verb> [options]
//
// Verbs: scan featurize vocode trials fit embed eval-sv eval-sc matrix report.
// Log lines go to stderr and results to stdout, both as key=value pairs.
// Exit status: 0 ok, 1 usage/config/runtime error, 2 some matrix cells failed.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sstbench/audio.h"
#include "sstbench/config.h"
#include "sstbench/corpus.h"
#include "sstbench/error.h"
#include "sstbench/metrics.h"
#include "sstbench/models.h"
#include "sstbench/report.h"
#include "sstbench/rng.h"
#include "sstbench/runner.h"
#include "sstbench/scramble.h"
#include "sstbench/vocoder.h"

namespace fs = std::filesystem;
using namespace sstbench;

namespace {

constexpr const char *kCacheEnv = "SSTBENCH_CACHE_DIR";

// Options every verb accepts.
struct Common {
  std::optional<std::uint64_t> seed;
  int jobs = 0;
  std::vector<std::string> sets;
  bool mr_majority = false;
  std::string config;
};

void AddCommon(CLI::App *app, Common &c) {
  app->add_option("--seed", c.seed, "master seed (random and printed when omitted)");
  app->add_option("--jobs", c.jobs, "worker threads (0 = all cores)");
  app->add_option("--set", c.sets, "config override key=value (repeatable)");
  app->add_flag("--mr-majority", c.mr_majority, "score clustering by per-cluster majority");
  app->add_option("--config", c.config, "experiment config file");
}

void Emit(const std::string &line) { std::cerr << line << '\n'; }

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t RandomSeed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// Resolves the master seed: --seed, then the config's master_seed, then a
// fresh random seed. The choice is always logged so the run can be replayed.
std::uint64_t ResolveSeed(const Common &c, const std::optional<std::uint64_t> &from_config) {
  const char *source = "flag";
  std::uint64_t seed = 0;
  if (c.seed) {
    seed = *c.seed;
  } else if (from_config) {
    seed = *from_config;
    source = "config";
  } else {
    seed = RandomSeed();
    source = "random";
  }
  Emit("event=seed seed=" + std::to_string(seed) + " source=" + source);
  return seed;
}

ExperimentConfig LoadConfig(const Common &c, const std::string &manifest = {}) {
  KeyValueConfig kv;
  fs::path base;
  if (!c.config.empty()) {
    kv = KeyValueConfig::Load(c.config);
    base = fs::absolute(c.config).parent_path();
  }
  if (!manifest.empty()) kv.Set("corpus.manifest", fs::absolute(manifest).string());
  if (c.jobs != 0) kv.Set("jobs", std::to_string(c.jobs));
  if (c.mr_majority) kv.Set("sc.mr", "majority");
  for (const auto &s : c.sets) kv.Set(s);
  ExperimentConfig cfg = ExperimentConfig::FromKeyValues(kv, base);
  if (!cfg.cache_dir)
    if (const char *env = std::getenv(kCacheEnv); env && *env) cfg.cache_dir = fs::path(env);
  cfg.Validate();
  return cfg;
}

EmbeddingSet TestSplitSet(const FeatureStore &store, const EmbeddingMap &map) {
  EmbeddingSet set;
  for (const ManifestEntry *e : store.manifest().Select(Split::kTest)) {
    set.utterance_ids.push_back(e->utterance_id);
    set.speaker_ids.push_back(e->speaker_id);
    set.embeddings.push_back(map.at(e->utterance_id));
  }
  return set;
}

int CmdScan(const Common &c, const std::string &root, const std::string &layout,
            const std::string &out, bool exclude_sa, bool no_verify) {
  ResolveSeed(c, std::nullopt);
  ScanOptions opt;
  opt.layout = ParseLayout(layout);
  opt.exclude_sa = exclude_sa;
  opt.verify_audio = !no_verify;
  Manifest m = ScanCorpus(root, opt);
  // Audio paths stay relative to the corpus root. A manifest read back
  // resolves them against its own directory unless corpus.root is set, so the
  // default location is the root itself.
  fs::path dst = out.empty() ? fs::path(root) / "manifest.csv" : fs::path(out);
  if (out == "-") WriteManifestCsv(std::cout, m);
  else WriteManifestCsv(dst, m);
  Emit("event=scan entries=" + std::to_string(m.entries.size()) +
       " train=" + std::to_string(m.Select(Split::kTrain).size()) +
       " test=" + std::to_string(m.Select(Split::kTest).size()));
  return 0;
}

int CmdFeaturize(const Common &c, const std::string &manifest, const std::string &out) {
  ExperimentConfig cfg = LoadConfig(c, manifest);
  if (!out.empty()) cfg.cache_dir = fs::path(out);
  if (!cfg.cache_dir)
    Fail(ErrorKind::kUsage, "featurize needs --out, corpus.cache_dir or " + std::string(kCacheEnv));
  std::uint64_t seed = ResolveSeed(c, cfg.master_seed);
  FeatureStore store = PrepareFeatures(cfg, seed, Emit);
  std::cout << "features_dir=" << (*cfg.cache_dir / FeatureCacheKey(cfg, seed)).string()
            << " utterances=" << store.size() << '\n';
  return 0;
}

int CmdVocode(const Common &c, const std::string &manifest_path, const std::string &out,
              const VocoderConfig &base_vc) {
  std::uint64_t seed = ResolveSeed(c, std::nullopt);
  Manifest m = ReadManifestCsv(fs::path(manifest_path));
  fs::create_directories(out);
  Manifest vocoded;
  vocoded.root = fs::absolute(out);
  std::size_t done = 0;
  for (const ManifestEntry &e : m.entries) {
    AudioClip clip = ReadAudio(m.AbsolutePath(e));
    base_vc.Validate(clip.sample_rate);
    VocoderConfig vc = base_vc;
    vc.noise_seed = UtteranceNoiseSeed(seed, e.utterance_id);
    AudioClip y = NoiseVocode(clip, vc);
    ManifestEntry ve = e;
    ve.audio_path = fs::path(e.audio_path).replace_extension(".wav").generic_string();
    fs::path dst = vocoded.root / ve.audio_path;
    fs::create_directories(dst.parent_path());
    WriteWav(dst, y);
    vocoded.entries.push_back(std::move(ve));
    ++done;
  }
  WriteManifestCsv(vocoded.root / "manifest.csv", vocoded);
  Emit("event=vocode utterances=" + std::to_string(done) +
       " bands=" + std::to_string(base_vc.n_bands));
  std::cout << "manifest=" << (vocoded.root / "manifest.csv").string() << '\n';
  return 0;
}

int CmdTrials(const Common &c, const std::string &manifest, const std::string &ordering,
              const std::string &voxceleb, const std::string &audio_root,
              const std::string &manifest_out, const std::string &out) {
  ResolveSeed(c, std::nullopt);
  TrialList trials;
  if (!voxceleb.empty()) {
    auto [m, t] = ImportVoxCelebTrials(voxceleb, audio_root);
    if (!manifest_out.empty()) WriteManifestCsv(fs::path(manifest_out), m);
    trials = std::move(t);
  } else {
    if (manifest.empty()) Fail(ErrorKind::kUsage, "trials needs --manifest or --voxceleb");
    trials = BuildSvTrials(ReadManifestCsv(fs::path(manifest)), ParseTrialOrdering(ordering));
  }
  if (out.empty()) WriteTrialList(std::cout, trials);
  else WriteTrialList(fs::path(out), trials);
  Emit("event=trials trials=" + std::to_string(trials.size()) +
       " targets=" + std::to_string(trials.CountTargets()));
  return 0;
}

int CmdFit(const Common &c, const std::string &manifest, const std::string &train,
           int run, const std::string &plan_out) {
  ExperimentConfig cfg = LoadConfig(c, manifest);
  std::uint64_t seed = ResolveSeed(c, cfg.master_seed);
  FeatureStore store = PrepareFeatures(cfg, seed, Emit);
  ExperimentRunner runner(cfg, store, seed, Emit);
  DrawStrategy s = ParseStrategy(train);
  if (!plan_out.empty()) {
    std::vector<UtteranceFrames> utts;
    for (const ManifestEntry *e : store.manifest().Select(Split::kTrain))
      utts.push_back({e->utterance_id, store.Get(e->utterance_id).n_frames()});
    std::ofstream f(plan_out);
    if (!f) Fail(ErrorKind::kIo, "cannot write " + plan_out);
    f << "run,epoch,utterance_id,strategy,window_start,permutation\n";
    ForEachDraw(utts, static_cast<std::size_t>(cfg.epochs), s,
                SegmentFrames(cfg.segment_t_train, cfg.frontend.hop_length), seed,
                static_cast<std::uint32_t>(run),
                [&](const DrawRecord &r) { f << DrawRecordCsvLine(r) << '\n'; });
  }
  const auto &model = runner.Fit(s, run);
  std::cout << "plan_digest=" << ToHex64(model.plan_digest);
  if (model.adapter_state) std::cout << " model_path=" << model.adapter_state->model_path;
  std::cout << '\n';
  return 0;
}

int CmdEmbed(const Common &c, const std::string &manifest, const std::string &train,
             const std::string &test, int run, const std::string &out) {
  ExperimentConfig cfg = LoadConfig(c, manifest);
  std::uint64_t seed = ResolveSeed(c, cfg.master_seed);
  FeatureStore store = PrepareFeatures(cfg, seed, Emit);
  ExperimentRunner runner(cfg, store, seed, Emit);
  EmbeddingMap map = runner.EmbedTestSplit(ParseStrategy(train), ParseStrategy(test), run);
  EmbeddingSet set = TestSplitSet(store, map);
  WriteEmbeddingSet(out, set);
  std::cout << "embeddings=" << set.embeddings.size()
            << " dim=" << (set.embeddings.empty() ? 0 : set.embeddings[0].dim()) << '\n';
  return 0;
}

int CmdEvalSv(const Common &c, const std::string &scores_path, const std::string &emb_stem,
              const std::string &trials_path, const std::string &scorer,
              const std::string &scores_out) {
  ResolveSeed(c, std::nullopt);
  TrialList trials;
  ScoreSet scores;
  if (!scores_path.empty()) {
    std::tie(trials, scores) = ReadScoresCsv(scores_path);
  } else {
    if (emb_stem.empty()) Fail(ErrorKind::kUsage, "eval-sv needs --scores or --embeddings");
    EmbeddingSet set = ReadEmbeddingSet(emb_stem);
    if (!trials_path.empty()) {
      trials = ReadTrialList(trials_path);
    } else {
      trials = BuildTrials(set.utterance_ids, set.speaker_ids, TrialOrdering::kUnordered);
    }
    scores = ScorePairs(ToMap(set), trials, ParseScorer(scorer), c.jobs);
    if (!scores_out.empty()) WriteScoresCsv(scores_out, trials, scores);
  }
  EerResult r = ComputeEer(scores, trials);
  std::cout << "eer=" << Num(100.0 * r.eer) << " threshold=" << Num(r.threshold)
            << " n_target=" << r.n_target << " n_nontarget=" << r.n_nontarget << '\n';
  return 0;
}

int CmdEvalSc(const Common &c, const std::string &emb_stem, const std::string &linkage,
              const std::string &distance) {
  ResolveSeed(c, std::nullopt);
  EmbeddingSet set = ReadEmbeddingSet(emb_stem);
  std::set<std::string> speakers(set.speaker_ids.begin(), set.speaker_ids.end());
  const int k = static_cast<int>(speakers.size());
  Partition p = HierCluster(set.embeddings, k, ParseLinkage(linkage), ParseDistance(distance));
  double mr = c.mr_majority ? MisclassificationRateMajority(p, set.speaker_ids)
                            : MisclassificationRate(p, set.speaker_ids);
  std::cout << "mr=" << Num(100.0 * mr) << " k=" << k << " items=" << set.embeddings.size()
            << '\n';
  return 0;
}

int CmdMatrix(const Common &c, const std::string &out) {
  if (c.config.empty() && c.sets.empty()) Fail(ErrorKind::kUsage, "matrix needs --config");
  ExperimentConfig cfg = LoadConfig(c);
  if (!out.empty()) cfg.output_dir = out;
  std::uint64_t seed = ResolveSeed(c, cfg.master_seed);
  Emit("event=config digest=" + cfg.Digest());
  FeatureStore store = PrepareFeatures(cfg, seed, Emit);
  ExperimentRunner runner(cfg, store, seed, Emit);
  MatrixReport report = runner.RunMatrix();
  for (const auto &path : EmitReport(report, cfg.report_formats, cfg.output_dir))
    Emit("event=wrote path=" + path.string());
  const std::size_t failed = report.FailedCells();
  std::cout << "cells=" << report.cells.size() << " failed=" << failed << '\n';
  return failed ? 2 : 0;
}

int CmdReport(const Common &c, const std::string &in, const std::string &out,
              const std::vector<std::string> &formats) {
  ResolveSeed(c, std::nullopt);
  MatrixReport report = ReadReportJson(in);
  std::set<std::string> fmts(formats.begin(), formats.end());
  for (const auto &path : EmitReport(report, fmts, out)) Emit("event=wrote path=" + path.string());
  return report.FailedCells() ? 2 : 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Speaker-embedding time-scrambling benchmark"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "help for every verb");
  Common common;
  std::function<int()> action;

  // scan
  std::string root, layout = "timit-tree", out;
  bool exclude_sa = false, no_verify = false;
  auto *scan = app.add_subcommand("scan", "build a manifest from a corpus directory");
  AddCommon(scan, common);
  scan->add_option("--root", root, "corpus root")->required();
  scan->add_option("--layout", layout, "timit-tree or flat-with-csv");
  scan->add_option("--out", out, "manifest CSV (default <root>/manifest.csv, '-' for stdout)");
  scan->add_flag("--exclude-sa", exclude_sa, "drop TIMIT SA sentences");
  scan->add_flag("--no-verify", no_verify, "skip audio magic-byte checks");
  scan->callback([&] { action = [&] { return CmdScan(common, root, layout, out, exclude_sa, no_verify); }; });

  // featurize
  std::string manifest;
  auto *feat = app.add_subcommand("featurize", "compute and cache spectrograms");
  AddCommon(feat, common);
  feat->add_option("--manifest", manifest, "manifest CSV");
  feat->add_option("--out", out, "feature cache directory");
  feat->callback([&] { action = [&] { return CmdFeaturize(common, manifest, out); }; });

  // vocode
  VocoderConfig vc;
  std::string edges;
  auto *voc = app.add_subcommand("vocode", "noise-vocode every utterance of a manifest");
  AddCommon(voc, common);
  voc->add_option("--manifest", manifest, "manifest CSV")->required();
  voc->add_option("--out", out, "output directory")->required();
  voc->add_option("--bands", vc.n_bands, "number of bands");
  voc->add_option("--fmin", vc.fmin, "lowest band edge in Hz");
  voc->add_option("--fmax", vc.fmax, "highest band edge in Hz");
  voc->add_option("--env-cutoff", vc.env_cutoff, "envelope low-pass cutoff in Hz");
  voc->add_option("--order", vc.filter_order, "Butterworth order per pass");
  voc->add_option("--edges", edges, "explicit comma-separated band edges in Hz");
  voc->callback([&] {
    action = [&] {
      for (const auto &e : CLI::detail::split(edges, ','))
        if (!e.empty()) vc.band_edges.push_back(std::stod(e));
      return CmdVocode(common, manifest, out, vc);
    };
  });

  // trials
  std::string ordering = "ordered", voxceleb, audio_root, manifest_out;
  auto *tri = app.add_subcommand("trials", "build or import an SV trial list");
  AddCommon(tri, common);
  tri->add_option("--manifest", manifest, "manifest CSV");
  tri->add_option("--ordering", ordering, "ordered or unordered");
  tri->add_option("--voxceleb", voxceleb, "import a 'label path1 path2' trial file");
  tri->add_option("--audio-root", audio_root, "audio root for --voxceleb");
  tri->add_option("--manifest-out", manifest_out, "write the imported manifest here");
  tri->add_option("--out", out, "trial list file (stdout when omitted)");
  tri->callback([&] {
    action = [&] {
      return CmdTrials(common, manifest, ordering, voxceleb, audio_root, manifest_out, out);
    };
  });

  // fit
  std::string train = "OS", test = "OS", plan_out;
  int run = 0;
  auto *fit = app.add_subcommand("fit", "fit the model for one training strategy and run");
  AddCommon(fit, common);
  fit->add_option("--manifest", manifest, "manifest CSV (overrides corpus.manifest)");
  fit->add_option("--train-strategy", train, "OS, SS or SU");
  fit->add_option("--run", run, "run index");
  fit->add_option("--plan-out", plan_out, "write the training draw plan CSV");
  fit->callback([&] { action = [&] { return CmdFit(common, manifest, train, run, plan_out); }; });

  // embed
  auto *emb = app.add_subcommand("embed", "embed the test split");
  AddCommon(emb, common);
  emb->add_option("--manifest", manifest, "manifest CSV (overrides corpus.manifest)");
  emb->add_option("--train-strategy", train, "OS, SS or SU");
  emb->add_option("--test-strategy", test, "OS, SS or SU");
  emb->add_option("--run", run, "run index");
  emb->add_option("--out", out, "output stem (<stem>.sstf and <stem>.csv)")->required();
  emb->callback([&] { action = [&] { return CmdEmbed(common, manifest, train, test, run, out); }; });

  // eval-sv
  std::string scores, embeddings, trials_file, scorer = "cosine", scores_out;
  auto *esv = app.add_subcommand("eval-sv", "equal error rate from scores or embeddings");
  AddCommon(esv, common);
  esv->add_option("--scores", scores, "scores CSV enroll,test,is_target,score");
  esv->add_option("--embeddings", embeddings, "embedding set stem");
  esv->add_option("--trials", trials_file, "trial list (all unordered pairs when omitted)");
  esv->add_option("--scorer", scorer, "cosine or neg-sq-euclidean");
  esv->add_option("--scores-out", scores_out, "dump computed scores");
  esv->callback([&] {
    action = [&] { return CmdEvalSv(common, scores, embeddings, trials_file, scorer, scores_out); };
  });

  // eval-sc
  std::string linkage = "complete", distance = "cosine";
  auto *esc = app.add_subcommand("eval-sc", "cluster embeddings and report MR");
  AddCommon(esc, common);
  esc->add_option("--embeddings", embeddings, "embedding set stem")->required();
  esc->add_option("--linkage", linkage, "complete, average or single");
  esc->add_option("--distance", distance, "cosine or euclidean");
  esc->callback([&] { action = [&] { return CmdEvalSc(common, embeddings, linkage, distance); }; });

  // matrix
  auto *mat = app.add_subcommand("matrix", "run the full train x test strategy matrix");
  AddCommon(mat, common);
  mat->add_option("--out", out, "report directory (overrides report.out_dir)");
  mat->callback([&] { action = [&] { return CmdMatrix(common, out); }; });

  // report
  std::string in;
  std::vector<std::string> formats{"csv", "markdown", "html"};
  auto *rep = app.add_subcommand("report", "re-render a report.json");
  AddCommon(rep, common);
  rep->add_option("--in", in, "report.json")->required();
  rep->add_option("--out", out, "output directory")->required();
  rep->add_option("--formats", formats, "csv markdown html")->delimiter(',');
  rep->callback([&] { action = [&] { return CmdReport(common, in, out, formats); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 1;
  }
  try {
    return action();
  } catch (const Error &e) {
    std::cerr << "event=error kind=" << ErrorKindName(e.kind()) << " message=\"" << e.message()
              << "\"\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "event=error kind=internal message=\"" << e.what() << "\"\n";
    return 1;
  }
}
