// src/runner.cc

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

#include "sstbench/runner.h"

#include <cmath>
#include <cstdio>
#include <system_error>

#include "parallel.h"
#include "sstbench/audio.h"
#include "sstbench/error.h"
#include "sstbench/metrics.h"
#include "sstbench/rng.h"
#include "sstbench/tensor_file.h"
#include "sstbench/vocoder.h"

namespace fs = std::filesystem;

namespace sstbench {

namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string Short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string OneLine(std::string s) {
  for (char &c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

}  // namespace

void FeatureStore::Add(Spectrogram spec) {
  std::string id = spec.utterance_id;
  features_[id] = std::move(spec);
}

bool FeatureStore::Contains(const std::string &utterance_id) const {
  return features_.count(utterance_id) != 0;
}

const Spectrogram &FeatureStore::Get(const std::string &utterance_id) const {
  auto it = features_.find(utterance_id);
  if (it == features_.end())
    Fail(ErrorKind::kLookup, "no features for utterance '" + utterance_id + "'");
  return it->second;
}

std::uint64_t VocoderBaseSeed(const ExperimentConfig &config, std::uint64_t master_seed) {
  if (config.vocode && config.vocoder_seed_explicit) return config.vocode->noise_seed;
  return master_seed;
}

std::string FeatureCacheKey(const ExperimentConfig &config, std::uint64_t master_seed) {
  const FrontendConfig &f = config.frontend;
  std::string s = "sr=" + std::to_string(f.sample_rate) + ";win=" + Num(f.win_length) +
                  ";hop=" + Num(f.hop_length) + ";nfft=" + std::to_string(f.n_fft) +
                  ";mels=" + std::to_string(f.n_mels) + ";fmin=" + Num(f.fmin) +
                  ";fmax=" + Num(f.fmax) + ";floor=" + Num(f.log_floor) +
                  ";norm=" + std::string(NormalizationName(f.normalization)) +
                  ";pre=" + Num(f.preemphasis) +
                  ";space=" + std::string(FeatureSpaceName(f.feature_space)) +
                  ";decim=" + (config.allow_decimation ? "1" : "0");
  if (config.vocode) {
    const VocoderConfig &v = *config.vocode;
    s += ";voc=1;edges=";
    for (double e : v.ResolveEdges(f.sample_rate)) s += Num(e) + ",";
    s += ";env=" + Num(v.env_cutoff) + ";order=" + std::to_string(v.filter_order) +
         ";seed=" + std::to_string(VocoderBaseSeed(config, master_seed));
  }
  return ToHex64(Mix64(Fnv1a64(s)));
}

FeatureStore PrepareFeatures(const ExperimentConfig &config, std::uint64_t master_seed,
                             const LogSink &log) {
  config.frontend.Validate();
  if (config.vocode) config.vocode->Validate(config.frontend.sample_rate);
  Manifest manifest = ReadManifestCsv(config.manifest_path, config.corpus_root);
  if (manifest.entries.empty()) Fail(ErrorKind::kEmptyCorpus, "manifest has no entries");

  std::optional<fs::path> cache;
  if (config.cache_dir) {
    cache = *config.cache_dir / FeatureCacheKey(config, master_seed);
    std::error_code ec;
    fs::create_directories(*cache, ec);
    if (ec) Fail(ErrorKind::kIo, "cannot create cache directory " + cache->string());
  }
  const std::uint64_t noise_base = VocoderBaseSeed(config, master_seed);
  const auto &entries = manifest.entries;
  std::vector<Spectrogram> specs(entries.size());
  std::vector<char> hits(entries.size(), 0);

  ParallelFor(entries.size(), config.jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const ManifestEntry &e = entries[i];
      fs::path cached;
      if (cache) {
        cached = *cache / (ToHex64(Fnv1a64(e.utterance_id + '\n' + e.audio_path)) + ".sstf");
        if (fs::exists(cached)) {
          specs[i] = LoadSpectrogram(cached, e.utterance_id, config.frontend.hop_length);
          hits[i] = 1;
          continue;
        }
      }
      AudioClip clip = ConformSampleRate(ReadAudio(manifest.AbsolutePath(e)),
                                         config.frontend.sample_rate, config.allow_decimation);
      if (config.vocode) {
        VocoderConfig vc = *config.vocode;
        vc.noise_seed = UtteranceNoiseSeed(noise_base, e.utterance_id);
        clip = NoiseVocode(clip, vc);
      }
      specs[i] = ComputeSpectrogram(clip, config.frontend, e.utterance_id);
      if (cache) {
        // Write then rename so a concurrent reader never sees a partial file.
        fs::path tmp = cached;
        tmp += ".tmp" + std::to_string(i);
        SaveSpectrogram(tmp, specs[i]);
        fs::rename(tmp, cached);
      }
    }
  });

  std::size_t n_hits = 0;
  for (char h : hits) n_hits += h;
  if (log)
    log("event=features utterances=" + std::to_string(entries.size()) +
        " cache_hits=" + std::to_string(n_hits) +
        " vocoded=" + (config.vocode ? "true" : "false"));
  FeatureStore store(std::move(manifest));
  for (auto &s : specs) store.Add(std::move(s));
  return store;
}

FeatureMatrix GatherColumns(const FeatureMatrix &spec, std::span<const std::uint32_t> permutation) {
  FeatureMatrix out(spec.rows(), permutation.size());
  for (std::size_t j = 0; j < permutation.size(); ++j) {
    auto src = spec.Column(permutation[j]);
    std::copy(src.begin(), src.end(), out.Column(j).begin());
  }
  return out;
}

void CellResult::Aggregate() {
  const std::size_t n = per_run.size();
  if (n == 0) {
    mean = sd = std::nan("");
    return;
  }
  double sum = 0.0;
  for (double v : per_run) sum += v;
  mean = sum / static_cast<double>(n);
  if (n == 1) {
    sd = 0.0;
    return;
  }
  double ss = 0.0;
  for (double v : per_run) ss += (v - mean) * (v - mean);
  sd = std::sqrt(ss / static_cast<double>(n - 1));
}

std::size_t MatrixReport::FailedCells() const {
  std::size_t n = 0;
  for (const auto &[key, cell] : cells) n += cell.ok() ? 0 : 1;
  return n;
}

ExperimentRunner::ExperimentRunner(ExperimentConfig config, const FeatureStore &store,
                                   std::uint64_t master_seed, LogSink log)
    : config_(std::move(config)),
      store_(store),
      master_seed_(master_seed),
      log_(std::move(log)),
      train_length_(SegmentFrames(config_.segment_t_train, config_.frontend.hop_length)),
      eval_length_(SegmentFrames(config_.segment_t_eval, config_.frontend.hop_length)) {
  if (train_length_ == 0 || eval_length_ == 0)
    Fail(ErrorKind::kConfig, "segment shorter than one hop");
  config_.model.Validate();
}

void ExperimentRunner::Log(const std::string &line) const {
  if (log_) log_(line);
}

const TrialList &ExperimentRunner::sv_trials() {
  if (!sv_trials_) sv_trials_ = BuildSvTrials(store_.manifest(), TrialOrdering::kUnordered);
  return *sv_trials_;
}

std::vector<UtteranceFrames> ExperimentRunner::TrainUtterances() const {
  std::vector<UtteranceFrames> out;
  for (const ManifestEntry *e : store_.manifest().Select(Split::kTrain))
    out.push_back({e->utterance_id, store_.Get(e->utterance_id).n_frames()});
  return out;
}

std::uint64_t ExperimentRunner::TrainPlanDigest(DrawStrategy train, int run) const {
  auto utts = TrainUtterances();
  return DrawPlanDigest(utts, static_cast<std::size_t>(config_.epochs), train, train_length_,
                        master_seed_, static_cast<std::uint32_t>(run));
}

fs::path ExperimentRunner::AdapterDir(DrawStrategy train, int run) const {
  return config_.adapter_workdir /
         (std::string(StrategyName(train)) + "-run" + std::to_string(run));
}

AdapterOptions ExperimentRunner::AdapterOpts(int run) const {
  AdapterOptions o;
  o.timeout_s = config_.adapter_timeout_s;
  o.seed = DeriveSeed(master_seed_, {static_cast<std::uint64_t>(run)});
  o.params = config_.adapter_params;
  return o;
}

const ExperimentRunner::FittedModel &ExperimentRunner::Fit(DrawStrategy train, int run) {
  auto key = std::make_pair(train, run);
  if (auto it = fitted_.find(key); it != fitted_.end()) return it->second;

  FittedModel model;
  auto utts = TrainUtterances();
  model.plan_digest = DrawPlanDigest(utts, static_cast<std::size_t>(config_.epochs), train,
                                     train_length_, master_seed_,
                                     static_cast<std::uint32_t>(run));
  if (config_.model.kind == ModelKind::kExternalAdapter) {
    if (utts.empty() || config_.epochs == 0)
      Fail(ErrorKind::kInsufficientData, "no training segments for the adapter");
    std::vector<FeatureMatrix> segments;
    std::vector<SegmentLabel> labels;
    segments.reserve(utts.size() * static_cast<std::size_t>(config_.epochs));
    ForEachDraw(utts, static_cast<std::size_t>(config_.epochs), train, train_length_,
                master_seed_, static_cast<std::uint32_t>(run), [&](const DrawRecord &r) {
                  const Spectrogram &spec = store_.Get(r.utterance_id);
                  segments.push_back(GatherColumns(spec.data, r.permutation));
                  labels.push_back({r.utterance_id,
                                    store_.manifest().Find(r.utterance_id)->speaker_id});
                });
    Tensor features = StackSegments(segments);
    segments.clear();
    model.adapter_state = AdapterFit(config_.model, features, labels,
                                     AdapterDir(train, run) / "fit", AdapterOpts(run));
  }
  Log("event=fit train=" + std::string(StrategyName(train)) + " run=" + std::to_string(run) +
      " plan_digest=" + ToHex64(model.plan_digest));
  return fitted_.emplace(key, std::move(model)).first->second;
}

EmbeddingMap ExperimentRunner::Embed(const FittedModel &model, DrawStrategy train,
                                     DrawStrategy test, int run,
                                     const std::vector<const Spectrogram *> &specs,
                                     std::string_view purpose) {
  const std::size_t k = static_cast<std::size_t>(config_.segments_per_utterance);
  auto draw = [&](const Spectrogram &spec, std::size_t j) {
    SeedPath path{static_cast<std::uint32_t>(run), -1 - static_cast<std::int64_t>(j),
                  spec.utterance_id};
    return DrawSegment(spec, test, eval_length_, master_seed_, path);
  };

  EmbeddingMap out;
  if (config_.model.kind == ModelKind::kAvgBaseline) {
    std::vector<Embedding> embs(specs.size());
    ParallelFor(specs.size(), config_.jobs, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        std::vector<Embedding> parts;
        for (std::size_t j = 0; j < k; ++j) parts.push_back(AvgEmbed(draw(*specs[i], j)));
        embs[i] = k == 1 ? std::move(parts[0]) : MeanEmbedding(parts);
      }
    });
    for (std::size_t i = 0; i < specs.size(); ++i)
      out.emplace(specs[i]->utterance_id, std::move(embs[i]));
    return out;
  }

  std::vector<FeatureMatrix> segments;
  std::vector<std::string> owners;
  for (const Spectrogram *spec : specs)
    for (std::size_t j = 0; j < k; ++j) {
      segments.push_back(draw(*spec, j).data);
      owners.push_back(spec->utterance_id);
    }
  const auto bins = static_cast<std::uint32_t>(specs.empty() ? 0 : specs[0]->n_bins());
  Tensor tensor = StackSegments(segments, bins, static_cast<std::uint32_t>(eval_length_));
  segments.clear();
  fs::path dir = AdapterDir(train, run) /
                 ("embed-" + std::string(purpose) + "-" + std::string(StrategyName(test)));
  return AdapterEmbed(config_.model, *model.adapter_state, tensor, owners, dir, AdapterOpts(run));
}

EmbeddingMap ExperimentRunner::EmbedTestSplit(DrawStrategy train, DrawStrategy test, int run) {
  const FittedModel &model = Fit(train, run);
  std::vector<const Spectrogram *> specs;
  for (const std::string &u : sv_trials().utterances) specs.push_back(&store_.Get(u));
  return Embed(model, train, test, run, specs, "sv");
}

double ExperimentRunner::EvaluateSv(const EmbeddingMap &embeddings) {
  ScoreSet scores = ScorePairs(embeddings, sv_trials(), config_.scorer, config_.jobs);
  return 100.0 * ComputeEer(scores, sv_trials()).eer;
}

double ExperimentRunner::RunSc(DrawStrategy train, DrawStrategy test, int run) {
  const FittedModel &model = Fit(train, run);
  SplitMixStream rng(
      DeriveSeed(master_seed_, {static_cast<std::uint64_t>(run), Tag(StreamRole::kClusterSample)}));
  ClusterTaskSpec task = BuildClusterTask(store_.manifest(), config_.sc_speakers,
                                          config_.sc_part_sizes, rng);

  std::vector<Spectrogram> composites;
  std::vector<std::string> labels;
  for (const ClusterGroup &g : task.groups) {
    for (int part = 1; part <= 2; ++part) {
      Spectrogram c;
      c.utterance_id = ClusterTaskSpec::CompositeId(g, part);
      c.hop_length = config_.frontend.hop_length;
      for (const std::string &u : part == 1 ? g.part1 : g.part2)
        c.data.AppendColumns(store_.Get(u).data);
      composites.push_back(std::move(c));
      labels.push_back(g.speaker_id);
    }
  }
  std::vector<const Spectrogram *> specs;
  for (const auto &c : composites) specs.push_back(&c);
  EmbeddingMap map = Embed(model, train, test, run, specs, "sc");

  std::vector<Embedding> items;
  for (const auto &c : composites) items.push_back(map.at(c.utterance_id));
  Partition p = HierCluster(items, task.n_speakers, config_.sc_linkage, config_.sc_distance);
  double mr = config_.mr_definition == MrDefinition::kMatching
                  ? MisclassificationRate(p, labels)
                  : MisclassificationRateMajority(p, labels);
  return 100.0 * mr;
}

double ExperimentRunner::RunCondition(DrawStrategy train, DrawStrategy test, Task task, int run) {
  if (task == Task::kSV) return EvaluateSv(EmbedTestSplit(train, test, run));
  return RunSc(train, test, run);
}

MatrixReport ExperimentRunner::RunMatrix() {
  MatrixReport report;
  report.model_name = config_.model_name;
  report.corpus_name = config_.corpus_name;
  report.config_digest = config_.Digest();
  report.master_seed = master_seed_;
  report.runs = config_.runs;
  report.tasks = config_.tasks;
  report.strategies_train = config_.strategies_train;
  report.strategies_test = config_.strategies_test;
  for (Task task : config_.tasks)
    for (DrawStrategy tr : config_.strategies_train)
      for (DrawStrategy te : config_.strategies_test) report.cells[{task, tr, te}];

  for (int run = 0; run < config_.runs; ++run) {
    for (DrawStrategy tr : config_.strategies_train) {
      for (DrawStrategy te : config_.strategies_test) {
        for (Task task : config_.tasks) {
          CellResult &cell = report.cells[{task, tr, te}];
          if (!cell.ok()) continue;
          std::string where = "task=" + std::string(TaskName(task)) +
                              " train=" + std::string(StrategyName(tr)) +
                              " test=" + std::string(StrategyName(te)) +
                              " run=" + std::to_string(run);
          try {
            double v = RunCondition(tr, te, task, run);
            cell.per_run.push_back(v);
            Log("event=condition " + where + " metric=" + std::string(MetricName(task)) +
                " value=" + Short(v));
          } catch (const std::exception &e) {
            cell.error = OneLine(e.what());
            Log("event=condition_failed " + where + " error=\"" + cell.error + "\"");
          }
        }
      }
    }
    // Models of finished runs are no longer needed.
    std::erase_if(fitted_, [run](const auto &kv) { return kv.first.second == run; });
  }
  for (auto &[key, cell] : report.cells) {
    if (!cell.ok()) cell.per_run.clear();
    cell.Aggregate();
  }
  return report;
}

}  // namespace sstbench
