// src/config.cc

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

#include "sstbench/config.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sstbench/error.h"
#include "sstbench/rng.h"
#include "text_util.h"

namespace fs = std::filesystem;

namespace sstbench {

KeyValueConfig KeyValueConfig::Parse(std::string_view text, std::string_view origin) {
  KeyValueConfig kv;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      // A '#' inside quotes is kept.
      auto q = line.find('"');
      if (q == std::string_view::npos || hash < q) line = line.substr(0, hash);
    }
    line = text::Trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        Fail(ErrorKind::kConfig, std::string(origin) + ":" + std::to_string(line_no) +
                                     ": unterminated section header");
      section = std::string(text::Trim(line.substr(1, line.size() - 2)));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      Fail(ErrorKind::kConfig, std::string(origin) + ":" + std::to_string(line_no) +
                                   ": expected key = value");
    std::string key(text::Trim(line.substr(0, eq)));
    std::string value(text::Trim(line.substr(eq + 1)));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (key.empty())
      Fail(ErrorKind::kConfig, std::string(origin) + ":" + std::to_string(line_no) + ": empty key");
    kv.values_[section.empty() ? key : section + "." + key] = value;
  }
  return kv;
}

KeyValueConfig KeyValueConfig::Load(const fs::path &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str(), path.string());
}

void KeyValueConfig::Set(std::string_view assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    Fail(ErrorKind::kConfig, "override must be key=value, got '" + std::string(assignment) + "'");
  std::string key(text::Trim(assignment.substr(0, eq)));
  std::string value(text::Trim(assignment.substr(eq + 1)));
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
    value = value.substr(1, value.size() - 2);
  values_[key] = value;
}

std::string_view TaskName(Task t) { return t == Task::kSV ? "SV" : "SC"; }
std::string_view MetricName(Task t) { return t == Task::kSV ? "EER" : "MR"; }

Task ParseTask(std::string_view s) {
  if (s == "SV" || s == "sv") return Task::kSV;
  if (s == "SC" || s == "sc") return Task::kSC;
  Fail(ErrorKind::kConfig, "unknown task '" + std::string(s) + "'");
}

std::string ToHex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

namespace {

class Reader {
 public:
  Reader(const KeyValueConfig &kv, fs::path base) : kv_(kv), base_(std::move(base)) {}

  const std::string *Raw(const std::string &key) {
    used_.insert(key);
    auto it = kv_.values().find(key);
    return it == kv_.values().end() ? nullptr : &it->second;
  }

  void String(const std::string &key, std::string &out) {
    if (auto *v = Raw(key)) out = *v;
  }
  void Path(const std::string &key, fs::path &out) {
    if (auto *v = Raw(key)) out = Resolve(*v);
  }
  void OptPath(const std::string &key, std::optional<fs::path> &out) {
    if (auto *v = Raw(key); v && !v->empty()) out = Resolve(*v);
  }
  template <typename Int>
  void Integer(const std::string &key, Int &out) {
    if (auto *v = Raw(key))
      if (!text::ParseInt(*v, out)) Bad(key, *v, "an integer");
  }
  void Real(const std::string &key, double &out) {
    if (auto *v = Raw(key))
      if (!text::ParseDouble(*v, out)) Bad(key, *v, "a number");
  }
  void Bool(const std::string &key, bool &out) {
    if (auto *v = Raw(key)) {
      std::string s = text::ToLower(*v);
      if (s == "true" || s == "1" || s == "yes") out = true;
      else if (s == "false" || s == "0" || s == "no") out = false;
      else Bad(key, *v, "a boolean");
    }
  }
  template <typename T, typename ParseFn>
  void List(const std::string &key, std::vector<T> &out, ParseFn parse) {
    if (auto *v = Raw(key)) {
      out.clear();
      for (const auto &item : text::Split(*v, ',')) {
        auto t = text::Trim(item);
        if (!t.empty()) out.push_back(parse(t));
      }
    }
  }

  /// Keys under `prefix`, consumed.
  std::map<std::string, std::string> Prefixed(const std::string &prefix) {
    std::map<std::string, std::string> out;
    for (const auto &[k, v] : kv_.values())
      if (k.rfind(prefix, 0) == 0) {
        used_.insert(k);
        out[k.substr(prefix.size())] = v;
      }
    return out;
  }

  void RejectUnknown() const {
    std::vector<std::string> unknown;
    for (const auto &[k, v] : kv_.values())
      if (!used_.count(k)) unknown.push_back(k);
    if (!unknown.empty())
      Fail(ErrorKind::kConfig, "unknown config key(s): " + text::Join(unknown, ", "));
  }

 private:
  [[noreturn]] static void Bad(const std::string &key, const std::string &v, const char *what) {
    Fail(ErrorKind::kConfig, "config key '" + key + "' = '" + v + "' is not " + what);
  }
  fs::path Resolve(const std::string &v) const {
    fs::path p(v);
    return p.is_relative() && !base_.empty() ? base_ / p : p;
  }

  const KeyValueConfig &kv_;
  fs::path base_;
  std::set<std::string> used_;
};

std::string JoinStrategies(const std::vector<DrawStrategy> &v) {
  std::vector<std::string> s;
  for (auto x : v) s.emplace_back(StrategyName(x));
  return text::Join(s, ",");
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::FromKeyValues(const KeyValueConfig &kv,
                                                 const fs::path &base_dir) {
  ExperimentConfig c;
  Reader r(kv, base_dir);
  r.Path("corpus.manifest", c.manifest_path);
  r.OptPath("corpus.root", c.corpus_root);
  r.String("corpus.name", c.corpus_name);
  r.OptPath("corpus.cache_dir", c.cache_dir);
  r.Bool("corpus.allow_decimation", c.allow_decimation);

  FrontendConfig &f = c.frontend;
  r.Integer("frontend.sample_rate", f.sample_rate);
  r.Real("frontend.win_length", f.win_length);
  r.Real("frontend.hop_length", f.hop_length);
  r.Integer("frontend.n_fft", f.n_fft);
  r.Integer("frontend.n_mels", f.n_mels);
  r.Real("frontend.fmin", f.fmin);
  r.Real("frontend.fmax", f.fmax);
  r.Real("frontend.log_floor", f.log_floor);
  r.Real("frontend.preemphasis", f.preemphasis);
  if (auto *v = r.Raw("frontend.normalization")) f.normalization = ParseNormalization(*v);

  r.Real("segment_t_train", c.segment_t_train);
  r.Real("segment_t_eval", c.segment_t_eval);
  r.List("strategies_train", c.strategies_train, ParseStrategy);
  r.List("strategies_test", c.strategies_test, ParseStrategy);
  r.List("tasks", c.tasks, ParseTask);
  r.Integer("runs", c.runs);
  if (auto *v = r.Raw("master_seed"); v && !v->empty()) {
    std::uint64_t s = 0;
    if (!text::ParseInt(*v, s))
      Fail(ErrorKind::kConfig, "master_seed must be an unsigned 64-bit integer");
    c.master_seed = s;
  }
  r.Integer("epochs", c.epochs);
  r.Integer("eval.segments_per_utterance", c.segments_per_utterance);
  r.Integer("jobs", c.jobs);

  if (auto *v = r.Raw("model.kind")) c.model.kind = ParseModelKind(*v);
  r.String("model.adapter_command", c.model.adapter_command);
  if (auto *v = r.Raw("model.feature_space")) c.model.feature_space = ParseFeatureSpace(*v);
  c.model_name = std::string(ModelKindName(c.model.kind));
  r.String("model.name", c.model_name);
  c.frontend.feature_space = c.model.feature_space;

  if (auto *v = r.Raw("sv.scorer")) c.scorer = ParseScorer(*v);
  r.Integer("sc.n_speakers", c.sc_speakers);
  if (auto *v = r.Raw("sc.part_sizes")) {
    auto parts = text::Split(*v, ',');
    if (parts.size() != 2 || !text::ParseInt(parts[0], c.sc_part_sizes.first) ||
        !text::ParseInt(parts[1], c.sc_part_sizes.second))
      Fail(ErrorKind::kConfig, "sc.part_sizes must be two integers 'a,b'");
  }
  if (auto *v = r.Raw("sc.linkage")) c.sc_linkage = ParseLinkage(*v);
  if (auto *v = r.Raw("sc.distance")) c.sc_distance = ParseDistance(*v);
  if (auto *v = r.Raw("sc.mr")) {
    if (*v == "matching") c.mr_definition = MrDefinition::kMatching;
    else if (*v == "majority") c.mr_definition = MrDefinition::kMajority;
    else Fail(ErrorKind::kConfig, "sc.mr must be matching or majority");
  }

  bool vocode = false;
  r.Bool("vocode", vocode);
  VocoderConfig vc;
  r.Integer("vocoder.n_bands", vc.n_bands);
  r.Real("vocoder.fmin", vc.fmin);
  r.Real("vocoder.fmax", vc.fmax);
  r.Real("vocoder.env_cutoff", vc.env_cutoff);
  r.Integer("vocoder.filter_order", vc.filter_order);
  bool explicit_noise_seed = false;
  if (auto *v = r.Raw("vocoder.noise_seed"); v && !v->empty()) {
    if (!text::ParseInt(*v, vc.noise_seed))
      Fail(ErrorKind::kConfig, "vocoder.noise_seed must be an unsigned integer");
    explicit_noise_seed = true;
  }
  if (auto *v = r.Raw("vocoder.band_edges"); v && !v->empty()) {
    for (const auto &item : text::Split(*v, ',')) {
      double e = 0.0;
      if (!text::ParseDouble(item, e)) Fail(ErrorKind::kConfig, "bad vocoder.band_edges");
      vc.band_edges.push_back(e);
    }
  }
  if (vocode) {
    c.vocode = vc;
    // Without an explicit noise seed the carrier seed follows master_seed at
    // run time (see VocoderBaseSeed).
    if (!explicit_noise_seed) c.vocode->noise_seed = 0;
    c.vocoder_seed_explicit = explicit_noise_seed;
  }

  r.Real("adapter.timeout_s", c.adapter_timeout_s);
  r.Path("adapter.workdir", c.adapter_workdir);
  for (auto &[k, v] : r.Prefixed("adapter.params.")) c.adapter_params[k] = v;

  if (auto *v = r.Raw("report.formats")) {
    c.report_formats.clear();
    for (const auto &item : text::Split(*v, ',')) {
      std::string fmt(text::Trim(item));
      if (fmt != "csv" && fmt != "markdown" && fmt != "html")
        Fail(ErrorKind::kConfig, "unknown report format '" + fmt + "'");
      c.report_formats.insert(fmt);
    }
  }
  r.Path("report.out_dir", c.output_dir);
  r.RejectUnknown();

  if (c.corpus_name.empty()) c.corpus_name = c.manifest_path.stem().string();
  return c;
}

void ExperimentConfig::Validate() const {
  auto bad = [](const std::string &what) { Fail(ErrorKind::kConfig, what); };
  if (manifest_path.empty()) bad("corpus.manifest is required");
  frontend.Validate();
  model.Validate();
  if (runs < 1) bad("runs must be >= 1");
  if (strategies_train.empty() || strategies_test.empty()) bad("strategy sets must be nonempty");
  if (tasks.empty()) bad("tasks must be nonempty");
  if (!(segment_t_train > 0.0) || !(segment_t_eval > 0.0)) bad("segment lengths must be positive");
  if (SegmentFrames(segment_t_train, frontend.hop_length) < 1 ||
      SegmentFrames(segment_t_eval, frontend.hop_length) < 1)
    bad("segment shorter than one hop");
  if (epochs < 0) bad("epochs must be >= 0");
  if (segments_per_utterance < 1) bad("eval.segments_per_utterance must be >= 1");
  if (sc_speakers < 1 || sc_part_sizes.first < 1 || sc_part_sizes.second < 1)
    bad("sc.n_speakers and sc.part_sizes must be positive");
  if (vocode) vocode->Validate(frontend.sample_rate);
  if (!(adapter_timeout_s > 0.0)) bad("adapter.timeout_s must be positive");
}

std::string ExperimentConfig::Canonical() const {
  std::map<std::string, std::string> kv;
  kv["corpus.manifest"] = manifest_path.generic_string();
  kv["corpus.name"] = corpus_name;
  kv["corpus.allow_decimation"] = allow_decimation ? "true" : "false";
  kv["frontend.sample_rate"] = std::to_string(frontend.sample_rate);
  kv["frontend.win_length"] = Num(frontend.win_length);
  kv["frontend.hop_length"] = Num(frontend.hop_length);
  kv["frontend.n_fft"] = std::to_string(frontend.n_fft);
  kv["frontend.n_mels"] = std::to_string(frontend.n_mels);
  kv["frontend.fmin"] = Num(frontend.fmin);
  kv["frontend.fmax"] = Num(frontend.fmax);
  kv["frontend.log_floor"] = Num(frontend.log_floor);
  kv["frontend.preemphasis"] = Num(frontend.preemphasis);
  kv["frontend.normalization"] = std::string(NormalizationName(frontend.normalization));
  kv["segment_t_train"] = Num(segment_t_train);
  kv["segment_t_eval"] = Num(segment_t_eval);
  kv["strategies_train"] = JoinStrategies(strategies_train);
  kv["strategies_test"] = JoinStrategies(strategies_test);
  std::vector<std::string> t;
  for (auto x : tasks) t.emplace_back(TaskName(x));
  kv["tasks"] = text::Join(t, ",");
  kv["runs"] = std::to_string(runs);
  kv["master_seed"] = master_seed ? std::to_string(*master_seed) : "";
  kv["epochs"] = std::to_string(epochs);
  kv["eval.segments_per_utterance"] = std::to_string(segments_per_utterance);
  kv["model.kind"] = std::string(ModelKindName(model.kind));
  kv["model.adapter_command"] = model.adapter_command;
  kv["model.feature_space"] = std::string(FeatureSpaceName(model.feature_space));
  kv["model.name"] = model_name;
  kv["sv.scorer"] = std::string(ScorerName(scorer));
  kv["sc.n_speakers"] = std::to_string(sc_speakers);
  kv["sc.part_sizes"] = std::to_string(sc_part_sizes.first) + "," +
                        std::to_string(sc_part_sizes.second);
  kv["sc.linkage"] = std::string(LinkageName(sc_linkage));
  kv["sc.distance"] = std::string(DistanceName(sc_distance));
  kv["sc.mr"] = mr_definition == MrDefinition::kMatching ? "matching" : "majority";
  kv["vocode"] = vocode ? "true" : "false";
  if (vocode) {
    kv["vocoder.n_bands"] = std::to_string(vocode->n_bands);
    kv["vocoder.fmin"] = Num(vocode->fmin);
    kv["vocoder.fmax"] = Num(vocode->fmax);
    kv["vocoder.env_cutoff"] = Num(vocode->env_cutoff);
    kv["vocoder.filter_order"] = std::to_string(vocode->filter_order);
    kv["vocoder.noise_seed"] =
        vocoder_seed_explicit ? std::to_string(vocode->noise_seed) : "";
    std::vector<std::string> e;
    for (double x : vocode->band_edges) e.push_back(Num(x));
    kv["vocoder.band_edges"] = text::Join(e, ",");
  }
  for (const auto &[k, v] : adapter_params) kv["adapter.params." + k] = v;
  std::string out;
  for (const auto &[k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

std::string ExperimentConfig::Digest() const {
  const std::string c = Canonical();
  return ToHex64(Mix64(Fnv1a64(c)));
}

}  // namespace sstbench
