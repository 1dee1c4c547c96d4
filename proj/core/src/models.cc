// src/models.cc

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

#include "sstbench/models.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "parallel.h"
#include "sstbench/error.h"
#include "sstbench/tensor_file.h"
#include "text_util.h"

namespace sstbench {

ModelKind ParseModelKind(std::string_view s) {
  if (s == "avg-baseline") return ModelKind::kAvgBaseline;
  if (s == "external-adapter") return ModelKind::kExternalAdapter;
  Fail(ErrorKind::kConfig, "unknown model kind '" + std::string(s) + "'");
}

std::string_view ModelKindName(ModelKind k) {
  return k == ModelKind::kAvgBaseline ? "avg-baseline" : "external-adapter";
}

void EmbeddingModelRef::Validate() const {
  if (kind == ModelKind::kExternalAdapter && text::Trim(adapter_command).empty())
    Fail(ErrorKind::kConfig, "external-adapter model needs an adapter_command");
}

Scorer ParseScorer(std::string_view s) {
  if (s == "cosine") return Scorer::kCosine;
  if (s == "neg-sq-euclidean") return Scorer::kNegSqEuclidean;
  Fail(ErrorKind::kConfig, "unknown scorer '" + std::string(s) + "'");
}

std::string_view ScorerName(Scorer s) {
  return s == Scorer::kCosine ? "cosine" : "neg-sq-euclidean";
}

Embedding AvgEmbed(const Segment &segment) {
  const FeatureMatrix &x = segment.data;
  const std::size_t rows = x.rows(), cols = x.cols();
  if (cols == 0) Fail(ErrorKind::kEmptyUtterance, "cannot embed an empty segment");

  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (segment.permutation.size() == cols)
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return segment.permutation[a] < segment.permutation[b];
    });

  Embedding e;
  e.vector.resize(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0, comp = 0.0;
    for (std::size_t c : order) {
      const double v = x(r, c);
      const double t = sum + v;
      comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
      sum = t;
    }
    e.vector[r] = (sum + comp) / static_cast<double>(cols);
  }
  return e;
}

Embedding MeanEmbedding(std::span<const Embedding> parts) {
  if (parts.empty()) Fail(ErrorKind::kInvalidEmbedding, "no embeddings to average");
  if (parts.size() == 1) return parts.front();
  Embedding out;
  out.vector.assign(parts.front().dim(), 0.0);
  for (const auto &p : parts) {
    if (p.dim() != out.dim())
      Fail(ErrorKind::kInvalidEmbedding, "embedding dimensions differ");
    for (std::size_t i = 0; i < p.dim(); ++i) out.vector[i] += p.vector[i];
  }
  for (double &v : out.vector) v /= static_cast<double>(parts.size());
  return out;
}

Embedding L2Normalized(const Embedding &e) {
  double norm = 0.0;
  for (double v : e.vector) norm += v * v;
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) Fail(ErrorKind::kUndefinedScore, "cannot normalize a zero vector");
  Embedding out;
  out.vector.resize(e.dim());
  for (std::size_t i = 0; i < e.dim(); ++i) out.vector[i] = e.vector[i] / norm;
  out.normalized = true;
  return out;
}

double ScorePair(const Embedding &a, const Embedding &b, Scorer scorer) {
  if (a.dim() != b.dim())
    Fail(ErrorKind::kInvalidEmbedding, "embedding dimensions differ: " +
                                           std::to_string(a.dim()) + " vs " +
                                           std::to_string(b.dim()));
  if (scorer == Scorer::kNegSqEuclidean) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const double d = a.vector[i] - b.vector[i];
      s += d * d;
    }
    return -s;
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a.vector[i] * b.vector[i];
    na += a.vector[i] * a.vector[i];
    nb += b.vector[i] * b.vector[i];
  }
  if (!(na > 0.0) || !(nb > 0.0))
    Fail(ErrorKind::kUndefinedScore, "cosine score of a zero vector");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

ScoreSet ScorePairs(const EmbeddingMap &embeddings, const TrialList &trials, Scorer scorer,
                    int jobs) {
  std::vector<const Embedding *> resolved(trials.utterances.size());
  for (std::size_t i = 0; i < resolved.size(); ++i) {
    auto it = embeddings.find(trials.utterances[i]);
    if (it == embeddings.end())
      Fail(ErrorKind::kLookup, "no embedding for utterance '" + trials.utterances[i] + "'");
    resolved[i] = &it->second;
  }
  ScoreSet out;
  out.scorer = scorer;
  out.scores.resize(trials.size());
  ParallelFor(trials.size(), jobs, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const Trial &tr = trials.trials[t];
      out.scores[t] = ScorePair(*resolved[tr.enroll], *resolved[tr.test], scorer);
    }
  });
  return out;
}

void WriteScoresCsv(const std::filesystem::path &path, const TrialList &trials,
                    const ScoreSet &scores) {
  if (scores.scores.size() != trials.size())
    Fail(ErrorKind::kConfig, "score count does not match trial count");
  std::ofstream out(path);
  if (!out) Fail(ErrorKind::kIo, "cannot write " + path.string());
  out << "enroll,test,is_target,score\n";
  char buf[32];
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const Trial &t = trials.trials[i];
    std::snprintf(buf, sizeof buf, "%.17g", scores.scores[i]);
    out << trials.utterances[t.enroll] << ',' << trials.utterances[t.test] << ','
        << (t.is_target ? 1 : 0) << ',' << buf << '\n';
  }
  if (!out) Fail(ErrorKind::kIo, "short write to " + path.string());
}

std::pair<TrialList, ScoreSet> ReadScoresCsv(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open scores " + path.string());
  std::string line;
  std::getline(in, line);
  text::ChompCr(line);
  if (line != "enroll,test,is_target,score")
    Fail(ErrorKind::kDecode, "scores CSV header must be 'enroll,test,is_target,score'");
  TrialList trials;
  ScoreSet scores;
  std::unordered_map<std::string, std::uint32_t> index;
  auto intern = [&](const std::string &u) {
    auto [it, fresh] = index.try_emplace(u, static_cast<std::uint32_t>(trials.utterances.size()));
    if (fresh) trials.utterances.push_back(u);
    return it->second;
  };
  while (std::getline(in, line)) {
    text::ChompCr(line);
    if (line.empty()) continue;
    auto f = text::Split(line, ',');
    double s = 0.0;
    if (f.size() != 4 || (f[2] != "0" && f[2] != "1") || !text::ParseDouble(f[3], s))
      Fail(ErrorKind::kDecode, "malformed scores line: " + line);
    trials.trials.push_back({intern(f[0]), intern(f[1]), f[2] == "1"});
    scores.scores.push_back(s);
  }
  return {std::move(trials), std::move(scores)};
}

void WriteEmbeddingSet(const std::filesystem::path &stem, const EmbeddingSet &set) {
  const std::size_t n = set.embeddings.size();
  const std::size_t d = n ? set.embeddings.front().dim() : 0;
  Tensor t;
  t.dims = {static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(d)};
  t.values.reserve(n * d);
  for (const auto &e : set.embeddings) {
    if (e.dim() != d) Fail(ErrorKind::kInvalidEmbedding, "embedding dimensions differ");
    for (double v : e.vector) t.values.push_back(static_cast<float>(v));
  }
  std::filesystem::path bin = stem, csv = stem;
  bin += ".sstf";
  csv += ".csv";
  WriteTensorFile(bin, t);
  std::ofstream out(csv);
  if (!out) Fail(ErrorKind::kIo, "cannot write " + csv.string());
  out << "index,utterance_id,speaker_id\n";
  for (std::size_t i = 0; i < n; ++i)
    out << i << ',' << set.utterance_ids[i] << ','
        << (i < set.speaker_ids.size() ? set.speaker_ids[i] : std::string()) << '\n';
}

EmbeddingSet ReadEmbeddingSet(const std::filesystem::path &stem) {
  std::filesystem::path bin = stem, csv = stem;
  bin += ".sstf";
  csv += ".csv";
  Tensor t = ReadTensorFile(bin);
  if (t.dims.size() != 2) Fail(ErrorKind::kProtocol, bin.string() + ": expected (n, d)");
  EmbeddingSet set;
  std::ifstream in(csv);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + csv.string());
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    text::ChompCr(line);
    if (line.empty()) continue;
    auto f = text::Split(line, ',');
    if (f.size() != 3) Fail(ErrorKind::kDecode, "malformed embedding index line: " + line);
    set.utterance_ids.push_back(f[1]);
    set.speaker_ids.push_back(f[2]);
  }
  if (set.utterance_ids.size() != t.dims[0])
    Fail(ErrorKind::kProtocol, "embedding index and tensor row count differ");
  const std::size_t d = t.dims[1];
  for (std::size_t i = 0; i < t.dims[0]; ++i) {
    Embedding e;
    e.vector.assign(t.values.begin() + static_cast<std::ptrdiff_t>(i * d),
                    t.values.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
    set.embeddings.push_back(std::move(e));
  }
  return set;
}

EmbeddingMap ToMap(const EmbeddingSet &set) {
  EmbeddingMap m;
  for (std::size_t i = 0; i < set.embeddings.size(); ++i)
    m[set.utterance_ids[i]] = set.embeddings[i];
  return m;
}

}  // namespace sstbench
