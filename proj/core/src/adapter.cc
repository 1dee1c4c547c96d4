// src/adapter.cc

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

#include "sstbench/adapter.h"

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "sstbench/error.h"

extern char **environ;

namespace fs = std::filesystem;
using nlohmann::json;

namespace sstbench {
namespace {

std::string ShellQuote(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

std::string Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteJson(const fs::path &p, const json &j) {
  std::ofstream out(p);
  if (!out) Fail(ErrorKind::kIo, "cannot write " + p.string());
  out << j.dump(2) << '\n';
}

fs::path PrepareWorkdir(const fs::path &workdir) {
  std::error_code ec;
  fs::create_directories(workdir, ec);
  if (!fs::is_directory(workdir))
    Fail(ErrorKind::kIo, "cannot create adapter workdir " + workdir.string());
  fs::path abs = fs::absolute(workdir);
  for (const char *stale : {"result.json", "embeddings.bin"}) fs::remove(abs / stale, ec);
  return abs;
}

void Invoke(const EmbeddingModelRef &model, const fs::path &workdir,
            const AdapterOptions &options) {
  std::string err;
  int status = RunAdapterProcess(model.adapter_command, workdir, options.timeout_s, &err);
  if (status != 0)
    Fail(ErrorKind::kAdapterFailure, "adapter exited with code " + std::to_string(status) +
                                         (err.empty() ? "" : "; stderr: " + err));
}

json ReadResult(const fs::path &workdir, bool required) {
  const fs::path p = workdir / "result.json";
  if (!fs::exists(p)) {
    if (required) Fail(ErrorKind::kProtocol, "adapter did not write result.json");
    return json::object();
  }
  json j;
  try {
    j = json::parse(Slurp(p));
  } catch (const json::exception &e) {
    Fail(ErrorKind::kProtocol, std::string("malformed result.json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("status") || !j["status"].is_string())
    Fail(ErrorKind::kProtocol, "result.json lacks a string 'status'");
  if (j["status"] != "ok") {
    std::string msg = j.value("message", std::string());
    Fail(ErrorKind::kAdapterFailure,
         "adapter reported status '" + j["status"].get<std::string>() + "'" +
             (msg.empty() ? "" : ": " + msg));
  }
  return j;
}

}  // namespace

Tensor StackSegments(std::span<const FeatureMatrix> segments, std::uint32_t bins,
                     std::uint32_t length) {
  Tensor t;
  if (!segments.empty()) {
    bins = static_cast<std::uint32_t>(segments.front().rows());
    length = static_cast<std::uint32_t>(segments.front().cols());
  }
  t.dims = {static_cast<std::uint32_t>(segments.size()), bins, length};
  t.values.reserve(t.ElementCount());
  for (const auto &s : segments) {
    if (s.rows() != bins || s.cols() != length)
      Fail(ErrorKind::kProtocol, "segments passed to the adapter differ in shape");
    for (std::size_t r = 0; r < bins; ++r)
      for (std::size_t c = 0; c < length; ++c) t.values.push_back(s(r, c));
  }
  return t;
}

int RunAdapterProcess(const std::string &command, const fs::path &workdir, double timeout_s,
                      std::string *stderr_text) {
  const std::string shell_cmd = command + " --job " + ShellQuote(workdir.string());
  const std::string out_path = (workdir / "adapter.stdout").string();
  const std::string err_path = (workdir / "adapter.stderr").string();

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, out_path.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0644);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, err_path.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0644);
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
  posix_spawnattr_setpgroup(&attr, 0);

  const char *argv[] = {"/bin/sh", "-c", shell_cmd.c_str(), nullptr};
  pid_t pid = 0;
  int rc = posix_spawn(&pid, "/bin/sh", &actions, &attr, const_cast<char **>(argv), environ);
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  if (rc != 0)
    Fail(ErrorKind::kAdapterFailure, "cannot spawn adapter: " + std::string(strerror(rc)));

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration<double>(std::max(timeout_s, 0.0));
  int status = 0;
  for (;;) {
    pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (done < 0) Fail(ErrorKind::kAdapterFailure, "waitpid failed");
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      waitpid(pid, &status, 0);
      Fail(ErrorKind::kAdapterTimeout,
           "adapter did not finish within " + std::to_string(timeout_s) + " s");
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  if (stderr_text) *stderr_text = Slurp(err_path);
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  if (WIFSIGNALED(status)) return 128 + WTERMSIG(status);
  return -1;
}

ModelState AdapterFit(const EmbeddingModelRef &model, const Tensor &train_features,
                      std::span<const SegmentLabel> labels, const fs::path &workdir_in,
                      const AdapterOptions &options) {
  model.Validate();
  if (train_features.dims.empty() || train_features.dims[0] != labels.size())
    Fail(ErrorKind::kProtocol, "training tensor rows do not match label count");
  const fs::path workdir = PrepareWorkdir(workdir_in);
  const fs::path features = workdir / "train_features.sstf";
  const fs::path labels_csv = workdir / "labels.csv";
  WriteTensorFile(features, train_features);
  {
    std::ofstream out(labels_csv);
    if (!out) Fail(ErrorKind::kIo, "cannot write " + labels_csv.string());
    out << "segment_index,utterance_id,speaker_id\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
      out << i << ',' << labels[i].utterance_id << ',' << labels[i].speaker_id << '\n';
  }
  json params = json::object();
  for (const auto &[k, v] : options.params) params[k] = v;
  WriteJson(workdir / "job.json", {{"command", "fit"},
                                   {"features_path", features.string()},
                                   {"labels_path", labels_csv.string()},
                                   {"seed", options.seed},
                                   {"params", params},
                                   {"timeout_s", options.timeout_s}});
  Invoke(model, workdir, options);
  json result = ReadResult(workdir, true);
  if (!result.contains("model_path") || !result["model_path"].is_string())
    Fail(ErrorKind::kProtocol, "result.json lacks a string 'model_path'");
  fs::path model_path = result["model_path"].get<std::string>();
  if (model_path.is_relative()) model_path = workdir / model_path;
  if (!fs::exists(model_path))
    Fail(ErrorKind::kProtocol, "adapter model_path does not exist: " + model_path.string());
  return ModelState{model_path.string()};
}

std::vector<Embedding> AdapterEmbedSegments(const EmbeddingModelRef &model,
                                            const ModelState &state, const Tensor &segments,
                                            std::span<const std::string> segment_utterances,
                                            const fs::path &workdir_in,
                                            const AdapterOptions &options) {
  model.Validate();
  if (segments.dims.empty() || segments.dims[0] != segment_utterances.size())
    Fail(ErrorKind::kProtocol, "segment tensor rows do not match segment list");
  const fs::path workdir = PrepareWorkdir(workdir_in);
  const fs::path features = workdir / "segments.sstf";
  const fs::path listing = workdir / "segments.csv";
  const fs::path output = workdir / "embeddings.bin";
  WriteTensorFile(features, segments);
  {
    std::ofstream out(listing);
    if (!out) Fail(ErrorKind::kIo, "cannot write " + listing.string());
    out << "segment_index,utterance_id\n";
    for (std::size_t i = 0; i < segment_utterances.size(); ++i)
      out << i << ',' << segment_utterances[i] << '\n';
  }
  WriteJson(workdir / "job.json", {{"command", "embed"},
                                   {"model_path", state.model_path},
                                   {"features_path", features.string()},
                                   {"output_path", output.string()},
                                   {"segments_path", listing.string()}});
  Invoke(model, workdir, options);
  ReadResult(workdir, false);
  if (!fs::exists(output)) Fail(ErrorKind::kProtocol, "adapter did not write " + output.string());
  Tensor emb = ReadTensorFile(output);
  if (emb.dims.size() != 2)
    Fail(ErrorKind::kProtocol, "embeddings must be a 2-D (n_segments, d) tensor");
  if (emb.dims[0] != segment_utterances.size())
    Fail(ErrorKind::kProtocol, "adapter returned " + std::to_string(emb.dims[0]) +
                                   " rows for " + std::to_string(segment_utterances.size()) +
                                   " segments");
  const std::size_t d = emb.dims[1];
  std::vector<Embedding> out(emb.dims[0]);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].vector.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
      const float v = emb.values[i * d + k];
      if (!std::isfinite(v))
        Fail(ErrorKind::kInvalidEmbedding,
             "non-finite value in embedding row " + std::to_string(i) + " (" +
                 segment_utterances[i] + ")");
      out[i].vector[k] = v;
    }
  }
  return out;
}

EmbeddingMap AdapterEmbed(const EmbeddingModelRef &model, const ModelState &state,
                          const Tensor &segments,
                          std::span<const std::string> segment_utterances,
                          const fs::path &workdir, const AdapterOptions &options) {
  std::vector<Embedding> rows =
      AdapterEmbedSegments(model, state, segments, segment_utterances, workdir, options);
  std::map<std::string, std::vector<Embedding>> grouped;
  for (std::size_t i = 0; i < rows.size(); ++i)
    grouped[segment_utterances[i]].push_back(std::move(rows[i]));
  EmbeddingMap out;
  for (auto &[utt, parts] : grouped) out[utt] = MeanEmbedding(parts);
  return out;
}

}  // namespace sstbench
