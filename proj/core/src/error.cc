// src/error.cc

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

#include "sstbench/error.h"

namespace sstbench {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "io-error";
    case ErrorKind::kEmptyCorpus: return "empty-corpus";
    case ErrorKind::kUnsupportedFormat: return "unsupported-format";
    case ErrorKind::kDecode: return "decode-error";
    case ErrorKind::kInsufficientData: return "insufficient-data";
    case ErrorKind::kInfeasibleGrouping: return "infeasible-grouping";
    case ErrorKind::kConfig: return "config-error";
    case ErrorKind::kShortUtterance: return "short-utterance";
    case ErrorKind::kEmptyUtterance: return "empty-utterance";
    case ErrorKind::kLookup: return "lookup-error";
    case ErrorKind::kUndefinedScore: return "undefined-score";
    case ErrorKind::kDegenerateTrials: return "degenerate-trials";
    case ErrorKind::kAdapterFailure: return "adapter-failure";
    case ErrorKind::kAdapterTimeout: return "adapter-timeout";
    case ErrorKind::kProtocol: return "protocol-error";
    case ErrorKind::kInvalidEmbedding: return "invalid-embedding";
    case ErrorKind::kUsage: return "usage-error";
  }
  return "unknown-error";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
      kind_(kind),
      message_(message) {}

void Fail(ErrorKind kind, const std::string &message) {
  throw Error(kind, message);
}

}  // namespace sstbench
