// include/sstbench/error.h

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

#ifndef SSTBENCH_ERROR_H_
#define SSTBENCH_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sstbench {

enum class ErrorKind {
  kIo,
  kEmptyCorpus,
  kUnsupportedFormat,
  kDecode,
  kInsufficientData,
  kInfeasibleGrouping,
  kConfig,
  kShortUtterance,
  kEmptyUtterance,
  kLookup,
  kUndefinedScore,
  kDegenerateTrials,
  kAdapterFailure,
  kAdapterTimeout,
  kProtocol,
  kInvalidEmbedding,
  kUsage,
};

std::string_view ErrorKindName(ErrorKind kind);

/// All library failures are reported as an Error carrying a machine-readable
/// kind; what() is "<kind>: <message>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string &message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

[[noreturn]] void Fail(ErrorKind kind, const std::string &message);

}  // namespace sstbench

#endif  // SSTBENCH_ERROR_H_
