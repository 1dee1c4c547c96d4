// include/sstbench/report.h

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


#ifndef SSTBENCH_REPORT_H_
#define SSTBENCH_REPORT_H_

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "sstbench/runner.h"

namespace sstbench {

// CSV rows "model,task,train_strategy,test_strategy,metric,mean,sd,n_runs",
// metrics in percent at full precision. Failed cells read "nan,nan,0".
std::string RenderCsv(const MatrixReport &report);

// One train x test table per task; cells "mean ± sd" with two decimals. Every
// cell holding the minimum mean is bold unless all cells are equal.
std::string RenderMarkdown(const MatrixReport &report);

// Same tables with each cell's background running linearly from green at the
// task's minimum mean to red at its maximum.
std::string RenderHtml(const MatrixReport &report);

/// Background colour for a cell at `value` on the [lo, hi] scale, "#rrggbb".
std::string CellColor(double value, double lo, double hi);

/// Lossless JSON form, read back by the `report` command.
std::string RenderJson(const MatrixReport &report);
MatrixReport ParseReportJson(const std::string &text);
MatrixReport ReadReportJson(const std::filesystem::path &path);

/// Writes report.json plus matrix.{csv,md,html} for the requested formats
/// ("csv", "markdown", "html") into `out_dir`. Returns the files written.
std::vector<std::filesystem::path> EmitReport(const MatrixReport &report,
                                              const std::set<std::string> &formats,
                                              const std::filesystem::path &out_dir);

}  // namespace sstbench

#endif  // SSTBENCH_REPORT_H_
