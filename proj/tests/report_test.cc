// tests/report_test.cc

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

#include <gtest/gtest.h>

#include <sstream>

#include "sstbench/report.h"
#include "test_util.h"

namespace sstbench {
namespace {

const std::vector<DrawStrategy> kAll{DrawStrategy::kOS, DrawStrategy::kSS, DrawStrategy::kSU};

// 3x3 SV matrix with means 0, 1.25, ..., 9.75 in row-major order.
MatrixReport Grid() {
  MatrixReport r;
  r.model_name = "avg-baseline";
  r.corpus_name = "toy";
  r.config_digest = "0123456789abcdef";
  r.master_seed = 18446744073709551615ull;
  r.runs = 2;
  r.tasks = {Task::kSV};
  r.strategies_train = kAll;
  r.strategies_test = kAll;
  int i = 0;
  for (DrawStrategy tr : kAll)
    for (DrawStrategy te : kAll) {
      const double m = i == 8 ? 9.75 : 1.25 * i;
      CellResult c;
      c.per_run = {m - 0.5, m + 0.5};
      c.Aggregate();
      r.cells[{Task::kSV, tr, te}] = c;
      ++i;
    }
  return r;
}

std::vector<std::string> Lines(const std::string &s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(ReportTest, CsvHasHeaderPlusOneRowPerCell) {
  const auto lines = Lines(RenderCsv(Grid()));
  ASSERT_EQ(lines.size(), 10u);
  EXPECT_EQ(lines[0], "model,task,train_strategy,test_strategy,metric,mean,sd,n_runs");
  EXPECT_EQ(lines[1].rfind("avg-baseline,SV,OS,OS,EER,", 0), 0u) << lines[1];
  EXPECT_NE(lines[9].find(",9.75,"), std::string::npos) << lines[9];
}

TEST(ReportTest, FailedCellRendersNan) {
  MatrixReport r = Grid();
  CellResult &c = r.cells.at({Task::kSV, DrawStrategy::kSU, DrawStrategy::kSU});
  c.error = "adapter-failure: boom";
  c.per_run.clear();
  c.mean = c.sd = std::nan("");
  EXPECT_EQ(r.FailedCells(), 1u);
  const auto lines = Lines(RenderCsv(r));
  EXPECT_EQ(lines[9], "avg-baseline,SV,SU,SU,EER,nan,nan,0");
  EXPECT_NE(RenderMarkdown(r).find("boom"), std::string::npos);
  EXPECT_NE(RenderHtml(r).find("#bbbbbb"), std::string::npos);
}

TEST(ReportTest, MarkdownBoldsMinimumOnly) {
  const std::string md = RenderMarkdown(Grid());
  EXPECT_NE(md.find("**0.00 ± 0.71**"), std::string::npos) << md;
  EXPECT_NE(md.find("9.75 ± 0.71"), std::string::npos);
  EXPECT_EQ(md.find("**1.25"), std::string::npos);
  EXPECT_NE(md.find("avg-baseline on toy"), std::string::npos);
}

TEST(ReportTest, MarkdownAllEqualHasNoBold) {
  MatrixReport r = Grid();
  for (auto &[k, c] : r.cells) {
    c.per_run = {3, 3};
    c.Aggregate();
  }
  EXPECT_EQ(RenderMarkdown(r).find("**"), std::string::npos);
}

TEST(ReportTest, ColorScaleEndpoints) {
  EXPECT_EQ(CellColor(0.0, 0.0, 9.75), "#00ff00");
  EXPECT_EQ(CellColor(9.75, 0.0, 9.75), "#ff0000");
  EXPECT_EQ(CellColor(4.875, 0.0, 9.75), "#807f00");
  const std::string html = RenderHtml(Grid());
  EXPECT_NE(html.find("#00ff00"), std::string::npos);
  EXPECT_NE(html.find("#ff0000"), std::string::npos);
}

TEST(ReportTest, JsonRoundTripIsLossless) {
  MatrixReport r = Grid();
  CellResult &third = r.cells.at({Task::kSV, DrawStrategy::kOS, DrawStrategy::kSS});
  third.per_run[0] = 1.0 / 3.0;
  third.Aggregate();
  r.cells.at({Task::kSV, DrawStrategy::kOS, DrawStrategy::kSU}).error = "x";
  MatrixReport back = ParseReportJson(RenderJson(r));
  EXPECT_EQ(back.master_seed, r.master_seed);
  EXPECT_EQ(back.config_digest, r.config_digest);
  EXPECT_EQ(back.strategies_test, r.strategies_test);
  EXPECT_EQ(RenderCsv(back), RenderCsv(r));
  EXPECT_EQ(back.cells.at({Task::kSV, DrawStrategy::kOS, DrawStrategy::kSS}).per_run,
            r.cells.at({Task::kSV, DrawStrategy::kOS, DrawStrategy::kSS}).per_run);
  EXPECT_EQ(back.cells.at({Task::kSV, DrawStrategy::kOS, DrawStrategy::kSU}).error, "x");
}

TEST(ReportTest, EmitWritesRequestedFormats) {
  testing::TempDir dir;
  auto files = EmitReport(Grid(), {"csv"}, dir / "out");
  EXPECT_TRUE(std::filesystem::exists(dir / "out/report.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "out/matrix.csv"));
  EXPECT_FALSE(std::filesystem::exists(dir / "out/matrix.md"));
  EXPECT_EQ(files.size(), 2u);
  EXPECT_EQ(RenderCsv(ReadReportJson(dir / "out/report.json")), RenderCsv(Grid()));
}

}  // namespace
}  // namespace sstbench
