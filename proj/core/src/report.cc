// src/report.cc

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

#include "sstbench/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "sstbench/error.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace sstbench {

namespace {

std::string Full(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string Fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string HtmlEscape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0, hi = 0.0;
  bool any = false;
};

Range TaskRange(const MatrixReport &r, Task task) {
  Range out;
  for (const auto &[key, cell] : r.cells) {
    if (key.task != task || !cell.ok()) continue;
    if (!out.any) {
      out.lo = out.hi = cell.mean;
      out.any = true;
    } else {
      out.lo = std::min(out.lo, cell.mean);
      out.hi = std::max(out.hi, cell.mean);
    }
  }
  return out;
}

const CellResult *FindCell(const MatrixReport &r, Task task, DrawStrategy tr, DrawStrategy te) {
  auto it = r.cells.find({task, tr, te});
  return it == r.cells.end() ? nullptr : &it->second;
}

std::string TaskTitle(const MatrixReport &r, Task task) {
  return r.model_name + " on " + r.corpus_name + ", " + std::string(TaskName(task)) + " " +
         std::string(MetricName(task)) + " (%)";
}

void WriteFile(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
  if (!out) Fail(ErrorKind::kIo, "write failed for " + path.string());
}

}  // namespace

std::string RenderCsv(const MatrixReport &r) {
  std::string out = "model,task,train_strategy,test_strategy,metric,mean,sd,n_runs\n";
  for (Task task : r.tasks)
    for (DrawStrategy tr : r.strategies_train)
      for (DrawStrategy te : r.strategies_test) {
        const CellResult *c = FindCell(r, task, tr, te);
        if (!c) continue;
        out += r.model_name + "," + std::string(TaskName(task)) + "," +
               std::string(StrategyName(tr)) + "," + std::string(StrategyName(te)) + "," +
               std::string(MetricName(task)) + ",";
        if (c->ok())
          out += Full(c->mean) + "," + Full(c->sd) + "," + std::to_string(c->per_run.size());
        else
          out += "nan,nan,0";
        out += "\n";
      }
  return out;
}

std::string RenderMarkdown(const MatrixReport &r) {
  std::ostringstream out;
  out << "# " << r.model_name << " on " << r.corpus_name << "\n\n";
  out << "config digest `" << r.config_digest << "`, master seed " << r.master_seed << ", "
      << r.runs << " run(s)\n";
  for (Task task : r.tasks) {
    Range range = TaskRange(r, task);
    const bool bold = range.any && range.lo != range.hi;
    out << "\n## " << TaskTitle(r, task) << "\n\n| train \\ test |";
    for (DrawStrategy te : r.strategies_test) out << " " << StrategyName(te) << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < r.strategies_test.size(); ++i) out << "---|";
    out << "\n";
    for (DrawStrategy tr : r.strategies_train) {
      out << "| " << StrategyName(tr) << " |";
      for (DrawStrategy te : r.strategies_test) {
        const CellResult *c = FindCell(r, task, tr, te);
        if (!c || !c->ok()) {
          out << " failed |";
          continue;
        }
        std::string text = Fixed2(c->mean) + " ± " + Fixed2(c->sd);
        if (bold && c->mean == range.lo) text = "**" + text + "**";
        out << " " << text << " |";
      }
      out << "\n";
    }
    for (DrawStrategy tr : r.strategies_train)
      for (DrawStrategy te : r.strategies_test) {
        const CellResult *c = FindCell(r, task, tr, te);
        if (c && !c->ok())
          out << "\n- " << StrategyName(tr) << "/" << StrategyName(te) << " failed: " << c->error;
      }
    out << "\n";
  }
  return out.str();
}

std::string CellColor(double value, double lo, double hi) {
  double t = hi > lo ? (value - lo) / (hi - lo) : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const int red = static_cast<int>(std::lround(255.0 * t));
  const int green = 255 - red;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x00", red, green);
  return buf;
}

std::string RenderHtml(const MatrixReport &r) {
  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>"
      << HtmlEscape(r.model_name) << "</title>\n<style>\n"
      << "table { border-collapse: collapse; margin-bottom: 1.5em; }\n"
      << "td, th { border: 1px solid #444; padding: 4px 10px; text-align: right; }\n"
      << "</style>\n</head>\n<body>\n";
  out << "<p>config digest " << r.config_digest << ", master seed " << r.master_seed << ", "
      << r.runs << " run(s)</p>\n";
  for (Task task : r.tasks) {
    Range range = TaskRange(r, task);
    const bool bold = range.any && range.lo != range.hi;
    out << "<h2>" << HtmlEscape(TaskTitle(r, task)) << "</h2>\n<table>\n<tr><th>train \\ test</th>";
    for (DrawStrategy te : r.strategies_test) out << "<th>" << StrategyName(te) << "</th>";
    out << "</tr>\n";
    for (DrawStrategy tr : r.strategies_train) {
      out << "<tr><th>" << StrategyName(tr) << "</th>";
      for (DrawStrategy te : r.strategies_test) {
        const CellResult *c = FindCell(r, task, tr, te);
        if (!c || !c->ok()) {
          out << "<td style=\"background:#bbbbbb\" title=\""
              << HtmlEscape(c ? c->error : std::string("missing")) << "\">failed</td>";
          continue;
        }
        std::string text = Fixed2(c->mean) + " &plusmn; " + Fixed2(c->sd);
        if (bold && c->mean == range.lo) text = "<b>" + text + "</b>";
        out << "<td style=\"background:" << CellColor(c->mean, range.lo, range.hi) << "\">"
            << text << "</td>";
      }
      out << "</tr>\n";
    }
    out << "</table>\n";
  }
  out << "</body>\n</html>\n";
  return out.str();
}

std::string RenderJson(const MatrixReport &r) {
  json j;
  j["model"] = r.model_name;
  j["corpus"] = r.corpus_name;
  j["config_digest"] = r.config_digest;
  j["master_seed"] = std::to_string(r.master_seed);
  j["runs"] = r.runs;
  for (Task t : r.tasks) j["tasks"].push_back(std::string(TaskName(t)));
  for (DrawStrategy s : r.strategies_train) j["strategies_train"].push_back(std::string(StrategyName(s)));
  for (DrawStrategy s : r.strategies_test) j["strategies_test"].push_back(std::string(StrategyName(s)));
  j["cells"] = json::array();
  for (const auto &[key, cell] : r.cells) {
    json c;
    c["task"] = std::string(TaskName(key.task));
    c["train"] = std::string(StrategyName(key.train));
    c["test"] = std::string(StrategyName(key.test));
    c["per_run"] = cell.per_run;
    if (!cell.ok()) c["error"] = cell.error;
    j["cells"].push_back(std::move(c));
  }
  return j.dump(2) + "\n";
}

MatrixReport ParseReportJson(const std::string &text) {
  MatrixReport r;
  try {
    json j = json::parse(text);
    r.model_name = j.at("model").get<std::string>();
    r.corpus_name = j.at("corpus").get<std::string>();
    r.config_digest = j.at("config_digest").get<std::string>();
    r.master_seed = std::stoull(j.at("master_seed").get<std::string>());
    r.runs = j.at("runs").get<int>();
    for (const auto &t : j.at("tasks")) r.tasks.push_back(ParseTask(t.get<std::string>()));
    for (const auto &s : j.at("strategies_train"))
      r.strategies_train.push_back(ParseStrategy(s.get<std::string>()));
    for (const auto &s : j.at("strategies_test"))
      r.strategies_test.push_back(ParseStrategy(s.get<std::string>()));
    for (const auto &c : j.at("cells")) {
      CellKey key{ParseTask(c.at("task").get<std::string>()),
                  ParseStrategy(c.at("train").get<std::string>()),
                  ParseStrategy(c.at("test").get<std::string>())};
      CellResult cell;
      cell.per_run = c.at("per_run").get<std::vector<double>>();
      if (c.contains("error")) cell.error = c.at("error").get<std::string>();
      cell.Aggregate();
      r.cells[key] = std::move(cell);
    }
  } catch (const json::exception &e) {
    Fail(ErrorKind::kProtocol, std::string("malformed report JSON: ") + e.what());
  }
  return r;
}

MatrixReport ReadReportJson(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseReportJson(ss.str());
}

std::vector<fs::path> EmitReport(const MatrixReport &report, const std::set<std::string> &formats,
                                 const fs::path &out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) Fail(ErrorKind::kIo, "cannot create " + out_dir.string() + ": " + ec.message());
  std::vector<fs::path> written;
  auto emit = [&](const std::string &name, const std::string &text) {
    WriteFile(out_dir / name, text);
    written.push_back(out_dir / name);
  };
  emit("report.json", RenderJson(report));
  for (const std::string &f : formats) {
    if (f == "csv") emit("matrix.csv", RenderCsv(report));
    else if (f == "markdown") emit("matrix.md", RenderMarkdown(report));
    else if (f == "html") emit("matrix.html", RenderHtml(report));
    else Fail(ErrorKind::kConfig, "unknown report format '" + f + "'");
  }
  return written;
}

}  // namespace sstbench
