// Copyright 2026 The commdet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commdet/cli.h"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commdet/benchgen.h"
#include "commdet/errors.h"
#include "commdet/harness.h"
#include "commdet/leiden.h"
#include "json.hpp"

namespace commdet {
namespace {

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::string bench;
  bool weighted = false;
  std::string algorithm = "leiden";
  std::string quality = "cpm";
  std::optional<double> resolution;
  double theta = kDefaultTheta;
  std::uint64_t seed = 0;
  std::string iterations = "10";
  int max_iterations = 100;
  int patience = 10;
  std::string audit = "none";
  int exact_limit = 14;
  std::string output;
  std::string partition_out;
  std::string bench_out;
  std::string experiment = "single";
  int replications = 10;
  bool no_timing = false;
};

std::string CsvPath(const std::string& report_path) {
  const auto dot = report_path.rfind('.');
  const auto slash = report_path.find_last_of("/\\");
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
    return report_path.substr(0, dot) + ".csv";
  }
  return report_path + ".csv";
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw FileError("cannot open " + path + " for writing");
  return f;
}

int Execute(const Options& o, std::ostream& out, std::ostream& err) {
  // Graph.
  Graph base;
  std::vector<CommunityId> planted;
  std::optional<BenchmarkSpec> spec;
  if (!o.input.empty()) {
    std::ifstream in(o.input);
    if (!in) throw FileError("cannot open " + o.input);
    try {
      base = LoadEdgeList(in, o.weighted);
    } catch (const ParseError& e) {
      throw FileError(o.input + ": " + e.what());
    }
  } else {
    spec = BenchmarkSpec::Parse(o.bench);
    if (o.bench.find("seed=") == std::string::npos) spec->seed = o.seed;
    PlantedBenchmark b = GeneratePlanted(*spec);
    base = std::move(b.graph);
    planted = std::move(b.planted);
    if (!o.bench_out.empty()) {
      std::ofstream edges = OpenOut(o.bench_out + ".edges");
      WriteEdgeList(edges, base);
      std::ofstream part = OpenOut(o.bench_out + ".partition");
      std::vector<std::int64_t> labels(planted.begin(), planted.end());
      WritePartition(part, Partition::FromLabels(base, labels));
    }
  }

  // Quality.
  const QualityKind kind = ParseQualityKind(o.quality);
  double gamma = 1.0;
  if (o.resolution) {
    gamma = *o.resolution;
  } else if (spec && kind == QualityKind::kCpm) {
    gamma = ResolutionForMu(*spec).gamma;
  }
  const QualityConfig q = kind == QualityKind::kCpm
                              ? QualityConfig::Cpm(gamma)
                              : QualityConfig::Modularity(gamma, base);
  const Graph g = PrepareGraph(base, q);
  if (!CheckTheta(o.theta)) {
    err << "warning: theta " << o.theta << " is outside [0.0005, 0.1]\n";
  }

  std::unique_ptr<std::ofstream> file;
  std::ostream* report_out = &out;
  if (!o.output.empty()) {
    file = std::make_unique<std::ofstream>(OpenOut(o.output));
    report_out = file.get();
  }

  int fixed_iterations = 0;
  StopRule stop = StopRule::kFixed;
  if (o.iterations == "until-stable") {
    stop = StopRule::kUntilStable;
  } else if (o.iterations == "until-asymptotic") {
    stop = StopRule::kUntilAsymptotic;
  } else {
    std::size_t used = 0;
    try {
      fixed_iterations = std::stoi(o.iterations, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != o.iterations.size() || fixed_iterations < 1) {
      throw ValidationError("--iterations must be a positive integer, "
                            "until-stable or until-asymptotic");
    }
  }

  if (o.experiment == "badly-connected") {
    const int k = stop == StopRule::kFixed ? fixed_iterations : o.max_iterations;
    const BadlyConnectedTable table = BadlyConnectedExperiment(
        g, q, o.replications, k, o.seed, o.theta, stop != StopRule::kFixed);
    nlohmann::json header{{"format", "commdet.report"},
                          {"version", 1},
                          {"experiment", "badly-connected"},
                          {"quality", ToString(q.kind)},
                          {"resolution", q.gamma},
                          {"theta", o.theta},
                          {"seed", o.seed},
                          {"replications", o.replications},
                          {"iterations", k}};
    *report_out << header.dump() << '\n';
    for (const BadlyConnectedRow& r : table.rows) {
      nlohmann::json row{{"type", "row"},
                         {"algorithm", ToString(r.algorithm)},
                         {"replication", r.replication},
                         {"percent_disconnected", r.percent_disconnected},
                         {"percent_badly_connected", r.percent_badly_connected},
                         {"communities", r.communities}};
      if (r.iteration == 0) {
        row["iteration"] = "asymptotic";
      } else {
        row["iteration"] = r.iteration;
      }
      *report_out << row.dump() << '\n';
    }
    if (!o.output.empty()) {
      std::ofstream csv = OpenOut(CsvPath(o.output));
      WriteBadlyConnectedCsv(csv, table);
    }
    return 0;
  }
  if (o.experiment != "single") {
    throw ValidationError("unknown experiment: " + o.experiment);
  }

  RunConfig cfg;
  cfg.algorithm = ParseAlgorithm(o.algorithm);
  cfg.quality = q;
  cfg.theta = o.theta;
  cfg.seed = o.seed;
  cfg.stop = stop;
  cfg.max_iterations = stop == StopRule::kFixed ? fixed_iterations : o.max_iterations;
  cfg.patience = o.patience;
  cfg.audit = ParseAuditLevel(o.audit);
  cfg.exact_limit = o.exact_limit;
  if (!planted.empty()) cfg.planted = &planted;
  const ExperimentReport report = RunIterations(g, cfg);
  WriteReportJsonl(*report_out, report, !o.no_timing);
  if (!o.output.empty()) {
    std::ofstream csv = OpenOut(CsvPath(o.output));
    WriteReportCsv(csv, report);
  }
  if (!o.partition_out.empty()) {
    std::ofstream part = OpenOut(o.partition_out);
    std::vector<std::int64_t> labels(report.final_labels.begin(),
                                     report.final_labels.end());
    WritePartition(part, Partition::FromLabels(g, labels));
  }
  return 0;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Community detection with the Louvain and Leiden algorithms"};
  Options o;
  auto* input = app.add_option("--input", o.input, "Edge list file");
  auto* bench = app.add_option("--bench", o.bench,
                               "Planted benchmark, e.g. n=1000,size=50,k=10,mu=0.3");
  input->excludes(bench);
  app.add_flag("--weighted", o.weighted, "Read a third column as edge weight");
  app.add_option("--algorithm", o.algorithm, "louvain or leiden")
      ->check(CLI::IsMember({"louvain", "leiden"}));
  app.add_option("--quality", o.quality, "cpm or modularity")
      ->check(CLI::IsMember({"cpm", "modularity"}));
  app.add_option("--resolution", o.resolution, "Resolution parameter gamma");
  app.add_option("--theta", o.theta, "Refinement randomness");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--iterations", o.iterations,
                 "Number of iterations, until-stable or until-asymptotic");
  app.add_option("--max-iterations", o.max_iterations,
                 "Iteration cap for the until-* modes");
  app.add_option("--patience", o.patience,
                 "Consecutive stable Leiden iterations for until-asymptotic");
  app.add_option("--audit", o.audit, "none, fast or full")
      ->check(CLI::IsMember({"none", "fast", "full"}));
  app.add_option("--exact-limit", o.exact_limit,
                 "Largest community checked exhaustively by the audit");
  app.add_option("--output", o.output, "Report path (JSON Lines); CSV alongside");
  app.add_option("--partition-out", o.partition_out, "Final partition file");
  app.add_option("--bench-out", o.bench_out,
                 "Write the benchmark to PREFIX.edges and PREFIX.partition");
  app.add_option("--experiment", o.experiment, "single or badly-connected")
      ->check(CLI::IsMember({"single", "badly-connected"}));
  app.add_option("--replications", o.replications,
                 "Replications for the badly-connected experiment");
  app.add_flag("--no-timing", o.no_timing, "Omit elapsed times from the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (o.input.empty() && o.bench.empty()) {
    err << "error: one of --input or --bench is required\n" << app.help();
    return 2;
  }
  try {
    return Execute(o, out, err);
  } catch (const FileError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace commdet
