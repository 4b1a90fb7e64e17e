// Copyright 2026 The searchcomb Authors
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

// searchcomb: run search specifications against model files.
//
//   searchcomb solve MODEL (--spec FILE | --search TEXT) [options]
//   searchcomb gen queens N | golomb M | stress VARS SIZE
//   searchcomb stress [--layers 0,1,2] [--vars 6] [--size 6] [--repeat 3]

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "searchcomb.hpp"

namespace {

using namespace searchcomb;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct SolveArgs {
  std::string model_path;
  std::string spec_path;
  std::string search;
  std::string engine = "dfs";
  std::string mode = "all";
  std::string trace_path;
  bool dump_core = false;
  bool virtual_time = false;
  bool quiet = false;
  std::uint64_t seed = 0;
};

void write_trace(const std::string& path, const std::vector<TraceEvent>& trace) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << "event\tnode\tpath\tstatus\tframes\tparent\n";
  for (const TraceEvent& e : trace) {
    out << to_string(e.event) << '\t' << e.node << '\t' << e.path << '\t';
    out << (e.status ? std::string(to_string(*e.status)) : "-") << '\t';
    if (e.frames.empty()) out << '-';
    for (std::size_t k = 0; k < e.frames.size(); ++k) out << (k ? "," : "") << e.frames[k];
    out << '\t';
    if (e.parent) {
      out << *e.parent;
    } else {
      out << '-';
    }
    out << '\n';
  }
}

std::string value_text(const State& s, VarId v, const std::optional<Value>& value) {
  if (value) return std::to_string(*value);
  std::ostringstream os;
  os << s.domain(v);
  return os.str();
}

int run_solve(const SolveArgs& args) {
  Model model = parse_model(read_file(args.model_path));
  std::string spec = args.spec_path.empty() ? args.search : read_file(args.spec_path);
  CompiledSpec compiled = compile(spec, model, {.seed = args.seed});
  if (args.dump_core) {
    std::cout << *compiled.core << '\n';
    return 0;
  }
  EngineOptions opts;
  opts.queue = args.engine == "bfs" ? QueueKind::kBfs : QueueKind::kDfs;
  opts.mode = args.mode == "first" ? SearchMode::kFirst : SearchMode::kAll;
  opts.trace = !args.trace_path.empty();
  opts.virtual_time = args.virtual_time;
  opts.output = &std::cout;

  State root = model.root_state();
  Engine engine(opts);
  auto t0 = std::chrono::steady_clock::now();
  EngineResult r = engine.run(compiled.heuristic, root);
  std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;

  std::cout << "solutions: " << r.solutions.size() << '\n';
  std::cout << "exhaustive: " << (r.exhaustive ? "true" : "false") << '\n';
  std::cout << "nodes: " << r.nodes_entered << '\n';
  std::cout << "failures: " << r.exits(ExitStatus::kFailure) << '\n';
  if (args.virtual_time) {
    std::cout << "time_ms: " << r.nodes_entered << '\n';
  } else {
    std::cout << "time_ms: " << std::fixed << std::setprecision(3) << dt.count() << '\n';
  }
  if (model.objective() && !r.solutions.empty()) {
    VarId obj = model.resolve(*model.objective());
    std::cout << "objective: " << value_text(root, obj, r.solutions.back().values[obj.index]) << '\n';
  }
  if (!args.quiet) {
    for (std::size_t k = 0; k < r.solutions.size(); ++k) {
      std::cout << "\n# solution " << k + 1 << '\n';
      const Assignment& a = r.solutions[k];
      for (std::uint32_t v = 0; v < a.values.size(); ++v) {
        std::cout << root.name(VarId{v}) << '=' << value_text(root, VarId{v}, a.values[v]) << '\n';
      }
    }
  }
  if (opts.trace) write_trace(args.trace_path, r.trace);
  if (opts.mode == SearchMode::kFirst && r.solutions.empty()) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compose and run search heuristics over finite-domain models."};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run a search specification on a model file");
  solve_cmd->add_option("model", solve.model_path, "Model file")->required()->check(CLI::ExistingFile);
  auto* spec_opt = solve_cmd->add_option("--spec", solve.spec_path, "Search specification file (.search)")
                       ->check(CLI::ExistingFile);
  auto* search_opt = solve_cmd->add_option("--search", solve.search, "Search specification text");
  spec_opt->excludes(search_opt);
  solve_cmd->add_option("--engine", solve.engine, "Queuing strategy")->check(CLI::IsMember({"dfs", "bfs"}));
  solve_cmd->add_option("--mode", solve.mode, "Stop after the first solution or enumerate all")
      ->check(CLI::IsMember({"all", "first"}));
  solve_cmd->add_option("--trace", solve.trace_path, "Write the message trace (tab separated) to this file");
  solve_cmd->add_flag("--dump-core", solve.dump_core, "Print the lowered core term and exit");
  solve_cmd->add_flag("--virtual-time", solve.virtual_time, "Measure time in entered nodes");
  solve_cmd->add_flag("--quiet", solve.quiet, "Only print the summary");
  solve_cmd->add_option("--seed", solve.seed, "Seed of random strategies without their own");

  std::vector<std::string> gen_args;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Print a benchmark model: queens N, golomb M, stress VARS SIZE");
  gen_cmd->add_option("args", gen_args, "Kind and sizes")->required()->expected(2, 3);

  std::vector<int> layers{0, 1, 2, 5, 10, 20};
  int stress_vars = 6;
  int stress_size = 6;
  int repeat = 3;
  CLI::App* stress_cmd = app.add_subcommand("stress", "Time layered portfolio([..., prune]) stacks");
  stress_cmd->add_option("--layers", layers, "Layer counts")->delimiter(',');
  stress_cmd->add_option("--vars", stress_vars, "Number of variables")->check(CLI::PositiveNumber);
  stress_cmd->add_option("--size", stress_size, "Domain size")->check(CLI::PositiveNumber);
  stress_cmd->add_option("--repeat", repeat, "Runs per layer count (the fastest is kept)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve_cmd) {
      if (solve.spec_path.empty() && solve.search.empty()) throw Error("give --spec FILE or --search TEXT");
      return run_solve(solve);
    }
    if (*gen_cmd) {
      auto size = [&](std::size_t k) {
        if (k >= gen_args.size()) throw Error("missing size for '" + gen_args[0] + "'");
        int v = std::stoi(gen_args[k]);
        if (v < 1) throw Error("sizes must be at least 1");
        return v;
      };
      const std::string& kind = gen_args[0];
      if (kind == "queens") {
        std::cout << queens_model(size(1));
      } else if (kind == "golomb") {
        std::cout << golomb_model(size(1));
      } else if (kind == "stress") {
        std::cout << stress_model(size(1), size(2));
      } else {
        throw Error("unknown benchmark '" + kind + "'");
      }
      return 0;
    }
    if (*stress_cmd) {
      std::vector<OverheadRow> rows = stress_overhead(layers, stress_vars, stress_size, repeat);
      std::cout << "layers\tnodes\tsolutions\ttime_ms\n";
      for (const OverheadRow& r : rows) {
        std::cout << r.layers << '\t' << r.nodes << '\t' << r.solutions << '\t' << std::fixed << std::setprecision(2)
                  << r.millis << '\n';
      }
      std::cout << "overhead_per_layer: " << std::setprecision(4) << overhead_per_layer(rows) << '\n';
      return 0;
    }
  } catch (const std::invalid_argument&) {
    std::cerr << "error: sizes must be integers\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
