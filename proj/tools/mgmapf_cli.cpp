// Command-line front end: generate instances, run a solver, benchmark the
// whole suite, audit solution files, and draw SVG previews.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgmapf/bench.hpp"
#include "mgmapf/io.hpp"
#include "mgmapf/plot.hpp"
#include "mgmapf/validate.hpp"

using namespace mgmapf;

namespace {

GridMap load_map_arg(const std::string& ref) {
  if (ref.empty()) throw ValidationError("a map is required (--map)");
  return load_map_by_ref(ref);
}

int cmd_gen(const std::string& map_ref, int agents, int goals, int count,
            std::uint64_t seed, const std::string& out) {
  GridMap g = load_map_arg(map_ref);
  auto instances = gen_instances(g, agents, goals, count, seed, map_ref);
  for (size_t i = 0; i < instances.size(); ++i) {
    std::string text = serialize_instance(instances[i], g);
    if (out.empty()) {
      std::cout << text;
    } else if (count == 1) {
      write_text_file(out, text);
      std::cout << "wrote " << out << "\n";
    } else {
      std::string path = out + "." + std::to_string(i) + ".json";
      write_text_file(path, text);
      std::cout << "wrote " << path << "\n";
    }
  }
  return 0;
}

int cmd_solve(const std::string& map_ref, const std::string& instance_path,
              const std::string& algo, double timeout_s, const std::string& out) {
  GridMap g = load_map_arg(map_ref);
  Instance inst = load_instance_file(instance_path, g);
  CbsBudget budget;
  budget.timeout_ms = timeout_s * 1000.0;
  SolveResult r = solve_with(algo, g, inst, budget);
  double elapsed = budget.timeout_ms > 0 ? std::min(r.elapsed_ms, budget.timeout_ms)
                                         : r.elapsed_ms;
  // outcomes are results, not tool failures: report and exit cleanly
  if (r.status == SolveStatus::Infeasible) {
    std::cout << "outcome: infeasible, elapsed_ms " << elapsed << "\n";
    return 0;
  }
  if (r.status == SolveStatus::Timeout) {
    std::cout << "outcome: timeout, elapsed_ms " << elapsed << "\n";
    return 0;
  }
  std::string text = serialize_solution(g, r.solution, algo, elapsed);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
    std::cout << "outcome: solved, cost " << r.soc << ", " << r.ct_expansions
              << " high-level expansions, wrote " << out << "\n";
  }
  return 0;
}

int cmd_bench(const std::vector<std::string>& maps, std::vector<int> agents,
              std::vector<int> goals, int count, std::uint64_t seed, double timeout_s,
              std::vector<std::string> algos, const std::string& baseline,
              bool logic_only, std::uint64_t max_expansions, const std::string& csv) {
  BenchConfig cfg;
  cfg.maps = maps;
  if (!agents.empty()) cfg.ks = std::move(agents);
  if (!goals.empty()) cfg.ns = std::move(goals);
  cfg.count = count;
  cfg.seed = seed;
  cfg.timeout_ms = timeout_s * 1000.0;
  if (!algos.empty()) cfg.algos = std::move(algos);
  cfg.baseline = baseline;
  cfg.logic_only = logic_only;
  cfg.max_expansions = max_expansions;
  BenchOutput out = run_bench(cfg);
  if (csv.empty()) {
    std::cout << out.csv;
  } else {
    write_text_file(csv, out.csv);
    std::cout << "wrote " << out.rows.size() << " sweep rows and " << out.opt.size()
              << " optimality rows to " << csv << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& map_ref, const std::string& instance_path,
               const std::string& solution_path) {
  GridMap g = load_map_arg(map_ref);
  Instance inst = load_instance_file(instance_path, g);
  SolutionFile sf = parse_solution(read_text_file(solution_path), g);
  auto violations = verify_solution(g, inst, sf.sol, sf.cost);
  if (violations.empty()) {
    std::cout << "ok: " << inst.num_agents() << " agents, cost " << sf.cost << "\n";
    return 0;
  }
  const Violation& v = violations.front();
  std::cerr << "invalid: " << violation_name(v.kind);
  if (v.agent >= 0) std::cerr << ", agent " << v.agent;
  if (v.t >= 0) std::cerr << ", t=" << v.t;
  std::cerr << ": " << v.detail << "\n";
  std::cerr << violations.size() << " violation(s) total\n";
  return 2;
}

int cmd_plot(const std::string& map_ref, const std::string& instance_path,
             const std::string& solution_path, const std::string& out) {
  GridMap g = load_map_arg(map_ref);
  Instance inst = load_instance_file(instance_path, g);
  SolutionFile sf = parse_solution(read_text_file(solution_path), g);
  // audit the whole file, declared cost included, before drawing anything
  auto violations = verify_solution(g, inst, sf.sol, sf.cost);
  if (!violations.empty()) {
    throw ValidationError(std::string("refusing to plot an invalid solution: ") +
                          violation_name(violations.front().kind) + " (" +
                          violations.front().detail + ")");
  }
  std::string svg = emit_plot(g, inst, sf.sol);
  if (out.empty()) {
    std::cout << svg;
  } else {
    write_text_file(out, svg);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-goal multi-agent pathfinding toolkit"};
  app.require_subcommand(1);

  std::string map_ref, instance_path, solution_path, out, csv;
  std::string algo = "mgcbs";
  std::string baseline = "hcbs";
  double timeout_s = 60.0;
  std::uint64_t seed = 1;
  std::uint64_t max_expansions = 20000;
  int agents = 2, goals = 2, count = 1;
  std::vector<std::string> bench_maps{"crowd_a", "crowd_b"};
  std::vector<int> bench_agents, bench_goals;
  std::vector<std::string> bench_algos;
  bool logic_only = false;

  auto* gen = app.add_subcommand("gen", "generate random instances for a map");
  gen->add_option("--map", map_ref, "map name (crowd_a, crowd_b, maze32) or file path")
      ->required();
  gen->add_option("--agents", agents, "number of agents");
  gen->add_option("--goals", goals, "goals per agent");
  gen->add_option("--count", count, "instances to generate");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--out", out, "output file (stem when --count > 1; stdout if omitted)");

  auto* solve = app.add_subcommand("solve", "solve one instance and emit the plan");
  solve->add_option("--map", map_ref, "map name or file path")->required();
  solve->add_option("--instance", instance_path, "instance JSON file")->required();
  solve->add_option("--algo", algo,
                    "one of: mgcbs, mgcbs-noforest, hcbs, cbs-astar");
  solve->add_option("--timeout", timeout_s, "wall-clock budget in seconds");
  solve->add_option("--out", out, "solution JSON file (stdout if omitted)");

  auto* bench = app.add_subcommand("bench", "sweep solvers over generated instances");
  bench->add_option("--map", bench_maps, "maps to sweep (repeatable)");
  bench->add_option("--agents", bench_agents, "agent counts to sweep (repeatable)");
  bench->add_option("--goals", bench_goals, "goal counts to sweep (repeatable)");
  bench->add_option("--count", count, "instances per (map, agents, goals) cell");
  bench->add_option("--seed", seed, "random seed");
  bench->add_option("--timeout", timeout_s, "per-run budget in seconds");
  bench->add_option("--algo", bench_algos, "algorithms to run (repeatable; default all)");
  bench->add_option("--baseline", baseline, "algorithm the speedup column is relative to");
  bench->add_flag("--logic-only", logic_only,
                  "cap high-level expansions instead of wall time (reproducible output)");
  bench->add_option("--max-expansions", max_expansions,
                    "expansion cap used with --logic-only");
  bench->add_option("--csv", csv, "write the result table here (stdout if omitted)");

  auto* verify = app.add_subcommand("verify", "audit a solution file against its instance");
  verify->add_option("--map", map_ref, "map name or file path")->required();
  verify->add_option("--instance", instance_path, "instance JSON file")->required();
  verify->add_option("--solution", solution_path, "solution JSON file")->required();

  auto* plot = app.add_subcommand("plot", "render a verified solution as SVG");
  plot->add_option("--map", map_ref, "map name or file path")->required();
  plot->add_option("--instance", instance_path, "instance JSON file")->required();
  plot->add_option("--solution", solution_path, "solution JSON file")->required();
  plot->add_option("--out", out, "SVG file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // --help exits cleanly, bad usage does not
  }

  try {
    if (gen->parsed()) return cmd_gen(map_ref, agents, goals, count, seed, out);
    if (solve->parsed())
      return cmd_solve(map_ref, instance_path, algo, timeout_s, out);
    if (bench->parsed())
      return cmd_bench(bench_maps, bench_agents, bench_goals, count, seed, timeout_s,
                       bench_algos, baseline, logic_only, max_expansions, csv);
    if (verify->parsed()) return cmd_verify(map_ref, instance_path, solution_path);
    if (plot->parsed()) return cmd_plot(map_ref, instance_path, solution_path, out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
