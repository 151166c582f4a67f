#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "baselines.hpp"
#include "builtin_maps.hpp"
#include "grid_map.hpp"
#include "instance.hpp"
#include "io.hpp"
#include "mgcbs.hpp"
#include "validate.hpp"

namespace mgmapf {

// mt19937_64 has a fully specified sequence, and rejection sampling keeps the
// draw unbiased without the implementation-defined std::uniform_int_distribution,
// so generated instances are byte-identical everywhere.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : eng_(seed) {}

  std::uint32_t below(std::uint32_t n) {
    if (n == 0) throw InternalError("rng: empty range");
    std::uint64_t span = ~0ull - (~0ull % n);  // largest multiple of n
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= span);
    return static_cast<std::uint32_t>(x % n);
  }

 private:
  std::mt19937_64 eng_;
};

// Random tasks: distinct starts across agents, n distinct goals per agent,
// all goals reachable from their agent's start.
inline std::vector<Instance> gen_instances(const GridMap& g, int k, int n, int count,
                                           std::uint64_t seed,
                                           const std::string& map_ref = "") {
  const int V = g.vertex_count();
  if (k < 1 || n < 1 || count < 1) throw ValidationError("gen: k, n, count must be positive");
  if (V < k || V < n) {
    throw ValidationError("gen: map has too few passable cells for the request");
  }
  PortableRng rng(seed);
  std::vector<Instance> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Instance inst;
    inst.map_ref = map_ref;
    std::vector<char> start_used(V, 0);
    for (int a = 0; a < k; ++a) {
      AgentTask task;
      int guard = 0;
      while (true) {
        if (++guard > 100000) throw ValidationError("gen: could not place agents");
        VertexId s = static_cast<VertexId>(rng.below(V));
        if (start_used[s]) continue;
        std::vector<int> reach = bfs_distances(g, s);
        int reachable = 0;
        for (int d : reach) {
          if (is_reachable(d)) reachable += 1;
        }
        if (reachable < n) continue;  // component too small for n distinct goals
        task.start = s;
        std::vector<char> goal_used(V, 0);
        for (int gi = 0; gi < n; ++gi) {
          while (true) {
            VertexId gv = static_cast<VertexId>(rng.below(V));
            if (goal_used[gv] || !is_reachable(reach[gv])) continue;
            goal_used[gv] = 1;
            task.goals.push_back(gv);
            break;
          }
        }
        break;
      }
      start_used[task.start] = 1;
      inst.agents.push_back(std::move(task));
    }
    out.push_back(std::move(inst));
  }
  return out;
}

inline SolveResult solve_with(const std::string& algo, const GridMap& g,
                              const Instance& inst, const CbsBudget& budget) {
  if (algo == "mgcbs") return mgcbs_solve(g, inst, budget);
  if (algo == "mgcbs-noforest") return mgcbs_noforest_solve(g, inst, budget);
  if (algo == "hcbs") return hcbs_solve(g, inst, budget);
  if (algo == "cbs-astar") return cbs_astar_solve(g, inst, budget);
  throw ValidationError("unknown algorithm: " + algo);
}

inline const std::vector<std::string>& all_algos() {
  static const std::vector<std::string> names = {"mgcbs", "mgcbs-noforest", "hcbs",
                                                 "cbs-astar"};
  return names;
}

struct BenchRow {
  std::string map;
  int k = 0;
  int n = 0;
  std::string algo;
  int total = 0;
  int solved = 0;
  double success_rate = 0;
  double mean_runtime_s = 0;  // timeouts count as the full budget
  double speedup = 0;         // baseline mean runtime / this algo's mean runtime
};

struct OptRow {
  std::string map;
  std::string algo;
  int sn = 0;      // instances solved by both this algo and the referee
  int dn = 0;      // of those, instances with a different cost
  double mre = 0;  // max relative error vs referee cost
  double are = 0;  // mean relative error vs referee cost
};

struct BenchConfig {
  std::vector<std::string> maps;  // registry names or file paths
  std::vector<int> ks{2};
  std::vector<int> ns{2};
  int count = 10;
  std::uint64_t seed = 1;
  double timeout_ms = 60000;
  std::vector<std::string> algos = all_algos();
  std::string baseline = "hcbs";
  std::string referee = "cbs-astar";
  bool logic_only = false;            // cap node expansions instead of wall time
  std::uint64_t max_expansions = 20000;
  int workers = 0;                    // 0 = take MGMAPF_WORKERS, else 1
};

struct RunRecord {
  std::string map;
  int k = 0;
  int n = 0;
  int idx = 0;
  std::string algo;
  SolveStatus status = SolveStatus::Infeasible;
  long long soc = -1;
  double elapsed_ms = 0;
};

struct BenchOutput {
  std::vector<RunRecord> records;
  std::vector<BenchRow> rows;
  std::vector<OptRow> opt;
  std::string csv;
};

inline int env_workers() {
  const char* s = std::getenv("MGMAPF_WORKERS");
  if (!s) return 1;
  int v = std::atoi(s);
  return v >= 1 ? v : 1;
}

inline GridMap load_map_by_ref(const std::string& ref) {
  if (builtin_maps().count(ref)) return load_builtin_map(ref);
  return load_map_file(ref);
}

// One CSV, two row kinds sharing a header: `bench` rows leave the opt columns
// empty, `opt` rows leave the sweep columns empty. Runtime-derived columns are
// written as 0 in logic-only mode so reruns are byte-identical.
inline std::string bench_csv(const std::vector<BenchRow>& rows,
                             const std::vector<OptRow>& opt) {
  std::ostringstream out;
  out << "kind,map,agents,goals,algo,total,solved,success_rate,mean_runtime_s,speedup,"
         "sn,dn,mre,are\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.4f,%.6f,%.4f", r.success_rate, r.mean_runtime_s,
                  r.speedup);
    out << "bench," << r.map << "," << r.k << "," << r.n << "," << r.algo << ","
        << r.total << "," << r.solved << "," << buf << ",,,,\n";
  }
  for (const auto& r : opt) {
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f", r.mre, r.are);
    out << "opt," << r.map << ",,," << r.algo << ",,,,,," << r.sn << "," << r.dn << ","
        << buf << "\n";
  }
  return out.str();
}

inline BenchOutput run_bench(const BenchConfig& cfg) {
  BenchOutput out;
  CbsBudget budget;
  if (cfg.logic_only) {
    budget.max_expansions = cfg.max_expansions;
  } else {
    budget.timeout_ms = cfg.timeout_ms;
  }

  struct Task {
    const GridMap* g = nullptr;
    const Instance* inst = nullptr;
    RunRecord rec;
  };
  std::vector<GridMap> maps_storage;
  std::vector<std::vector<Instance>> inst_storage;
  std::vector<Task> tasks;

  maps_storage.reserve(cfg.maps.size());
  for (size_t mi = 0; mi < cfg.maps.size(); ++mi) {
    maps_storage.push_back(load_map_by_ref(cfg.maps[mi]));
  }
  for (size_t mi = 0; mi < cfg.maps.size(); ++mi) {
    for (int k : cfg.ks) {
      for (int n : cfg.ns) {
        std::uint64_t cell_seed =
            cfg.seed * 1000003ull + mi * 10007ull + static_cast<std::uint64_t>(k) * 101ull +
            static_cast<std::uint64_t>(n);
        inst_storage.push_back(
            gen_instances(maps_storage[mi], k, n, cfg.count, cell_seed, cfg.maps[mi]));
        const auto& batch = inst_storage.back();
        for (int i = 0; i < cfg.count; ++i) {
          for (const auto& algo : cfg.algos) {
            Task t;
            t.g = &maps_storage[mi];
            t.inst = &batch[i];
            t.rec.map = cfg.maps[mi];
            t.rec.k = k;
            t.rec.n = n;
            t.rec.idx = i;
            t.rec.algo = algo;
            tasks.push_back(std::move(t));
          }
        }
      }
    }
  }

  // timing runs stay sequential so measurements don't fight for the machine
  int workers = cfg.logic_only ? std::max(1, cfg.workers > 0 ? cfg.workers : env_workers())
                               : 1;
  auto run_task = [&](Task& t) {
    SolveResult r = solve_with(t.rec.algo, *t.g, *t.inst, budget);
    t.rec.status = r.status;
    t.rec.soc = r.status == SolveStatus::Solved ? r.soc : -1;
    t.rec.elapsed_ms = cfg.logic_only ? 0.0 : std::min(r.elapsed_ms, cfg.timeout_ms);
    if (r.status == SolveStatus::Solved) {
      auto violations = verify_solution(*t.g, *t.inst, r.solution, r.soc);
      if (!violations.empty()) {
        throw InternalError("bench: solver " + t.rec.algo + " produced an invalid solution: " +
                            violations.front().detail);
      }
    }
  };
  if (workers <= 1) {
    for (auto& t : tasks) run_task(t);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (size_t i = w; i < tasks.size(); i += workers) run_task(tasks[i]);
        } catch (...) {
          errs[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs) {
      if (e) std::rethrow_exception(e);
    }
  }
  for (auto& t : tasks) out.records.push_back(t.rec);

  // aggregate bench rows per (map, k, n, algo) in task construction order
  for (size_t mi = 0; mi < cfg.maps.size(); ++mi) {
    for (int k : cfg.ks) {
      for (int n : cfg.ns) {
        std::vector<BenchRow> cell;
        for (const auto& algo : cfg.algos) {
          BenchRow row;
          row.map = cfg.maps[mi];
          row.k = k;
          row.n = n;
          row.algo = algo;
          double total_ms = 0;
          for (const auto& rec : out.records) {
            if (rec.map != cfg.maps[mi] || rec.k != k || rec.n != n || rec.algo != algo) {
              continue;
            }
            row.total += 1;
            if (rec.status == SolveStatus::Solved) row.solved += 1;
            total_ms += rec.status == SolveStatus::Timeout ? cfg.timeout_ms : rec.elapsed_ms;
          }
          row.success_rate = row.total ? static_cast<double>(row.solved) / row.total : 0;
          row.mean_runtime_s = row.total && !cfg.logic_only ? total_ms / row.total / 1000.0 : 0;
          cell.push_back(row);
        }
        double base_mean = 0;
        for (const auto& row : cell) {
          if (row.algo == cfg.baseline) base_mean = row.mean_runtime_s;
        }
        for (auto& row : cell) {
          row.speedup = (!cfg.logic_only && row.mean_runtime_s > 0 && base_mean > 0)
                            ? base_mean / row.mean_runtime_s
                            : 0;
          out.rows.push_back(row);
        }
      }
    }
  }

  // optimality rows per (map, algo) against the referee, commonly solved only
  for (size_t mi = 0; mi < cfg.maps.size(); ++mi) {
    for (const auto& algo : cfg.algos) {
      OptRow row;
      row.map = cfg.maps[mi];
      row.algo = algo;
      double err_sum = 0;
      for (const auto& rec : out.records) {
        if (rec.map != cfg.maps[mi] || rec.algo != algo ||
            rec.status != SolveStatus::Solved) {
          continue;
        }
        const RunRecord* ref = nullptr;
        for (const auto& cand : out.records) {
          if (cand.map == rec.map && cand.k == rec.k && cand.n == rec.n &&
              cand.idx == rec.idx && cand.algo == cfg.referee) {
            ref = &cand;
            break;
          }
        }
        if (!ref || ref->status != SolveStatus::Solved) continue;
        row.sn += 1;
        if (rec.soc != ref->soc) row.dn += 1;
        // a zero referee cost (every agent born on its goals) gets a unit denominator
        double e = static_cast<double>(rec.soc - ref->soc) /
                   static_cast<double>(std::max<long long>(ref->soc, 1));
        err_sum += e;
        row.mre = std::max(row.mre, e);
      }
      row.are = row.sn ? err_sum / row.sn : 0;
      out.opt.push_back(row);
    }
  }

  out.csv = bench_csv(out.rows, out.opt);
  return out;
}

}  // namespace mgmapf
