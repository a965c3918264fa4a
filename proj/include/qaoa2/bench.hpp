#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qaoa2/graph.hpp"
#include "qaoa2/hier_solver.hpp"

namespace qaoa2 {

// ---- enum <-> string ------------------------------------------------------

inline std::string to_string(PartitionStrategy s) {
  return s == PartitionStrategy::random ? "random" : "greedy";
}
inline std::string to_string(SolverKind s) {
  switch (s) {
    case SolverKind::qaoa: return "qaoa";
    case SolverKind::brute_force: return "brute";
    case SolverKind::local_search: return "local";
  }
  return "?";
}
inline std::string to_string(MergeMode m) {
  return m == MergeMode::optimized ? "optimized" : "naive";
}
inline std::string to_string(DenominatorKind k) {
  switch (k) {
    case DenominatorKind::none: return "none";
    case DenominatorKind::exact: return "exact";
    case DenominatorKind::asymptotic: return "asymp";
    case DenominatorKind::best_known: return "best-known";
  }
  return "?";
}
inline std::string to_string(InitKind k) { return k == InitKind::uniform ? "uniform" : "ghz"; }
inline std::string to_string(ExpectationMode m) {
  return m == ExpectationMode::exact ? "exact" : "shots";
}

inline PartitionStrategy partition_from_string(const std::string& s) {
  if (s == "random") return PartitionStrategy::random;
  if (s == "greedy") return PartitionStrategy::greedy;
  throw std::invalid_argument("unknown partition strategy: " + s);
}
inline SolverKind solver_from_string(const std::string& s) {
  if (s == "qaoa") return SolverKind::qaoa;
  if (s == "brute") return SolverKind::brute_force;
  if (s == "local") return SolverKind::local_search;
  throw std::invalid_argument("unknown solver: " + s);
}
inline MergeMode merge_from_string(const std::string& s) {
  if (s == "optimized") return MergeMode::optimized;
  if (s == "naive") return MergeMode::naive;
  throw std::invalid_argument("unknown merge mode: " + s);
}
inline DenominatorKind denominator_from_string(const std::string& s) {
  if (s == "none") return DenominatorKind::none;
  if (s == "exact") return DenominatorKind::exact;
  if (s == "asymp") return DenominatorKind::asymptotic;
  if (s == "best-known") return DenominatorKind::best_known;
  throw std::invalid_argument("unknown denominator kind: " + s);
}
inline InitKind init_from_string(const std::string& s) {
  if (s == "uniform") return InitKind::uniform;
  if (s == "ghz") return InitKind::ghz;
  throw std::invalid_argument("unknown initial state: " + s);
}
inline ExpectationMode expectation_from_string(const std::string& s) {
  if (s == "exact") return ExpectationMode::exact;
  if (s == "shots") return ExpectationMode::shots;
  throw std::invalid_argument("unknown expectation mode: " + s);
}

// ---- instance families ------------------------------------------------------

/// Family token: 'u' or 'w' (unweighted/weighted) + 'r' or 'e'
/// (regular/Erdos-Renyi), written "udr"/"wdr"/"ude"/"wde" with the literal
/// 'd' standing for the degree slot. Instance names embed the actual degree:
/// u9r-60 is unweighted 9-regular on 60 nodes.
struct Family {
  bool weighted = false;
  GraphKind topo = GraphKind::regular;
};

inline Family family_from_string(const std::string& s) {
  if (s.size() != 3 || (s[0] != 'u' && s[0] != 'w') || s[1] != 'd' ||
      (s[2] != 'r' && s[2] != 'e'))
    throw std::invalid_argument("unknown graph family: " + s +
                                " (expected one of udr, wdr, ude, wde)");
  return {s[0] == 'w', s[2] == 'r' ? GraphKind::regular : GraphKind::erdos_renyi};
}

inline std::string family_token(const Family& f) {
  return std::string(1, f.weighted ? 'w' : 'u') + "d" + (f.topo == GraphKind::regular ? "r" : "e");
}

inline std::string instance_stem(const Family& f, std::size_t d, std::size_t n) {
  return std::string(1, f.weighted ? 'w' : 'u') + std::to_string(d) +
         (f.topo == GraphKind::regular ? "r" : "e") + "-" + std::to_string(n);
}

struct GenSpec {
  std::string kind = "udr";
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  int weight_min = 0;
};

/// Writes `count` instances named <stem>_g<k>.txt (k starting at 1) into
/// out_dir and returns the paths. Instance k draws from the
/// (seed, "instance", k) stream.
inline std::vector<std::string> generate_instance_files(const GenSpec& spec,
                                                        const std::string& out_dir) {
  const Family fam = family_from_string(spec.kind);
  std::vector<std::string> paths;
  for (std::size_t k = 1; k <= spec.count; ++k) {
    const Graph g = generate(fam.topo, spec.n, spec.d, fam.weighted,
                             derive_seed(spec.seed, "instance", k), spec.weight_min);
    const std::string path =
        out_dir + "/" + instance_stem(fam, spec.d, spec.n) + "_g" + std::to_string(k) + ".txt";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_edge_list(g, out);
    paths.push_back(path);
  }
  return paths;
}

// ---- benchmark grids --------------------------------------------------------

/// Cartesian sweep description, parsed from "key = value" lines with comma
/// lists; '#' starts a comment.
struct BenchGrid {
  std::vector<std::string> kinds{"udr"};
  std::vector<std::size_t> ns{20};
  std::vector<std::size_t> ds{3};
  std::vector<std::uint32_t> budgets{10};
  std::vector<int> ps{1};
  std::vector<PartitionStrategy> partitions{PartitionStrategy::random};
  std::vector<SolverKind> solvers{SolverKind::qaoa};
  std::vector<MergeMode> merge_modes{MergeMode::optimized};
  std::size_t instances = 1;
  std::size_t reps = 1;
  std::uint64_t seed = 0;
  int iters = 20;
  double lr = 0.01;
  int shots = 1000;
  int samples = 1000;
  InitKind init = InitKind::uniform;
  ExpectationMode expectation = ExpectationMode::shots;
  DenominatorKind denominator = DenominatorKind::none;
  std::size_t restarts = 100;
  int wmin = 0;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw std::invalid_argument("empty value list");
  return out;
}

template <typename T, typename F>
std::vector<T> map_list(const std::string& s, F&& f) {
  std::vector<T> out;
  for (const auto& tok : split_list(s)) out.push_back(f(tok));
  return out;
}

inline long long parse_int(const std::string& s) {
  std::size_t pos = 0;
  const long long v = std::stoll(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("not an integer: " + s);
  return v;
}

inline double parse_num(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: " + s);
  return v;
}

inline std::string fmt_g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string fmt_ms(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace detail

inline BenchGrid parse_grid(std::istream& in) {
  BenchGrid g;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("grid line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    try {
      if (key == "kinds") {
        g.kinds = detail::split_list(val);
        for (const auto& k : g.kinds) family_from_string(k);
      } else if (key == "n") {
        g.ns = detail::map_list<std::size_t>(val, [](const std::string& s) {
          const long long v = detail::parse_int(s);
          if (v < 1) throw std::invalid_argument("n must be >= 1");
          return std::size_t(v);
        });
      } else if (key == "d") {
        g.ds = detail::map_list<std::size_t>(val, [](const std::string& s) {
          const long long v = detail::parse_int(s);
          if (v < 0) throw std::invalid_argument("d must be >= 0");
          return std::size_t(v);
        });
      } else if (key == "budgets") {
        g.budgets = detail::map_list<std::uint32_t>(val, [](const std::string& s) {
          const long long v = detail::parse_int(s);
          if (v < 2) throw std::invalid_argument("budget must be >= 2");
          return std::uint32_t(v);
        });
      } else if (key == "p") {
        g.ps = detail::map_list<int>(val, [](const std::string& s) {
          const long long v = detail::parse_int(s);
          if (v < 1) throw std::invalid_argument("p must be >= 1");
          return int(v);
        });
      } else if (key == "partitions") {
        g.partitions = detail::map_list<PartitionStrategy>(val, partition_from_string);
      } else if (key == "solvers") {
        g.solvers = detail::map_list<SolverKind>(val, solver_from_string);
      } else if (key == "merge_modes") {
        g.merge_modes = detail::map_list<MergeMode>(val, merge_from_string);
      } else if (key == "instances") {
        g.instances = std::size_t(detail::parse_int(val));
        if (g.instances < 1) throw std::invalid_argument("instances must be >= 1");
      } else if (key == "reps") {
        g.reps = std::size_t(detail::parse_int(val));
        if (g.reps < 1) throw std::invalid_argument("reps must be >= 1");
      } else if (key == "seed") {
        g.seed = std::uint64_t(detail::parse_int(val));
      } else if (key == "iters") {
        g.iters = int(detail::parse_int(val));
      } else if (key == "lr") {
        g.lr = detail::parse_num(val);
      } else if (key == "shots") {
        g.shots = int(detail::parse_int(val));
      } else if (key == "samples") {
        g.samples = int(detail::parse_int(val));
      } else if (key == "init") {
        g.init = init_from_string(val);
      } else if (key == "expectation") {
        g.expectation = expectation_from_string(val);
      } else if (key == "denominator") {
        g.denominator = denominator_from_string(val);
      } else if (key == "restarts") {
        g.restarts = std::size_t(detail::parse_int(val));
        if (g.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
      } else if (key == "wmin") {
        g.wmin = int(detail::parse_int(val));
      } else {
        throw std::invalid_argument("unknown grid key: " + key);
      }
    } catch (const std::exception& e) {
      throw std::invalid_argument("grid line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return g;
}

inline const char* kBenchCsvHeader =
    "instance,kind,n,d,seed,partition,solver,budget,p,iters,lr,shots,merge_mode,cut,"
    "cut_before_polish,denominator_kind,denominator,ratio,modularity,depth,wall_ms";

/// Runs the full cartesian sweep and streams CSV: one row per solve in grid
/// order, then mean/std summary rows per configuration. Every random choice
/// derives from the grid seed, so reruns are byte-identical except wall_ms.
inline void run_bench(const BenchGrid& grid, std::ostream& out) {
  // feasibility checks up front so a bad grid fails before hours of work
  for (const auto& kind : grid.kinds) {
    const Family fam = family_from_string(kind);
    for (std::size_t n : grid.ns)
      for (std::size_t d : grid.ds) {
        if (d >= n)
          throw std::invalid_argument("grid: need d < n for " + instance_stem(fam, d, n));
        if (fam.topo == GraphKind::regular && (n * d) % 2 != 0)
          throw std::invalid_argument("grid: n*d must be even for " + instance_stem(fam, d, n));
        if (grid.denominator == DenominatorKind::exact && n > kBruteForceMaxNodes)
          throw std::invalid_argument("grid: exact denominator caps n at " +
                                      std::to_string(kBruteForceMaxNodes));
        if (grid.denominator == DenominatorKind::asymptotic && fam.weighted)
          throw std::invalid_argument("grid: asymptotic denominator applies to unweighted families");
      }
  }

  struct GroupStats {
    std::string prefix;  // config columns shared by the group
    std::vector<double> cut, cut_bp, denom, ratio, mods, depth, wall;
  };
  std::vector<GroupStats> groups;
  std::map<std::string, std::size_t> group_index;

  out << kBenchCsvHeader << '\n';

  for (const auto& kind : grid.kinds) {
    const Family fam = family_from_string(kind);
    for (std::size_t n : grid.ns) {
      for (std::size_t d : grid.ds) {
        for (std::size_t inst = 1; inst <= grid.instances; ++inst) {
          const std::string name =
              instance_stem(fam, d, n) + "_g" + std::to_string(inst);
          const Graph g = generate(fam.topo, n, d, fam.weighted,
                                   derive_seed(grid.seed, name), grid.wmin);
          double denom = 0.0;
          if (grid.denominator != DenominatorKind::none)
            denom = select_denominator(g, grid.denominator, double(d), grid.restarts,
                                       derive_seed(grid.seed, name, 1));
          std::size_t cfg_idx = 0;
          for (std::uint32_t budget : grid.budgets) {
            for (int p : grid.ps) {
              for (SolverKind solver : grid.solvers) {
                ++cfg_idx;  // identifies (budget, p, solver); shared by ablation axes
                for (PartitionStrategy part : grid.partitions) {
                  for (MergeMode merge : grid.merge_modes) {
                    for (std::size_t rep = 0; rep < grid.reps; ++rep) {
                      SolveOptions opt;
                      opt.budget = budget;
                      opt.partition = part;
                      opt.merge = merge;
                      opt.solver.kind = solver;
                      opt.solver.qaoa_cfg.p = p;
                      opt.solver.qaoa_cfg.iterations = grid.iters;
                      opt.solver.qaoa_cfg.learning_rate = grid.lr;
                      opt.solver.qaoa_cfg.shots = grid.shots;
                      opt.solver.qaoa_cfg.sample_rounds = grid.samples;
                      opt.solver.qaoa_cfg.init_state = grid.init;
                      opt.solver.qaoa_cfg.expectation_mode = grid.expectation;
                      opt.seed = derive_seed(grid.seed, name, cfg_idx, rep);
                      const SolveReport rep_out = solve(g, opt);

                      const double ratio = denom != 0.0 ? rep_out.cut / denom : 0.0;
                      std::ostringstream cfg_cols;
                      cfg_cols << kind << ',' << n << ',' << d << ','
                               << to_string(part) << ',' << to_string(solver) << ','
                               << budget << ',' << p << ',' << grid.iters << ','
                               << detail::fmt_g(grid.lr) << ',' << grid.shots << ','
                               << to_string(merge);
                      // column order: seed sits between d and partition
                      out << name << ',' << kind << ',' << n << ',' << d << ','
                          << opt.seed << ',' << to_string(part) << ','
                          << to_string(solver) << ',' << budget << ',' << p << ','
                          << grid.iters << ',' << detail::fmt_g(grid.lr) << ','
                          << grid.shots << ',' << to_string(merge) << ','
                          << detail::fmt_g(rep_out.cut) << ','
                          << detail::fmt_g(rep_out.cut_before_polish) << ','
                          << to_string(grid.denominator) << ',';
                      if (grid.denominator != DenominatorKind::none)
                        out << detail::fmt_g(denom) << ',' << detail::fmt_g(ratio);
                      else
                        out << ',';
                      out << ',';
                      if (rep_out.partition_modularity)
                        out << detail::fmt_g(*rep_out.partition_modularity);
                      out << ',' << rep_out.depth << ','
                          << detail::fmt_ms(rep_out.wall.total_ms) << '\n';

                      const std::string key = cfg_cols.str();
                      auto [it, fresh] = group_index.try_emplace(key, groups.size());
                      if (fresh) {
                        groups.push_back({});
                        groups.back().prefix = key;
                      }
                      GroupStats& gs = groups[it->second];
                      gs.cut.push_back(rep_out.cut);
                      gs.cut_bp.push_back(rep_out.cut_before_polish);
                      if (grid.denominator != DenominatorKind::none) {
                        gs.denom.push_back(denom);
                        gs.ratio.push_back(ratio);
                      }
                      if (rep_out.partition_modularity)
                        gs.mods.push_back(*rep_out.partition_modularity);
                      gs.depth.push_back(double(rep_out.depth));
                      gs.wall.push_back(rep_out.wall.total_ms);
                    }
                  }
                }
              }
            }
          }
        }
      }
    }
  }

  auto mean_of = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / double(v.size());
  };
  auto std_of = [&](const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double mu = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return std::sqrt(s / double(v.size() - 1));
  };

  // summary rows share the data columns; instance marks the statistic and the
  // seed column stays empty
  for (const GroupStats& gs : groups) {
    // prefix: kind,n,d,partition,solver,budget,p,iters,lr,shots,merge
    std::istringstream pf(gs.prefix);
    std::vector<std::string> cols;
    std::string c;
    while (std::getline(pf, c, ',')) cols.push_back(c);
    auto emit = [&](const char* stat, auto f) {
      out << stat << ',' << cols[0] << ',' << cols[1] << ',' << cols[2] << ",,"
          << cols[3] << ',' << cols[4] << ',' << cols[5] << ',' << cols[6] << ','
          << cols[7] << ',' << cols[8] << ',' << cols[9] << ',' << cols[10] << ','
          << detail::fmt_g(f(gs.cut)) << ',' << detail::fmt_g(f(gs.cut_bp)) << ','
          << to_string(grid.denominator) << ',';
      if (!gs.denom.empty())
        out << detail::fmt_g(f(gs.denom)) << ',' << detail::fmt_g(f(gs.ratio));
      else
        out << ',';
      out << ',';
      if (!gs.mods.empty()) out << detail::fmt_g(f(gs.mods));
      out << ',' << detail::fmt_g(f(gs.depth)) << ',' << detail::fmt_ms(f(gs.wall)) << '\n';
    };
    emit("mean", mean_of);
    emit("std", std_of);
  }
}

}  // namespace qaoa2
