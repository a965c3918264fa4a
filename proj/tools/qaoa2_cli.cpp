// Command line front end: gen | solve | bench | oracle.
// Exit codes: 0 success, 1 input/usage error, 2 internal failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qaoa2/bench.hpp"
#include "qaoa2/graph.hpp"
#include "qaoa2/hier_solver.hpp"
#include "qaoa2/merge.hpp"
#include "qaoa2/oracle.hpp"

namespace {

using nlohmann::json;

qaoa2::Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  return qaoa2::parse_edge_list(in);
}

json report_to_json(const qaoa2::SolveReport& rep, const std::string& input) {
  json j;
  j["input"] = input;
  j["cut"] = rep.cut;
  j["cut_before_polish"] = rep.cut_before_polish;
  j["depth"] = rep.depth;
  j["blocks_per_level"] = rep.blocks_per_level;
  j["seed"] = rep.seed;
  j["denominator_kind"] = qaoa2::to_string(rep.denominator_kind);
  if (rep.denominator_kind != qaoa2::DenominatorKind::none) {
    j["denominator"] = rep.denominator;
    j["ratio"] = rep.ratio;
  }
  if (rep.partition_modularity) j["modularity"] = *rep.partition_modularity;
  j["assignment"] = rep.assignment;
  j["wall_ms"] = {{"partition", rep.wall.partition_ms},
                  {"local", rep.wall.local_ms},
                  {"merge", rep.wall.merge_ms},
                  {"polish", rep.wall.polish_ms},
                  {"total", rep.wall.total_ms}};
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"hierarchical divide-and-conquer QAOA MaxCut solver"};
  app.require_subcommand(1);

  // gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate benchmark instances");
  qaoa2::GenSpec gspec;
  std::string out_dir = ".";
  gen->add_option("--kind", gspec.kind, "family: udr|wdr|ude|wde")->required();
  gen->add_option("--n", gspec.n, "node count")->required();
  gen->add_option("--d", gspec.d, "degree (regular) or expected degree (er)")->required();
  gen->add_option("--count", gspec.count, "instances to write");
  gen->add_option("--seed", gspec.seed, "master seed");
  gen->add_option("--wmin", gspec.weight_min, "smallest weight drawn (weighted families)");
  gen->add_option("--out-dir", out_dir, "output directory");

  // solve --------------------------------------------------------------
  auto* solve_cmd = app.add_subcommand("solve", "solve one instance");
  std::string input;
  qaoa2::SolveOptions sopt;
  std::string part_str = "random", solver_str = "qaoa", denom_str = "none";
  std::string init_str = "uniform", expect_str = "shots";
  std::optional<double> nominal_d;
  bool as_json = false, as_csv = false;
  std::string dump_prefix;
  solve_cmd->add_option("--input", input, "edge-list file")->required();
  solve_cmd->add_option("--budget", sopt.budget, "qubit budget (max block size)");
  solve_cmd->add_option("--partition", part_str, "random|greedy");
  solve_cmd->add_option("--solver", solver_str, "qaoa|local|brute");
  solve_cmd->add_option("--p", sopt.solver.qaoa_cfg.p, "ansatz depth");
  solve_cmd->add_option("--iters", sopt.solver.qaoa_cfg.iterations, "optimizer iterations");
  solve_cmd->add_option("--lr", sopt.solver.qaoa_cfg.learning_rate, "learning rate");
  solve_cmd->add_option("--shots", sopt.solver.qaoa_cfg.shots, "shots per estimate");
  solve_cmd->add_option("--samples", sopt.solver.qaoa_cfg.sample_rounds,
                        "measurement rounds for the final sample");
  solve_cmd->add_option("--init", init_str, "uniform|ghz");
  solve_cmd->add_option("--expectation", expect_str, "shots|exact");
  solve_cmd->add_option("--denominator", denom_str, "none|exact|asymp|best-known");
  solve_cmd->add_option("--d", nominal_d, "nominal degree (asymp denominator)");
  solve_cmd->add_option("--restarts", sopt.best_known_restarts,
                        "multistart restarts (best-known denominator)");
  std::string merge_str = "optimized";
  solve_cmd->add_option("--merge", merge_str, "optimized|naive");
  solve_cmd->add_option("--seed", sopt.seed, "master seed");
  solve_cmd->add_flag("--json", as_json, "emit a JSON report");
  solve_cmd->add_flag("--csv", as_csv, "emit a CSV report");
  solve_cmd->add_option("--dump-coarse", dump_prefix,
                        "write each level's coarse problem to <prefix>.L<k>.{txt,json}");

  // bench --------------------------------------------------------------
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark grid");
  std::string config_path, bench_out;
  bench_cmd->add_option("--config", config_path, "grid config file")->required();
  bench_cmd->add_option("--out", bench_out, "CSV output file (default stdout)");

  // oracle -------------------------------------------------------------
  auto* oracle_cmd = app.add_subcommand("oracle", "reference MaxCut values");
  std::string oracle_input, method = "brute";
  std::size_t restarts = 100;
  std::uint64_t oracle_seed = 0;
  oracle_cmd->add_option("--input", oracle_input, "edge-list file")->required();
  oracle_cmd->add_option("--method", method, "brute|multistart");
  oracle_cmd->add_option("--restarts", restarts, "restarts for multistart");
  oracle_cmd->add_option("--seed", oracle_seed, "seed for multistart");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; any usage problem maps to the input-error code
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (*gen) {
    for (const auto& path : qaoa2::generate_instance_files(gspec, out_dir))
      std::cout << path << '\n';
    return 0;
  }

  if (*solve_cmd) {
    sopt.partition = qaoa2::partition_from_string(part_str);
    sopt.merge = qaoa2::merge_from_string(merge_str);
    sopt.solver.kind = qaoa2::solver_from_string(solver_str);
    sopt.solver.qaoa_cfg.init_state = qaoa2::init_from_string(init_str);
    sopt.solver.qaoa_cfg.expectation_mode = qaoa2::expectation_from_string(expect_str);
    sopt.denominator = qaoa2::denominator_from_string(denom_str);
    sopt.nominal_degree = nominal_d;
    if (!dump_prefix.empty()) {
      sopt.on_coarse = [&dump_prefix](int level, const qaoa2::CoarseProblem& cp) {
        const std::string stem = dump_prefix + ".L" + std::to_string(level);
        std::ofstream gout(stem + ".txt"), mout(stem + ".json");
        if (!gout || !mout) throw std::runtime_error("cannot write coarse dump: " + stem);
        qaoa2::dump_coarse(cp, gout, mout);
      };
    }
    const qaoa2::Graph g = load_graph(input);
    const qaoa2::SolveReport rep = qaoa2::solve(g, sopt);
    if (as_json) {
      std::cout << report_to_json(rep, input).dump(2) << '\n';
    } else if (as_csv) {
      std::cout << qaoa2::kBenchCsvHeader << '\n';
      std::string stem = input;
      if (const auto slash = stem.find_last_of('/'); slash != std::string::npos)
        stem = stem.substr(slash + 1);
      std::cout << stem << ",,"
                << g.n_nodes() << ",," << rep.seed << ',' << part_str << ','
                << qaoa2::to_string(sopt.solver.kind) << ',' << sopt.budget << ','
                << sopt.solver.qaoa_cfg.p << ',' << sopt.solver.qaoa_cfg.iterations << ','
                << qaoa2::detail::fmt_g(sopt.solver.qaoa_cfg.learning_rate) << ','
                << sopt.solver.qaoa_cfg.shots << ',' << qaoa2::to_string(sopt.merge) << ','
                << qaoa2::detail::fmt_g(rep.cut) << ','
                << qaoa2::detail::fmt_g(rep.cut_before_polish) << ','
                << qaoa2::to_string(rep.denominator_kind) << ',';
      if (rep.denominator_kind != qaoa2::DenominatorKind::none)
        std::cout << qaoa2::detail::fmt_g(rep.denominator) << ','
                  << qaoa2::detail::fmt_g(rep.ratio);
      else
        std::cout << ',';
      std::cout << ',';
      if (rep.partition_modularity) std::cout << qaoa2::detail::fmt_g(*rep.partition_modularity);
      std::cout << ',' << rep.depth << ',' << qaoa2::detail::fmt_ms(rep.wall.total_ms) << '\n';
    } else {
      std::cout << "cut=" << qaoa2::detail::fmt_g(rep.cut)
                << " cut_before_polish=" << qaoa2::detail::fmt_g(rep.cut_before_polish)
                << " depth=" << rep.depth;
      if (rep.denominator_kind != qaoa2::DenominatorKind::none)
        std::cout << " denominator=" << qaoa2::detail::fmt_g(rep.denominator)
                  << " ratio=" << qaoa2::detail::fmt_g(rep.ratio);
      if (rep.partition_modularity)
        std::cout << " modularity=" << qaoa2::detail::fmt_g(*rep.partition_modularity);
      std::cout << " wall_ms=" << qaoa2::detail::fmt_ms(rep.wall.total_ms) << '\n';
    }
    return 0;
  }

  if (*bench_cmd) {
    std::ifstream cfg(config_path);
    if (!cfg) throw std::invalid_argument("cannot open config file: " + config_path);
    const qaoa2::BenchGrid grid = qaoa2::parse_grid(cfg);
    if (bench_out.empty()) {
      qaoa2::run_bench(grid, std::cout);
    } else {
      std::ofstream out(bench_out);
      if (!out) throw std::invalid_argument("cannot open output file: " + bench_out);
      qaoa2::run_bench(grid, out);
    }
    return 0;
  }

  if (*oracle_cmd) {
    const qaoa2::Graph g = load_graph(oracle_input);
    double value = 0.0;
    if (method == "brute")
      value = qaoa2::brute_force(g).second;
    else if (method == "multistart")
      value = qaoa2::multistart_local_search(g, restarts, oracle_seed).second;
    else
      throw std::invalid_argument("unknown oracle method: " + method);
    std::cout << "method=" << method << " value=" << qaoa2::detail::fmt_g(value) << '\n';
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  } catch (...) {
    std::cerr << "internal error\n";
    return 2;
  }
}
