#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "precast/benchmark.hpp"
#include "precast/generator.hpp"
#include "precast/heuristics.hpp"
#include "precast/ilp.hpp"
#include "precast/instance.hpp"
#include "precast/patterns.hpp"
#include "precast/plan.hpp"
#include "precast/solver.hpp"

namespace {

using namespace precast;

enum Exit { ok = 0, usage = 1, infeasible = 2, no_incumbent = 3 };

struct LimitFlags {
  std::int64_t max_nodes = 0;
  double time_limit = 0;
  double gap = 0;
  bool verbose = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--max-nodes", max_nodes, "Node limit (0: none)");
    cmd->add_option("--time-limit", time_limit, "Wall-clock limit in seconds (0: none)");
    cmd->add_option("--gap", gap, "Stop once the relative gap is at most this");
    cmd->add_flag("-v,--verbose", verbose, "Progress log on stderr");
  }
  SolveLimits limits() const {
    SolveLimits l;
    l.max_nodes = max_nodes;
    l.max_wall_time = std::chrono::milliseconds(static_cast<std::int64_t>(time_limit * 1000));
    l.target_gap = gap;
    if (verbose) l.log = &std::cerr;
    return l;
  }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_metrics(const Instance& inst, const PatternCatalog& cat, const ProductionPlan& plan) {
  const auto pm = metrics(inst, cat, plan);
  std::cout << "total_idle: " << format_decimal(pm.total_idle, inst.unit_scale) << "\n"
            << "makespan: " << pm.makespan << "\n"
            << "total_completion: " << pm.total_completion << "\n"
            << "surplus: " << pm.total_surplus() << "\n";
}

int report_solution(const Instance& inst, const PatternCatalog& cat, const IlpModel& model,
                    const IlpSolution& sol, const std::string& plan_out, const std::string& status_text) {
  std::cout << "status: " << status_text << "\n";
  if (sol.status != SolveStatus::infeasible) std::cout << "bound: " << sol.bound_text() << "\n";
  std::cout << "nodes: " << sol.stats.nodes << "\n"
            << "lp_solves: " << sol.stats.lp_solves << "\n"
            << "bound_fallbacks: " << sol.stats.bound_fallbacks << "\n"
            << "wall_seconds: " << sol.stats.wall_seconds << "\n";
  if (sol.status == SolveStatus::infeasible) return Exit::infeasible;
  if (!sol.has_incumbent()) return Exit::no_incumbent;
  std::cout << "objective: " << sol.objective_text() << "\n"
            << "gap: " << sol.gap() << "\n";
  const auto plan = decode(model, sol, cat);
  if (auto v = verify(inst, cat, plan); !v.empty()) {
    throw std::logic_error("decoded plan failed verification: " + v.front());
  }
  print_metrics(inst, cat, plan);
  if (!plan_out.empty()) write_text(plan_out, write_plan(inst, cat, plan, inst.name));
  return Exit::ok;
}

std::vector<BenchInstance> generated_suite(const std::string& preset, std::uint64_t seed, int count) {
  std::vector<BenchInstance> suite;
  for (int i = 0; i < count; ++i) {
    auto cfg = GeneratorConfig::preset(preset);
    cfg.seed = seed + static_cast<std::uint64_t>(i);
    auto inst = generate(cfg);
    suite.push_back({preset + "-" + std::to_string(cfg.seed), std::move(inst)});
  }
  return suite;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Precast beam production planning: models, exact solver and heuristics"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic instance");
  std::string gen_preset = "small", gen_out;
  std::uint64_t gen_seed = 1;
  int gen_periods = 0, gen_demand_max = -1;
  double gen_slack = 2.0;
  gen->add_option("--preset", gen_preset, "tiny, small or medium")->capture_default_str();
  gen->add_option("--seed", gen_seed)->capture_default_str();
  gen->add_option("--periods", gen_periods, "Fixed horizon (0: derived from demand)");
  gen->add_option("--demand-max", gen_demand_max, "Override the upper demand bound");
  gen->add_option("--slack", gen_slack, "Horizon slack factor")->capture_default_str();
  gen->add_option("-o,--out", gen_out, "Output file (default stdout)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance exactly with branch and bound");
  std::string solve_file, solve_model = "m1", solve_patterns = "maximal", solve_bound = "lp", solve_plan;
  LimitFlags solve_limits;
  solve_cmd->add_option("instance", solve_file)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--model", solve_model, "m1, m2, am2 or m3")->capture_default_str();
  solve_cmd->add_option("--patterns", solve_patterns, "maximal, all or qc-maximal")->capture_default_str();
  solve_cmd->add_option("--bound", solve_bound, "trivial, demand or lp")->capture_default_str();
  solve_cmd->add_option("--plan-out", solve_plan, "Write the plan file here");
  solve_limits.attach(solve_cmd);

  // heuristic
  auto* heur = app.add_subcommand("heuristic", "Run a priority rule");
  std::string heur_file, heur_rule = "sctsl", heur_plan;
  bool heur_phase1 = false;
  heur->add_option("instance", heur_file)->required()->check(CLI::ExistingFile);
  heur->add_option("--rule", heur_rule, "sctsl, sctll, sctal, lctsl, lctll or lctal")->capture_default_str();
  heur->add_flag("--phase1-only", heur_phase1, "Skip the maximalization phase");
  heur->add_option("--plan-out", heur_plan, "Write the plan file here");

  // srh
  auto* srh = app.add_subcommand("srh", "Solve the model restricted to qc-maximal patterns");
  std::string srh_file, srh_model = "m1", srh_bound = "lp", srh_plan;
  LimitFlags srh_limits;
  srh->add_option("instance", srh_file)->required()->check(CLI::ExistingFile);
  srh->add_option("--model", srh_model, "m1, m2, am2 or m3")->capture_default_str();
  srh->add_option("--bound", srh_bound, "trivial, demand or lp")->capture_default_str();
  srh->add_option("--plan-out", srh_plan, "Write the plan file here");
  srh_limits.attach(srh);

  // check
  auto* check = app.add_subcommand("check", "Verify a plan file against an instance");
  std::string check_inst, check_plan;
  check->add_option("instance", check_inst)->required()->check(CLI::ExistingFile);
  check->add_option("plan", check_plan)->required()->check(CLI::ExistingFile);

  // export-lp
  auto* lp = app.add_subcommand("export-lp", "Write the model in LP format");
  std::string lp_file, lp_model = "m1", lp_patterns = "maximal", lp_out;
  bool lp_stats = false;
  lp->add_option("instance", lp_file)->required()->check(CLI::ExistingFile);
  lp->add_option("--model", lp_model)->capture_default_str();
  lp->add_option("--patterns", lp_patterns)->capture_default_str();
  lp->add_option("-o,--out", lp_out, "Output file (default stdout)");
  lp->add_flag("--stats", lp_stats, "Print model size on stderr");

  // catalog
  auto* catalog = app.add_subcommand("catalog", "List the pattern catalog");
  std::string cat_file, cat_patterns = "maximal";
  catalog->add_option("instance", cat_file)->required()->check(CLI::ExistingFile);
  catalog->add_option("--patterns", cat_patterns)->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "Run methods over a suite and emit a CSV report");
  std::vector<std::string> bench_files;
  std::string bench_preset = "small", bench_methods = "m1-exact,sctsl", bench_patterns = "maximal",
              bench_bound = "lp", bench_out, bench_plans;
  std::uint64_t bench_seed = 1;
  int bench_count = 3;
  LimitFlags bench_limits;
  bench->add_option("instances", bench_files, "Instance files (default: generated suite)")
      ->check(CLI::ExistingFile);
  bench->add_option("--preset", bench_preset)->capture_default_str();
  bench->add_option("--seed", bench_seed)->capture_default_str();
  bench->add_option("--count", bench_count)->capture_default_str();
  bench->add_option("--methods", bench_methods, "Comma-separated method list")->capture_default_str();
  bench->add_option("--patterns", bench_patterns)->capture_default_str();
  bench->add_option("--bound", bench_bound)->capture_default_str();
  bench->add_option("-o,--out", bench_out, "Report file (default stdout)");
  bench->add_option("--plan-dir", bench_plans, "Directory for verified plan files");
  bench_limits.attach(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? Exit::ok : Exit::usage;
  }

  try {
    if (*gen) {
      auto cfg = GeneratorConfig::preset(gen_preset);
      cfg.seed = gen_seed;
      cfg.slack = gen_slack;
      if (gen_periods > 0) cfg.periods = gen_periods;
      if (gen_demand_max >= 0) {
        cfg.demand_max = gen_demand_max;
        cfg.demand_min = std::min(cfg.demand_min, gen_demand_max);
      }
      const auto inst = generate(cfg);
      write_text(gen_out, "# " + cfg.describe() + "\n" + serialize_instance(inst));
      return Exit::ok;
    }

    if (*solve_cmd) {
      const auto inst = load_instance(solve_file);
      const auto cat = build_catalog(inst, catalog_mode_from_string(solve_patterns));
      const auto model = build_model(model_kind_from_string(solve_model), inst, cat);
      auto provider = make_bound(bound_kind_from_string(solve_bound), inst, cat);
      const auto sol = solve(model, solve_limits.limits(), *provider);
      return report_solution(inst, cat, model, sol, solve_plan, to_string(sol.status));
    }

    if (*heur) {
      const auto inst = load_instance(heur_file);
      const auto rule = RuleSpec::from_name(heur_rule);
      try {
        const auto sched = heur_phase1 ? construct_plan(inst, rule) : run_priority_rule(inst, rule);
        if (auto v = verify(inst, sched.catalog, sched.plan); !v.empty()) {
          throw std::logic_error("rule plan failed verification: " + v.front());
        }
        std::cout << "status: feasible\n";
        print_metrics(inst, sched.catalog, sched.plan);
        if (!heur_plan.empty()) write_text(heur_plan, write_plan(inst, sched.catalog, sched.plan, inst.name));
        return Exit::ok;
      } catch (const HorizonExhausted& e) {
        std::cout << "status: horizon-exhausted\n";
        std::cerr << e.what() << "\n";
        return Exit::infeasible;
      }
    }

    if (*srh) {
      const auto inst = load_instance(srh_file);
      const auto res = run_srh(inst, model_kind_from_string(srh_model), srh_limits.limits(),
                               bound_kind_from_string(srh_bound));
      std::cout << "patterns: " << res.catalog.num_patterns() << "\n";
      return report_solution(inst, res.catalog, res.model, res.solution, srh_plan, to_string(res.status));
    }

    if (*check) {
      const auto inst = load_instance(check_inst);
      const auto sched = read_plan(read_text(check_plan), inst);
      const auto v = verify(inst, sched.catalog, sched.plan);
      if (!v.empty()) {
        std::cout << "status: invalid\n";
        for (const auto& line : v) std::cout << "  " << line << "\n";
        return Exit::infeasible;
      }
      std::cout << "status: valid\n";
      print_metrics(inst, sched.catalog, sched.plan);
      return Exit::ok;
    }

    if (*lp) {
      const auto inst = load_instance(lp_file);
      const auto cat = build_catalog(inst, catalog_mode_from_string(lp_patterns));
      const auto model = build_model(model_kind_from_string(lp_model), inst, cat);
      write_text(lp_out, export_lp(model));
      if (lp_stats) std::cerr << stats_line(model) << "\n";
      return Exit::ok;
    }

    if (*catalog) {
      const auto inst = load_instance(cat_file);
      std::cout << dump_catalog(build_catalog(inst, catalog_mode_from_string(cat_patterns)), inst);
      return Exit::ok;
    }

    if (*bench) {
      std::vector<BenchInstance> suite;
      std::vector<std::string> preamble;
      if (bench_files.empty()) {
        suite = generated_suite(bench_preset, bench_seed, bench_count);
        for (int i = 0; i < bench_count; ++i) {
          auto cfg = GeneratorConfig::preset(bench_preset);
          cfg.seed = bench_seed + static_cast<std::uint64_t>(i);
          preamble.push_back("generator " + cfg.describe());
        }
      } else {
        for (const auto& f : bench_files) {
          suite.push_back({std::filesystem::path(f).stem().string(), load_instance(f)});
          preamble.push_back("instance " + f);
        }
      }
      std::vector<std::string> methods;
      std::stringstream list(bench_methods);
      for (std::string item; std::getline(list, item, ',');) {
        if (!item.empty()) methods.push_back(item);
      }
      BenchOptions options;
      options.limits = bench_limits.limits();
      options.patterns = catalog_mode_from_string(bench_patterns);
      options.bound = bound_kind_from_string(bench_bound);
      options.plan_dir = bench_plans;
      preamble.push_back("methods " + bench_methods + " patterns " + bench_patterns + " bound " + bench_bound +
                         " max_nodes " + std::to_string(bench_limits.max_nodes) + " time_limit " +
                         std::to_string(bench_limits.time_limit));
      write_text(bench_out, format_report(run_benchmark(suite, methods, options), preamble));
      return Exit::ok;
    }
  } catch (const InstanceError& e) {
    std::cerr << "invalid instance:\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << "\n";
    return Exit::usage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Exit::usage;
  }
  return Exit::usage;
}
