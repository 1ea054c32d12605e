#include "precast/benchmark.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "precast/heuristics.hpp"
#include "precast/ilp.hpp"
#include "precast/plan.hpp"

namespace precast {

namespace {

using Clock = std::chrono::steady_clock;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void record_plan(BenchRow& row, const Instance& inst, const PatternCatalog& cat, const ProductionPlan& plan,
                 const BenchOptions& options) {
  if (auto v = verify(inst, cat, plan); !v.empty()) {
    row.status = "error";
    row.note = "plan failed verification: " + v.front();
    return;
  }
  const auto pm = metrics(inst, cat, plan);
  row.total_idle = format_decimal(pm.total_idle, inst.unit_scale);
  row.makespan = std::to_string(pm.makespan);
  row.total_completion = std::to_string(pm.total_completion);
  row.surplus = std::to_string(pm.total_surplus());
  if (!options.plan_dir.empty()) {
    std::filesystem::create_directories(options.plan_dir);
    const auto path = std::filesystem::path(options.plan_dir) / (row.instance + "." + row.method + ".plan");
    std::ofstream(path) << write_plan(inst, cat, plan, row.instance);
  }
}

void fill_solution(BenchRow& row, const IlpSolution& sol) {
  row.nodes = sol.stats.nodes;
  if (sol.has_incumbent()) {
    row.objective = sol.objective_text();
    std::ostringstream gap;
    gap << sol.gap();
    row.gap = gap.str();
  }
  if (sol.status != SolveStatus::infeasible) row.bound = sol.bound_text();
}

BenchRow run_cell(const BenchInstance& item, const std::string& method, const BenchOptions& options) {
  BenchRow row;
  row.instance = item.name;
  row.method = method;
  const Instance& inst = item.instance;
  const auto start = Clock::now();
  try {
    if (method.size() > 6 && method.ends_with("-exact")) {
      const auto kind = model_kind_from_string(method.substr(0, method.size() - 6));
      const auto cat = build_catalog(inst, options.patterns);
      const auto model = build_model(kind, inst, cat);
      auto provider = make_bound(options.bound, inst, cat);
      const auto sol = solve(model, options.limits, *provider);
      row.status = to_string(sol.status);
      fill_solution(row, sol);
      if (sol.has_incumbent()) record_plan(row, inst, cat, decode(model, sol, cat), options);
    } else if (method.starts_with("srh-")) {
      const auto kind = model_kind_from_string(method.substr(4));
      const auto res = run_srh(inst, kind, options.limits, options.bound);
      row.status = res.status == SrhStatus::solved ? "optimal-reduced" : to_string(res.status);
      if (res.status == SrhStatus::limit_reached && res.plan) row.status = "feasible-reduced";
      fill_solution(row, res.solution);
      if (res.plan) record_plan(row, inst, res.catalog, *res.plan, options);
    } else {
      const auto rule = RuleSpec::from_name(method);
      const auto sched = run_priority_rule(inst, rule);
      row.status = "feasible";
      record_plan(row, inst, sched.catalog, sched.plan, options);
      if (row.status == "feasible") row.objective = row.total_idle;
    }
  } catch (const HorizonExhausted& e) {
    row.status = "horizon-exhausted";
    row.note = e.what();
  } catch (const std::exception& e) {
    row.status = "error";
    row.note = e.what();
  }
  row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  return row;
}

}  // namespace

std::vector<BenchRow> run_benchmark(const std::vector<BenchInstance>& suite,
                                    const std::vector<std::string>& methods, const BenchOptions& options) {
  std::vector<BenchRow> rows;
  for (const auto& item : suite) {
    for (const auto& method : methods) rows.push_back(run_cell(item, method, options));
  }
  return rows;
}

std::string report_header() {
  return "instance,method,status,objective,bound,gap,wall_ms,nodes,total_idle,makespan,total_completion,"
         "surplus,note";
}

std::string format_report(const std::vector<BenchRow>& rows, const std::vector<std::string>& preamble) {
  std::ostringstream out;
  for (const auto& line : preamble) out << "# " << line << "\n";
  out << report_header() << "\n";
  for (const auto& r : rows) {
    out << csv_field(r.instance) << ',' << csv_field(r.method) << ',' << r.status << ',' << r.objective << ','
        << r.bound << ',' << r.gap << ',' << r.wall_ms << ',' << r.nodes << ',' << r.total_idle << ','
        << r.makespan << ',' << r.total_completion << ',' << r.surplus << ',' << csv_field(r.note) << "\n";
  }
  return out.str();
}

}  // namespace precast
