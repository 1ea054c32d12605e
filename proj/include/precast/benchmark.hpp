#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "precast/instance.hpp"
#include "precast/patterns.hpp"
#include "precast/solver.hpp"

namespace precast {

struct BenchInstance {
  std::string name;
  Instance instance;
};

struct BenchOptions {
  SolveLimits limits;
  CatalogMode patterns = CatalogMode::maximal;
  BoundKind bound = BoundKind::lp;
  std::string plan_dir;  // when set, every verified plan is written there
};

// Fixed column schema, see docs/formats.md.
struct BenchRow {
  std::string instance;
  std::string method;
  std::string status;
  std::string objective;
  std::string bound;
  std::string gap;
  std::int64_t wall_ms = 0;
  std::int64_t nodes = 0;
  std::string total_idle;
  std::string makespan;
  std::string total_completion;
  std::string surplus;
  std::string note;
};

// Methods: m1-exact, m2-exact, am2-exact, m3-exact, srh-m1, srh-m2,
// srh-am2, srh-m3 and the six rule names. Failures land in the table.
std::vector<BenchRow> run_benchmark(const std::vector<BenchInstance>& suite,
                                    const std::vector<std::string>& methods, const BenchOptions& options);

// Comma-separated table; `preamble` lines are emitted first as `# ` comments.
std::string format_report(const std::vector<BenchRow>& rows, const std::vector<std::string>& preamble = {});

std::string report_header();

}  // namespace precast
