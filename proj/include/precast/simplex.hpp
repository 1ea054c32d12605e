#pragma once

#include <chrono>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "precast/ilp.hpp"

namespace precast {

// Dense bounded-variable primal simplex in double precision. Used only for
// guidance: every bound derived from its output is re-validated in exact
// arithmetic by the caller.
struct LpProblem {
  struct Row {
    std::vector<std::pair<int, double>> terms;
    Sense sense = Sense::le;
    double rhs = 0;
  };
  std::vector<double> cost;
  std::vector<double> lower;
  std::vector<double> upper;  // finite
  std::vector<Row> rows;
};

struct LpResult {
  enum class Status { optimal, infeasible, iteration_limit };
  Status status = Status::iteration_limit;
  std::vector<double> x;      // structural values
  std::vector<double> duals;  // one per row; phase-one duals when infeasible
  double objective = 0;
  int iterations = 0;
};

using Deadline = std::chrono::steady_clock::time_point;

// Gives up with iteration_limit once the deadline passes.
LpResult solve_lp(const LpProblem& lp, int max_iterations = 0, std::optional<Deadline> deadline = std::nullopt);

}  // namespace precast
