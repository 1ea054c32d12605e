#include "precast/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace precast {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-7;

class Tableau {
 public:
  explicit Tableau(const LpProblem& lp)
      : n_(static_cast<int>(lp.cost.size())),
        m_(static_cast<int>(lp.rows.size())),
        cols_(n_ + m_ + count_artificials(lp)),
        tab_(static_cast<std::size_t>(m_) * cols_, 0.0),
        lower_(cols_, 0.0),
        upper_(cols_, 0.0),
        value_(cols_, 0.0),
        basis_(m_, -1),
        row_of_(cols_, -1) {
    int next_artificial = n_ + m_;
    for (int j = 0; j < n_; ++j) {
      lower_[j] = lp.lower[j];
      upper_[j] = lp.upper[j];
      value_[j] = lp.lower[j];
    }
    for (int i = 0; i < m_; ++i) {
      const auto& row = lp.rows[i];
      double residual = row.rhs;
      for (auto [j, a] : row.terms) {
        at(i, j) += a;
        residual -= a * lp.lower[j];
      }
      const int s = slack(i);
      at(i, s) = 1.0;
      switch (row.sense) {
        case Sense::le: lower_[s] = 0; upper_[s] = kInf; break;
        case Sense::ge: lower_[s] = -kInf; upper_[s] = 0; break;
        case Sense::eq: lower_[s] = 0; upper_[s] = 0; break;
      }
      if (residual >= lower_[s] - kFeasTol && residual <= upper_[s] + kFeasTol) {
        set_basic(i, s, residual);
        continue;
      }
      value_[s] = 0;
      const int art = next_artificial++;
      const double sigma = residual > 0 ? 1.0 : -1.0;
      at(i, art) = sigma;
      // Scale the row so the artificial has coefficient one.
      for (int j = 0; j < cols_; ++j) at(i, j) *= sigma;
      upper_[art] = kInf;
      set_basic(i, art, std::abs(residual));
      phase_one_cost_.push_back(art);
    }
  }

  // Rows whose slack cannot absorb the right-hand side at the starting point.
  static int count_artificials(const LpProblem& lp) {
    int count = 0;
    for (const auto& row : lp.rows) {
      double residual = row.rhs;
      for (auto [j, a] : row.terms) residual -= a * lp.lower[j];
      const bool fits = row.sense == Sense::le   ? residual >= -kFeasTol
                        : row.sense == Sense::ge ? residual <= kFeasTol
                                                 : std::abs(residual) <= kFeasTol;
      if (!fits) ++count;
    }
    return count;
  }

  bool needs_phase_one() const { return !phase_one_cost_.empty(); }

  // Returns false on iteration limit.
  bool optimize(const std::vector<double>& cost, int& budget, const std::optional<Deadline>& deadline) {
    int degenerate_streak = 0;
    std::vector<double> d(cols_);
    while (true) {
      if (budget-- <= 0) return false;
      if (deadline && budget % 16 == 0 && std::chrono::steady_clock::now() >= *deadline) return false;
      reduced_costs(cost, d);
      const bool bland = degenerate_streak > 30;
      int enter = -1;
      double best = 0;
      for (int j = 0; j < cols_; ++j) {
        if (row_of_[j] >= 0 || !(upper_[j] > lower_[j])) continue;
        const bool at_lower = value_[j] <= lower_[j];
        const double gain = at_lower ? -d[j] : d[j];
        if (gain <= kCostTol) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (gain > best) {
          best = gain;
          enter = j;
        }
      }
      if (enter < 0) return true;

      const double dir = value_[enter] <= lower_[enter] ? 1.0 : -1.0;
      double theta = upper_[enter] - lower_[enter];
      int leave = -1;
      double leave_alpha = 0;
      for (int i = 0; i < m_; ++i) {
        const double alpha = at(i, enter);
        if (std::abs(alpha) < kPivotTol) continue;
        const double delta = -alpha * dir;
        const int b = basis_[i];
        double limit = kInf;
        if (delta < 0 && lower_[b] > -kInf) limit = (value_[b] - lower_[b]) / -delta;
        if (delta > 0 && upper_[b] < kInf) limit = (upper_[b] - value_[b]) / delta;
        if (limit == kInf) continue;
        limit = std::max(limit, 0.0);
        const bool better =
            limit < theta - 1e-12 ||
            (leave >= 0 && std::abs(limit - theta) <= 1e-12 &&
             (bland ? b < basis_[leave] : std::abs(alpha) > std::abs(leave_alpha)));
        if (better) {
          theta = limit;
          leave = i;
          leave_alpha = alpha;
        }
      }
      if (theta == kInf) return false;  // unbounded: cannot happen with bounded structurals
      degenerate_streak = theta < 1e-12 ? degenerate_streak + 1 : 0;

      for (int i = 0; i < m_; ++i) value_[basis_[i]] += -at(i, enter) * dir * theta;
      if (leave < 0) {  // bound flip
        value_[enter] = dir > 0 ? upper_[enter] : lower_[enter];
        continue;
      }
      value_[enter] += dir * theta;

      const int out = basis_[leave];
      value_[out] = (-leave_alpha * dir) < 0 ? lower_[out] : upper_[out];
      row_of_[out] = -1;
      pivot(leave, enter);
    }
  }

  double phase_one_objective() const {
    double total = 0;
    for (int art : phase_one_cost_) total += value_[art];
    return total;
  }

  std::vector<double> phase_one_costs() const {
    std::vector<double> c(cols_, 0.0);
    for (int art : phase_one_cost_) c[art] = 1.0;
    return c;
  }

  void retire_artificials() {
    for (int art : phase_one_cost_) upper_[art] = 0;
  }

  std::vector<double> duals(const std::vector<double>& cost) const {
    std::vector<double> d(cols_);
    reduced_costs(cost, d);
    std::vector<double> y(m_);
    for (int i = 0; i < m_; ++i) y[i] = -d[slack(i)];
    return y;
  }

  std::vector<double> structural() const {
    return std::vector<double>(value_.begin(), value_.begin() + n_);
  }

  int cols() const { return cols_; }

 private:
  int slack(int i) const { return n_ + i; }
  double& at(int i, int j) { return tab_[static_cast<std::size_t>(i) * cols_ + j]; }
  double at(int i, int j) const { return tab_[static_cast<std::size_t>(i) * cols_ + j]; }

  void set_basic(int i, int j, double v) {
    basis_[i] = j;
    row_of_[j] = i;
    value_[j] = v;
  }

  void reduced_costs(const std::vector<double>& cost, std::vector<double>& d) const {
    d = cost;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0) continue;
      const double* row = &tab_[static_cast<std::size_t>(i) * cols_];
      for (int j = 0; j < cols_; ++j) d[j] -= cb * row[j];
    }
  }

  void pivot(int r, int enter) {
    double* prow = &tab_[static_cast<std::size_t>(r) * cols_];
    const double inv = 1.0 / prow[enter];
    nonzero_.clear();
    for (int j = 0; j < cols_; ++j) {
      if (prow[j] == 0) continue;
      prow[j] *= inv;
      nonzero_.push_back(j);
    }
    prow[enter] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &tab_[static_cast<std::size_t>(i) * cols_];
      const double f = row[enter];
      if (f == 0) continue;
      for (int j : nonzero_) row[j] -= f * prow[j];
      row[enter] = 0.0;
    }
    basis_[r] = enter;
    row_of_[enter] = r;
  }

  int n_, m_, cols_;
  std::vector<double> tab_;
  std::vector<double> lower_, upper_, value_;
  std::vector<int> basis_, row_of_;
  std::vector<int> phase_one_cost_;
  std::vector<int> nonzero_;
};

}  // namespace

LpResult solve_lp(const LpProblem& lp, int max_iterations, std::optional<Deadline> deadline) {
  LpResult result;
  const int n = static_cast<int>(lp.cost.size());
  Tableau tab(lp);
  int budget = max_iterations > 0 ? max_iterations : 50 * (tab.cols() + 10);
  const int start_budget = budget;

  if (tab.needs_phase_one()) {
    const auto c1 = tab.phase_one_costs();
    if (!tab.optimize(c1, budget, deadline)) {
      result.iterations = start_budget - budget;
      return result;
    }
    if (tab.phase_one_objective() > kFeasTol) {
      result.status = LpResult::Status::infeasible;
      result.duals = tab.duals(c1);
      result.iterations = start_budget - budget;
      return result;
    }
    tab.retire_artificials();
  }

  double scale = 0;
  for (double c : lp.cost) scale = std::max(scale, std::abs(c));
  if (scale == 0) scale = 1;
  std::vector<double> cost(tab.cols(), 0.0);
  for (int j = 0; j < n; ++j) cost[j] = lp.cost[j] / scale;
  if (!tab.optimize(cost, budget, deadline)) {
    result.iterations = start_budget - budget;
    return result;
  }
  result.status = LpResult::Status::optimal;
  result.x = tab.structural();
  result.duals = tab.duals(cost);
  for (double& y : result.duals) y *= scale;
  for (int j = 0; j < n; ++j) result.objective += lp.cost[j] * result.x[j];
  result.iterations = start_budget - budget;
  return result;
}

}  // namespace precast
