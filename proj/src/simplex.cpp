#include "bell/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bell/errors.hpp"

namespace bell::lp {
namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), width_(cols + rows + 1), t_(rows * width_, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }
  double& rhs(std::size_t i) { return at(i, width_ - 1); }
  std::size_t rows() const { return rows_; }
  std::size_t width() const { return width_; }

  // Pivot on (r, col), updating the reduced-cost row as well.
  void pivot(std::size_t r, std::size_t col, std::vector<double>& cost, std::vector<std::size_t>& basis) {
    const double inv = 1.0 / at(r, col);
    for (std::size_t j = 0; j < width_; ++j) at(r, j) *= inv;
    at(r, col) = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) at(i, j) -= f * at(r, j);
      at(i, col) = 0.0;
    }
    const double f = cost[col];
    if (f != 0.0) {
      for (std::size_t j = 0; j < width_; ++j) cost[j] -= f * at(r, j);
      cost[col] = 0.0;
    }
    basis[r] = col;
  }

 private:
  std::size_t rows_;
  std::size_t width_;
  std::vector<double> t_;
};

enum class Outcome { optimal, unbounded };

// Bland's rule iterations over columns [0, allowed).
Outcome iterate(Tableau& t, std::vector<double>& cost, std::vector<std::size_t>& basis, std::size_t allowed,
                const Options& options, std::size_t& iterations) {
  const std::size_t rhs = t.width() - 1;
  while (true) {
    if (iterations >= options.max_iterations) throw NumericError("simplex iteration limit reached");
    std::size_t enter = allowed;
    for (std::size_t j = 0; j < allowed; ++j) {
      if (cost[j] < -options.optimality_tol) {
        enter = j;
        break;
      }
    }
    if (enter == allowed) return Outcome::optimal;

    std::size_t leave = t.rows();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= options.pivot_tol) continue;
      const double ratio = std::max(t.at(i, rhs), 0.0) / a;
      if (ratio < best - 1e-12 || (ratio <= best + 1e-12 && leave < t.rows() && basis[i] < basis[leave])) {
        if (ratio < best) best = ratio;
        leave = i;
      }
    }
    if (leave == t.rows()) return Outcome::unbounded;
    t.pivot(leave, enter, cost, basis);
    ++iterations;
  }
}

}  // namespace

Solution solve(const LinearProgram& lp, const Options& options) {
  const std::size_t m = lp.rows;
  const std::size_t n = lp.cols;
  if (n > kMaxVariables) throw LimitError("linear program exceeds the variable limit");
  if (lp.a.size() != m * n || lp.b.size() != m || lp.c.size() != n)
    throw StructureError("linear program arrays do not match its dimensions");

  Tableau t(m, n);
  const std::size_t rhs = t.width() - 1;
  std::vector<double> sign(m, 1.0);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.b[i] < 0.0) sign[i] = -1.0;
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sign[i] * lp.at(i, j);
    t.at(i, n + i) = 1.0;
    t.rhs(i) = sign[i] * lp.b[i];
    basis[i] = n + i;
  }

  // Phase 1: minimize the sum of artificial variables.
  std::vector<double> cost(t.width(), 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[j] -= t.at(i, j);
    cost[rhs] -= t.rhs(i);
  }

  Solution sol;
  iterate(t, cost, basis, n + m, options, sol.iterations);
  sol.infeasibility = std::max(-cost[rhs], 0.0);

  if (sol.infeasibility > options.feasibility_tol) {
    sol.status = Status::infeasible;
    // Reduced cost of artificial i is 1 - y_i.
    sol.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) sol.farkas[i] = sign[i] * (1.0 - cost[n + i]);
    return sol;
  }

  // Drive artificials out of the basis; rows where that is impossible are
  // linearly dependent on the others and stay inert.
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    std::size_t col = n;
    double best = 1e-9;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(t.at(i, j)) > best) {
        best = std::abs(t.at(i, j));
        col = j;
      }
    }
    if (col < n) t.pivot(i, col, cost, basis);
  }

  // Phase 2 with the true objective.
  std::fill(cost.begin(), cost.end(), 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.c[j];
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= n) continue;
    const double cb = lp.c[basis[i]];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j < t.width(); ++j) cost[j] -= cb * t.at(i, j);
  }
  if (iterate(t, cost, basis, n, options, sol.iterations) == Outcome::unbounded) {
    sol.status = Status::unbounded;
    return sol;
  }

  sol.status = Status::optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = std::max(t.rhs(i), 0.0);
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.c[j] * sol.x[j];
  return sol;
}

}  // namespace bell::lp
