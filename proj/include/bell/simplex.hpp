#pragma once

#include <cstddef>
#include <vector>

// Dense two-phase primal simplex for
//   minimize c^T x  subject to  A x = b,  x >= 0.
// Pivoting follows Bland's rule (lowest-index entering and leaving
// variables), which rules out cycling.
namespace bell::lp {

struct LinearProgram {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // row-major, rows x cols
  std::vector<double> b;
  std::vector<double> c;

  LinearProgram() = default;
  LinearProgram(std::size_t rows_, std::size_t cols_)
      : rows(rows_), cols(cols_), a(rows_ * cols_, 0.0), b(rows_, 0.0), c(cols_, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

enum class Status { optimal, infeasible, unbounded };

struct Options {
  // Phase 1 accepts the system when the L1 residual is at most this.
  double feasibility_tol = 1e-9;
  double pivot_tol = 1e-12;
  double optimality_tol = 1e-11;
  std::size_t max_iterations = 1'000'000;
};

inline constexpr std::size_t kMaxVariables = 1'000'000;

struct Solution {
  Status status = Status::infeasible;
  std::vector<double> x;     // primal point (optimal status only)
  double objective = 0.0;    // c^T x (optimal status only)
  double infeasibility = 0.0;  // phase-1 optimum: min ||A x - b||_1 over x >= 0
  // Infeasible status only: y with A^T y <= 0 and b^T y = infeasibility > 0.
  std::vector<double> farkas;
  std::size_t iterations = 0;
};

// Throws LimitError beyond kMaxVariables columns and NumericError when the
// iteration budget runs out.
Solution solve(const LinearProgram& lp, const Options& options = {});

}  // namespace bell::lp
