#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bell/behavior.hpp"
#include "bell/random.hpp"
#include "bell/scenario.hpp"

// Finite-dimensional states and projective measurements.
//
// Conventions: multi-party operators are Kronecker products with party 0 as
// the leftmost (most significant) factor, so |01> means party 0 in |0> and
// party 1 in |1>. Computational basis |0> is the +1 eigenvector of Z.
namespace bell::quantum {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

Matrix kron(const Matrix& a, const Matrix& b);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);
  // |psi><psi| after normalizing psi.
  static DensityMatrix from_pure(const Vector& psi);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }
  double purity() const;
  // Tr(rho * op).
  std::complex<double> expectation(const Matrix& op) const;

 private:
  Matrix rho_;
};

class ProjectiveMeasurement {
 public:
  // One projector per outcome; checks P^2 = P = P^dagger and completeness.
  explicit ProjectiveMeasurement(std::vector<Matrix> projectors);

  int dim() const { return static_cast<int>(projectors_.front().rows()); }
  int outcome_count() const { return static_cast<int>(projectors_.size()); }
  const Matrix& projector(int outcome) const { return projectors_.at(outcome); }

 private:
  std::vector<Matrix> projectors_;
};

// Binds each (party, setting) of a scenario to a measurement on that party's
// local Hilbert space.
class MeasurementAssignment {
 public:
  MeasurementAssignment(Scenario scenario, std::vector<int> local_dims,
                        std::vector<std::vector<ProjectiveMeasurement>> measurements);

  const Scenario& scenario() const { return scenario_; }
  const std::vector<int>& local_dims() const { return local_dims_; }
  int total_dim() const;
  const ProjectiveMeasurement& measurement(int party, int setting) const;

 private:
  Scenario scenario_;
  std::vector<int> local_dims_;
  std::vector<std::vector<ProjectiveMeasurement>> measurements_;
};

// Born rule: p(a|x) = Tr(rho * (P^0_{x_0 a_0} (x) ... (x) P^{n-1}_{x_{n-1} a_{n-1}})).
Behavior behavior_from_quantum(const DensityMatrix& state, const MeasurementAssignment& ma);

// (|01> - |10>)/sqrt(2).
DensityMatrix singlet_state();
// (|0...0> + |1...1>)/sqrt(2) on n >= 3 qubits.
DensityMatrix ghz_state(int n);
// Normalized complex Gaussian vector of the given dimension.
DensityMatrix random_pure_state(Rng& rng, int dim);

// Spin measurement along the Bloch direction (theta, phi); outcome 0 is the
// +1 eigenspace of cos(theta) Z + sin(theta) cos(phi) X + sin(theta) sin(phi) Y.
ProjectiveMeasurement qubit_observable(double theta, double phi);

// Bloch direction (theta, phi) of one qubit measurement.
using Direction = std::pair<double, double>;

// Qubit measurements for every (party, setting); directions[party][setting].
MeasurementAssignment qubit_assignment(const std::vector<std::vector<Direction>>& directions);

// Alice at theta in {0, pi/2}, Bob at {pi/4, -pi/4}, all in the x-z plane.
MeasurementAssignment chsh_optimal_assignment();
// Setting 0 measures X, setting 1 measures Y, on each of n qubits.
MeasurementAssignment xy_assignment(int n);

// Singlet correlator for coplanar (x-z plane) directions, obtained from the
// Born-rule behavior.
double singlet_correlator(double theta_a, double theta_b);

}  // namespace bell::quantum
