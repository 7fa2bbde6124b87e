#include "bell/quantum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bell/errors.hpp"

namespace bell::quantum {
namespace {

constexpr double kStateTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kProjectorTol = 1e-10;

using cd = std::complex<double>;

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, cd(0, -1), cd(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

DensityMatrix::DensityMatrix(Matrix entries) : rho_(std::move(entries)) {
  if (rho_.rows() == 0 || rho_.rows() != rho_.cols()) throw StructureError("density matrix must be square and non-empty");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kStateTol) throw InvariantError("density matrix is not Hermitian");
  if (std::abs(rho_.trace() - cd(1.0, 0.0)) > kStateTol) throw InvariantError("density matrix trace is not 1");
  // Cholesky of rho + tol*I succeeds iff every eigenvalue is above -tol.
  const Matrix shifted = rho_ + kPsdTol * Matrix::Identity(rho_.rows(), rho_.cols());
  if (Eigen::LLT<Matrix>(shifted).info() != Eigen::Success)
    throw InvariantError("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::from_pure(const Vector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw InvariantError("state vector has zero norm");
  const Vector v = psi / norm;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw StructureError("dimension must be positive");
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

std::complex<double> DensityMatrix::expectation(const Matrix& op) const {
  if (op.rows() != rho_.rows() || op.cols() != rho_.cols()) throw StructureError("operator dimension mismatch");
  return (rho_ * op).trace();
}

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<Matrix> projectors) : projectors_(std::move(projectors)) {
  if (projectors_.empty()) throw StructureError("measurement needs at least one projector");
  const auto d = projectors_.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& p : projectors_) {
    if (p.rows() != d || p.cols() != d) throw StructureError("projector dimensions differ");
    if ((p * p - p).cwiseAbs().maxCoeff() > kProjectorTol) throw InvariantError("operator is not idempotent");
    if ((p - p.adjoint()).cwiseAbs().maxCoeff() > kProjectorTol) throw InvariantError("projector is not Hermitian");
    sum += p;
  }
  if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kProjectorTol)
    throw InvariantError("projectors do not sum to the identity");
}

MeasurementAssignment::MeasurementAssignment(Scenario scenario, std::vector<int> local_dims,
                                             std::vector<std::vector<ProjectiveMeasurement>> measurements)
    : scenario_(std::move(scenario)), local_dims_(std::move(local_dims)), measurements_(std::move(measurements)) {
  const int n = scenario_.parties();
  if (static_cast<int>(local_dims_.size()) != n || static_cast<int>(measurements_.size()) != n)
    throw StructureError("measurement assignment needs one entry per party");
  for (int p = 0; p < n; ++p) {
    if (static_cast<int>(measurements_[p].size()) != scenario_.settings(p))
      throw StructureError("party " + std::to_string(p) + " has the wrong number of measurements");
    for (int x = 0; x < scenario_.settings(p); ++x) {
      const auto& m = measurements_[p][x];
      if (m.dim() != local_dims_[p])
        throw StructureError("measurement dimension does not match local dimension of party " + std::to_string(p));
      if (m.outcome_count() != scenario_.outcomes(p, x))
        throw StructureError("measurement outcome count does not match the scenario");
    }
  }
}

int MeasurementAssignment::total_dim() const {
  int d = 1;
  for (int k : local_dims_) d *= k;
  return d;
}

const ProjectiveMeasurement& MeasurementAssignment::measurement(int party, int setting) const {
  scenario_.outcomes(party, setting);  // range check
  return measurements_[party][setting];
}

Behavior behavior_from_quantum(const DensityMatrix& state, const MeasurementAssignment& ma) {
  if (state.dim() != ma.total_dim()) throw StructureError("state dimension does not match the measurement assignment");
  const Scenario& s = ma.scenario();
  const Matrix rho_t = state.matrix().transpose();
  std::vector<double> table(s.table_size());
  for (std::size_t js = 0; js < s.joint_setting_count(); ++js) {
    const auto xs = s.joint_setting(js);
    const std::size_t begin = s.offset(js);
    for (std::size_t t = 0; t < s.outcome_tuple_count(js); ++t) {
      const auto as = s.outcome_tuple(js, t);
      Matrix op = ma.measurement(0, xs[0]).projector(as[0]);
      for (int p = 1; p < s.parties(); ++p) op = kron(op, ma.measurement(p, xs[p]).projector(as[p]));
      // Tr(rho * op) = sum_ij rho_ji op_ij
      table[begin + t] = rho_t.cwiseProduct(op).sum().real();
    }
  }
  return Behavior(s, std::move(table));
}

DensityMatrix singlet_state() {
  Vector psi = Vector::Zero(4);
  psi(1) = 1.0 / std::numbers::sqrt2;   // |01>
  psi(2) = -1.0 / std::numbers::sqrt2;  // |10>
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix ghz_state(int n) {
  if (n < 3) throw InvariantError("GHZ state needs at least 3 qubits");
  if (n > 12) throw LimitError("GHZ state limited to 12 qubits");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Vector psi = Vector::Zero(dim);
  psi(0) = 1.0 / std::numbers::sqrt2;
  psi(dim - 1) = 1.0 / std::numbers::sqrt2;
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix random_pure_state(Rng& rng, int dim) {
  if (dim < 1) throw StructureError("dimension must be positive");
  Vector psi(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    psi(i) = cd(re, im);
  }
  return DensityMatrix::from_pure(psi);
}

ProjectiveMeasurement qubit_observable(double theta, double phi) {
  const Matrix n_sigma = std::cos(theta) * pauli_z() + std::sin(theta) * std::cos(phi) * pauli_x() +
                         std::sin(theta) * std::sin(phi) * pauli_y();
  const Matrix id = Matrix::Identity(2, 2);
  return ProjectiveMeasurement({(id + n_sigma) / 2.0, (id - n_sigma) / 2.0});
}

MeasurementAssignment qubit_assignment(const std::vector<std::vector<Direction>>& directions) {
  std::vector<std::vector<int>> outcomes;
  std::vector<std::vector<ProjectiveMeasurement>> ms;
  for (const auto& party : directions) {
    outcomes.emplace_back(party.size(), 2);
    auto& row = ms.emplace_back();
    for (const auto& [theta, phi] : party) row.push_back(qubit_observable(theta, phi));
  }
  return MeasurementAssignment(Scenario(std::move(outcomes)), std::vector<int>(directions.size(), 2), std::move(ms));
}

MeasurementAssignment chsh_optimal_assignment() {
  using std::numbers::pi;
  return qubit_assignment({{{0.0, 0.0}, {pi / 2, 0.0}}, {{pi / 4, 0.0}, {-pi / 4, 0.0}}});
}

MeasurementAssignment xy_assignment(int n) {
  using std::numbers::pi;
  const std::vector<Direction> xy = {{pi / 2, 0.0}, {pi / 2, pi / 2}};
  return qubit_assignment(std::vector<std::vector<Direction>>(static_cast<std::size_t>(n), xy));
}

double singlet_correlator(double theta_a, double theta_b) {
  const auto ma = qubit_assignment({{{theta_a, 0.0}}, {{theta_b, 0.0}}});
  return correlator(behavior_from_quantum(singlet_state(), ma), 0);
}

}  // namespace bell::quantum
