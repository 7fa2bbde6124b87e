#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "bell/errors.hpp"
#include "bell/quantum.hpp"

using namespace bell;
using namespace bell::quantum;
using cd = std::complex<double>;
using std::numbers::pi;

namespace {

// Partial trace over qubit `drop` of a two-qubit density matrix, written out
// index by index (qubit 0 is the high bit).
Matrix reduce_two_qubits(const Matrix& rho, int drop) {
  Matrix out = Matrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const int row = drop == 1 ? 2 * i + k : 2 * k + i;
        const int col = drop == 1 ? 2 * j + k : 2 * k + j;
        out(i, j) += rho(row, col);
      }
  return out;
}

// <psi| P_0 (x) ... (x) P_{n-1} |psi> for Pauli labels 'X'/'Y'/'Z', applied
// by bit manipulation on the amplitude vector.
double pauli_string_expectation(const std::vector<cd>& psi, const std::string& labels) {
  const int n = static_cast<int>(labels.size());
  std::vector<cd> out(psi.size(), 0.0);
  for (std::size_t basis = 0; basis < psi.size(); ++basis) {
    std::size_t target = basis;
    cd factor = 1.0;
    for (int q = 0; q < n; ++q) {
      const std::size_t bit = std::size_t{1} << (n - 1 - q);
      const bool one = basis & bit;
      switch (labels[q]) {
        case 'X': target ^= bit; break;
        case 'Y': target ^= bit; factor *= one ? cd(0, -1) : cd(0, 1); break;
        case 'Z': factor *= one ? -1.0 : 1.0; break;
      }
    }
    out[target] += factor * psi[basis];
  }
  cd e = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) e += std::conj(psi[i]) * out[i];
  return e.real();
}

std::vector<cd> ghz_vector(int n) {
  std::vector<cd> psi(std::size_t{1} << n, 0.0);
  psi.front() = psi.back() = 1.0 / std::sqrt(2.0);
  return psi;
}

}  // namespace

TEST_CASE("singlet_state") {
  const auto rho = singlet_state();
  CHECK(rho.dim() == 4);
  CHECK(std::abs(rho.matrix().trace() - cd(1.0)) < 1e-15);
  CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-14));
  // |psi> = (|01> - |10>)/sqrt2
  CHECK(rho.matrix()(1, 1).real() == doctest::Approx(0.5));
  CHECK(rho.matrix()(1, 2).real() == doctest::Approx(-0.5));
  for (int drop = 0; drop < 2; ++drop) {
    const Matrix red = reduce_two_qubits(rho.matrix(), drop);
    CHECK((red - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("ghz_state") {
  const auto rho = ghz_state(3);
  CHECK(rho.dim() == 8);
  CHECK(std::abs(rho.matrix().trace() - cd(1.0)) < 1e-15);
  CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(ghz_state(2), InvariantError);

  // Oracle values from the amplitude vector.
  const auto psi = ghz_vector(3);
  CHECK(pauli_string_expectation(psi, "XXX") == doctest::Approx(1.0));
  CHECK(pauli_string_expectation(psi, "XYY") == doctest::Approx(-1.0));

  // Same values from the density matrix path.
  const Matrix xxx = kron(kron(pauli_x(), pauli_x()), pauli_x());
  const Matrix xyy = kron(kron(pauli_x(), pauli_y()), pauli_y());
  CHECK(std::abs(rho.expectation(xxx) - cd(1.0)) < 1e-12);
  CHECK(std::abs(rho.expectation(xyy) - cd(-1.0)) < 1e-12);
  CHECK(ghz_state(4).dim() == 16);
}

TEST_CASE("GHZ correlators from the Born-rule behavior") {
  const Behavior b = behavior_from_quantum(ghz_state(3), xy_assignment(3));
  const Scenario& s = b.scenario();
  const auto psi = ghz_vector(3);
  for (std::size_t js = 0; js < s.joint_setting_count(); ++js) {
    const auto xs = s.joint_setting(js);
    std::string labels;
    for (int x : xs) labels += x == 0 ? 'X' : 'Y';
    CHECK(std::abs(correlator(b, js) - pauli_string_expectation(psi, labels)) <= 1e-10);
  }
  CHECK(std::abs(correlator(b, s.joint_setting_index(std::vector<int>{0, 0, 0})) - 1.0) <= 1e-10);
  for (const auto& xs : {std::vector<int>{0, 1, 1}, std::vector<int>{1, 0, 1}, std::vector<int>{1, 1, 0}})
    CHECK(std::abs(correlator(b, s.joint_setting_index(xs)) + 1.0) <= 1e-10);
}

TEST_CASE("qubit_observable") {
  const auto z = qubit_observable(0.0, 0.0);
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  CHECK((z.projector(0) - p0).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((z.projector(1) - p1).cwiseAbs().maxCoeff() < 1e-15);

  const auto x = qubit_observable(pi / 2, 0.0);
  const Matrix id = Matrix::Identity(2, 2);
  CHECK((x.projector(0) - (id + pauli_x()) / 2.0).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((x.projector(1) - (id - pauli_x()) / 2.0).cwiseAbs().maxCoeff() < 1e-15);

  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const auto m = qubit_observable(pi * rng.uniform(), 2 * pi * rng.uniform());
    CHECK((m.projector(0) + m.projector(1) - id).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("invariant violations are rejected at construction") {
  Matrix not_hermitian = Matrix::Zero(2, 2);
  not_hermitian(0, 0) = 1.0;
  not_hermitian(0, 1) = 0.3;
  CHECK_THROWS_AS(DensityMatrix{not_hermitian}, InvariantError);

  Matrix bad_trace = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix{bad_trace}, InvariantError);

  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{negative}, InvariantError);

  Matrix half = Matrix::Identity(2, 2) / 2.0;
  CHECK_THROWS_AS(ProjectiveMeasurement({half, half}), InvariantError);
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  CHECK_THROWS_AS(ProjectiveMeasurement({p0}), InvariantError);
}

TEST_CASE("behavior_from_quantum examples") {
  SUBCASE("product eigenstate measured in its basis") {
    Vector psi = Vector::Zero(4);
    psi(0) = 1.0;
    const auto ma = qubit_assignment({{{0.0, 0.0}}, {{0.0, 0.0}}});
    const Behavior b = behavior_from_quantum(DensityMatrix::from_pure(psi), ma);
    CHECK(b.table()[0] == doctest::Approx(1.0));
    CHECK(std::abs(b.table()[1]) + std::abs(b.table()[2]) + std::abs(b.table()[3]) < 1e-15);
  }
  SUBCASE("singlet along z") {
    const auto ma = qubit_assignment({{{0.0, 0.0}}, {{0.0, 0.0}}});
    const Behavior b = behavior_from_quantum(singlet_state(), ma);
    // Oracle: amplitudes (0, 1, -1, 0)/sqrt2 give |<ab|psi>|^2 directly.
    const double expected[4] = {0.0, 0.5, 0.5, 0.0};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(b.table()[i] - expected[i]) < 1e-15);
  }
  SUBCASE("maximally mixed state") {
    Rng rng(3);
    std::vector<std::vector<Direction>> dirs(2);
    for (auto& party : dirs)
      for (int x = 0; x < 2; ++x) party.emplace_back(pi * rng.uniform(), 2 * pi * rng.uniform());
    const Behavior b = behavior_from_quantum(DensityMatrix::maximally_mixed(4), qubit_assignment(dirs));
    for (double v : b.table()) CHECK(v == doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(behavior_from_quantum(ghz_state(3), chsh_optimal_assignment()), StructureError);
  }
}

TEST_CASE("singlet marginals and correlations") {
  const Behavior b = behavior_from_quantum(singlet_state(), chsh_optimal_assignment());
  for (std::size_t js = 0; js < 4; ++js)
    for (int p = 0; p < 2; ++p) {
      const auto m = marginal(b, p, js);
      CHECK(std::abs(m[0] - 0.5) < 1e-14);
      CHECK(std::abs(m[1] - 0.5) < 1e-14);
    }
  CHECK_FALSE(is_product_behavior(b));
  const auto same = qubit_assignment({{{0.7, 0.0}}, {{0.7, 0.0}}});
  CHECK(correlator(behavior_from_quantum(singlet_state(), same), 0) == doctest::Approx(-1.0));
}

TEST_CASE("singlet_correlator") {
  CHECK(singlet_correlator(0.3, 0.3) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(singlet_correlator(0.2, 0.2 + pi / 2)) < 1e-12);
  CHECK(singlet_correlator(0.0, pi / 4) == doctest::Approx(-std::sqrt(2.0) / 2).epsilon(1e-12));
  // 50-point grid against -cos(a - b).
  for (int i = 0; i < 50; ++i) {
    const double a = -pi + 2 * pi * i / 50.0;
    const double b = 0.37 * i;
    CHECK(std::abs(singlet_correlator(a, b) + std::cos(a - b)) <= 1e-10);
  }
}

TEST_CASE("property: random states give valid non-signalling behaviors") {
  Rng rng(20140917);
  for (int trial = 0; trial < 120; ++trial) {
    const int parties = trial % 4 == 3 ? 3 : 2;
    std::vector<std::vector<Direction>> dirs(static_cast<std::size_t>(parties));
    for (auto& party : dirs)
      for (int x = 0; x < 2; ++x) party.emplace_back(pi * rng.uniform(), 2 * pi * rng.uniform());
    const auto state = random_pure_state(rng, 1 << parties);
    const Behavior b = behavior_from_quantum(state, qubit_assignment(dirs));
    CHECK(validate_behavior(b, 1e-9).is_valid);
    CHECK(no_signalling_check(b, 1e-9).passes);
  }
}

TEST_CASE("property: product states give product behaviors") {
  Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = random_pure_state(rng, 2);
    const auto b = random_pure_state(rng, 2);
    const DensityMatrix product(kron(a.matrix(), b.matrix()));
    std::vector<std::vector<Direction>> dirs(2);
    for (auto& party : dirs)
      for (int x = 0; x < 2; ++x) party.emplace_back(pi * rng.uniform(), 2 * pi * rng.uniform());
    CHECK(is_product_behavior(behavior_from_quantum(product, qubit_assignment(dirs)), 1e-12));
  }
}
