#include "bell/random.hpp"

#include <cmath>
#include <numbers>

#include "bell/errors.hpp"

namespace bell {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw InvariantError("uniform_int needs lo <= hi");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> Rng::simplex(std::size_t size) {
  std::vector<double> v(size);
  double sum = 0.0;
  for (auto& x : v) {
    x = -std::log(1.0 - uniform());
    sum += x;
  }
  if (sum <= 0.0) {
    v.assign(size, 1.0 / static_cast<double>(size));
    return v;
  }
  for (auto& x : v) x /= sum;
  return v;
}

}  // namespace bell
