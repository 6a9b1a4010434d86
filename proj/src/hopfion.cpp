#include "lemknot/hopfion.hpp"

#include <cmath>

namespace lemknot {

long HopfionSpec::predicted_charge() const {
  return static_cast<long>(numerator_power) * multiplicity * f.degree_u();
}

std::function<double(double)> default_profile(double width) {
  return [width](double r) { return 4.0 * std::atan(std::exp(-r / width)); };
}

HopfionField::HopfionField(HopfionSpec spec) : spec_(std::move(spec)) {
  if (!spec_.profile) spec_.profile = default_profile();
  if (spec_.numerator_power < 0) throw ValidationError("numerator power must be >= 0");
  if (spec_.multiplicity < 1) throw ValidationError("multiplicity must be >= 1");
}

std::array<std::complex<double>, 2> HopfionField::uv(const std::array<double, 3>& x) const {
  double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  double d = spec_.profile(r);
  // sin(d(r))/r continues to -d'(0) at the origin; with d(0) = pi the limit
  // direction only matters through v, u -> (-1, 0) there.
  double sinc;
  if (r < 1e-9) {
    double d_eps = spec_.profile(1e-6);
    sinc = std::sin(d_eps) / 1e-6;
  } else {
    sinc = std::sin(d) / r;
  }
  std::complex<double> u{std::cos(d), sinc * x[2]};
  std::complex<double> v{sinc * x[0], sinc * x[1]};
  return {u, v};
}

std::complex<double> HopfionField::w_value(const std::array<double, 3>& x) const {
  auto [u, v] = uv(x);
  std::complex<double> num = spec_.numerator_constant.get_d() *
                             std::pow(v, spec_.numerator_power);
  std::complex<double> den = std::pow(spec_.f.value(u, v), spec_.multiplicity);
  return num / den;
}

std::array<double, 3> HopfionField::phi(const std::array<double, 3>& x) const {
  auto [u, v] = uv(x);
  std::complex<double> num = spec_.numerator_constant.get_d() *
                             std::pow(v, spec_.numerator_power);
  std::complex<double> den = std::pow(spec_.f.value(u, v), spec_.multiplicity);
  // Inverse stereographic of W = num/den through W = (phi1 + i phi2)/(1 + phi3),
  // written with |num|, |den| so poles land exactly on (0,0,-1).
  double n2 = std::norm(num), d2 = std::norm(den);
  double scale = n2 + d2;
  if (scale == 0.0) return {0.0, 0.0, 1.0};  // undefined point; vacuum by convention
  std::complex<double> cross = num * std::conj(den);
  return {2.0 * cross.real() / scale, 2.0 * cross.imag() / scale, (d2 - n2) / scale};
}

}  // namespace lemknot
