#pragma once

#include <array>
#include <functional>

#include "lemknot/semiholo.hpp"

namespace lemknot {

// Rational-map hopfion data: W = c * v^N / f^m in the equivariant (u, v)
// coordinates of R^3. The profile d(r) must decrease monotonically with
// d(0) = pi and d(inf) = 0.
struct HopfionSpec {
  SemiholoPolynomial f;
  int numerator_power = 1;  // N
  int multiplicity = 1;     // m
  Rational numerator_constant{1};
  std::function<double(double)> profile;  // defaults to 4*atan(exp(-r))

  // Q = N * m * deg_u(f)
  long predicted_charge() const;
};

// d(r) = 4 atan(e^{-r/width}); d(0) = pi exactly, monotone to 0.
std::function<double(double)> default_profile(double width = 1.0);

class HopfionField {
 public:
  explicit HopfionField(HopfionSpec spec);

  const HopfionSpec& spec() const { return spec_; }

  // (u, v) coordinates of the compactifying map at a spatial point.
  std::array<std::complex<double>, 2> uv(const std::array<double, 3>& x) const;
  // Riemann-sphere value W; may be infinite on the hopfion locus f = 0.
  std::complex<double> w_value(const std::array<double, 3>& x) const;
  // Unit vector phi; the f = 0 locus maps to (0,0,-1), spatial infinity
  // to the vacuum (0,0,1).
  std::array<double, 3> phi(const std::array<double, 3>& x) const;

 private:
  HopfionSpec spec_;
};

}  // namespace lemknot
