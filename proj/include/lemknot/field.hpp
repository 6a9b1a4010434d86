#pragma once

#include <array>

#include "lemknot/braid.hpp"
#include "lemknot/semiholo.hpp"

namespace lemknot {

struct OddRepeatsError : Error {
  using Error::Error;
};

// Exact expansion of prod_j (u - lambda * Z_j(h)).
BraidHeightPolynomial braid_polynomial(const std::vector<TrigStrand>& strands,
                                       const Rational& lambda);

// f_lambda(u, v, v_bar) from a lemniscate spec or explicit strands.
SemiholoPolynomial build_field(const LemniscateSpec& spec);
SemiholoPolynomial build_field(const std::vector<TrigStrand>& strands, const Rational& lambda);

// f(u/lambda, v) * lambda^{deg_u f}; the scaling identity of the family.
SemiholoPolynomial rescale_u(const SemiholoPolynomial& f, const Rational& lambda);

struct SpatialMonomial {
  int ex = 0;
  int ey = 0;
  int ez = 0;
  auto operator<=>(const SpatialMonomial&) const = default;
};

// Numerator polynomial of f after the stereographic substitution, with the
// exact rational form, the integerised form and the clearing constant.
struct SpatialPolynomial {
  std::map<SpatialMonomial, GaussianRational> exact;
  std::map<SpatialMonomial, std::pair<Integer, Integer>> integerized;  // (re, im)
  Integer clearing{1};
  int cleared_power = 0;  // power of (r^2+1) multiplied through

  std::complex<double> eval(double x, double y, double z) const;
};

// u = (r^2 - 1 + 2iz) / (r^2 + 1), v = 2(x + iy) / (r^2 + 1), cleared by
// (r^2+1)^d with d the joint total degree of f.
SpatialPolynomial stereographic_substitute(const SemiholoPolynomial& f);

// Real target pair F = (F_re, F_im) on R^4, from rho-power clearing of the
// scaled family; polynomial in x1..x4 with rational coefficients.
struct RealPolynomial4 {
  std::map<std::array<int, 4>, Rational> re;
  std::map<std::array<int, 4>, Rational> im;
  int rho_power = 0;  // the K used in rho^K f_rho(u/rho, v/rho)

  std::array<double, 2> eval(const std::array<double, 4>& x) const;
  // 2x4 Jacobian, exact termwise differentiation evaluated at x.
  std::array<std::array<double, 4>, 2> jacobian(const std::array<double, 4>& x) const;
};

// Requires even r so that every v / v_bar exponent in f_1 is even; throws
// OddRepeatsError otherwise. f1 must be the lambda = 1 member of the family.
RealPolynomial4 milnor_polynomial(const SemiholoPolynomial& f1, const LemniscateSpec& spec);

// Direct real pair of a holomorphic polynomial (Brauner torus maps).
RealPolynomial4 real_pair_of_holomorphic(const SemiholoPolynomial& f);

}  // namespace lemknot
