#pragma once

#include <complex>
#include <vector>

#include "lemknot/gaussian_rational.hpp"
#include "lemknot/rational.hpp"

namespace lemknot {

struct OrderMismatchError : Error {
  using Error::Error;
};

// Raised when a cyclotomic value is required to lie in Q(i) but does not.
struct NotGaussianError : Error {
  using Error::Error;
};

// Shared per-order data: the cyclotomic polynomial Phi_N and reduction rows.
// Elements of Q(zeta_N) are stored in the power basis 1, x, ..., x^(phi(N)-1)
// and reduced modulo Phi_N, which gives canonical representatives.
class CyclotomicContext {
 public:
  static const CyclotomicContext& get(unsigned order);

  unsigned order() const { return order_; }
  unsigned degree() const { return degree_; }

  // x^(degree + k) reduced mod Phi_N, for k = 0 .. degree-2.
  const std::vector<Rational>& overflow_row(unsigned k) const { return overflow_[k]; }
  // x^k mod Phi_N for any k >= 0 (cached for k < order).
  const std::vector<Rational>& power(unsigned k) const;

 private:
  explicit CyclotomicContext(unsigned order);

  unsigned order_;
  unsigned degree_;
  std::vector<Integer> phi_;  // monic, length degree_+1
  std::vector<std::vector<Rational>> overflow_;
  std::vector<std::vector<Rational>> powers_;  // x^k for k = 0 .. order-1
};

class Cyclotomic {
 public:
  Cyclotomic() : order_(1), coeffs_(1, Rational(0)) {}
  Cyclotomic(unsigned order, const Rational& constant);
  static Cyclotomic zero(unsigned order) { return Cyclotomic(order, Rational(0)); }
  static Cyclotomic one(unsigned order) { return Cyclotomic(order, Rational(1)); }
  // zeta_N^k
  static Cyclotomic root_of_unity(unsigned order, long k);
  static Cyclotomic from_gaussian(unsigned order, const GaussianRational& g);

  unsigned order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;

  Cyclotomic promoted(unsigned new_order) const;  // requires order() | new_order
  Cyclotomic conj() const;                        // zeta -> zeta^(N-1)

  // Exact value as p + q*i. Requires 4 | order; throws NotGaussianError if
  // the element is not in Q(i).
  GaussianRational to_gaussian() const;

  std::complex<double> to_complex() const;

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Rational& s);
  friend Cyclotomic operator*(const Rational& s, const Cyclotomic& a) { return a * s; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

 private:
  unsigned order_;
  std::vector<Rational> coeffs_;  // length = phi(order_)
};

inline Cyclotomic cyclo_mul(const Cyclotomic& x, const Cyclotomic& y) { return x * y; }
inline GaussianRational cyclo_to_gaussian(const Cyclotomic& x) { return x.to_gaussian(); }

unsigned euler_phi(unsigned n);

// Monic integer coefficients of Phi_n, ascending.
std::vector<Integer> cyclotomic_polynomial(unsigned n);

}  // namespace lemknot
