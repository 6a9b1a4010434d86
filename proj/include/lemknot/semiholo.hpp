#pragma once

#include <complex>
#include <compare>
#include <map>
#include <vector>

#include "lemknot/exp_laurent.hpp"
#include "lemknot/gaussian_rational.hpp"

namespace lemknot {

struct NonIntegerExponentError : Error {
  using Error::Error;
};

struct SemiholoMonomial {
  int eu = 0;
  int ev = 0;
  int evb = 0;
  auto operator<=>(const SemiholoMonomial&) const = default;
};

struct SemiholoEvaluation {
  std::complex<double> f;
  std::complex<double> fu;
  std::complex<double> fv;
  std::complex<double> fvb;
};

// Polynomial in u, v and conj(v) with Q(i) coefficients, holomorphic in u.
// No term ever carries both a positive v power and a positive conj(v) power.
class SemiholoPolynomial {
 public:
  SemiholoPolynomial() = default;

  const std::map<SemiholoMonomial, GaussianRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const SemiholoMonomial& m, const GaussianRational& c);

  int degree_u() const;
  int degree_v_vbar() const;  // max over terms of ev + evb
  GaussianRational coefficient(int eu, int ev, int evb) const;

  SemiholoPolynomial derivative_u() const;
  SemiholoPolynomial derivative_v() const;
  SemiholoPolynomial derivative_vbar() const;

  // Horner in u with precomputed v powers; partials from the term table.
  SemiholoEvaluation evaluate(std::complex<double> u, std::complex<double> v) const;
  std::complex<double> value(std::complex<double> u, std::complex<double> v) const {
    return evaluate(u, v).f;
  }

  // Coefficients (ascending in u) of f(., v) with v fixed, v_bar = conj(v).
  std::vector<std::complex<double>> u_coefficients(std::complex<double> v) const;

  friend SemiholoPolynomial operator+(const SemiholoPolynomial& a, const SemiholoPolynomial& b);
  friend SemiholoPolynomial operator-(const SemiholoPolynomial& a, const SemiholoPolynomial& b);
  friend SemiholoPolynomial operator*(const SemiholoPolynomial& a, const SemiholoPolynomial& b);
  friend SemiholoPolynomial operator*(const SemiholoPolynomial& a, const GaussianRational& s);
  friend bool operator==(const SemiholoPolynomial& a, const SemiholoPolynomial& b) {
    return a.terms_ == b.terms_;
  }

  static SemiholoPolynomial monomial(int eu, int ev, int evb, const GaussianRational& c);

 private:
  std::map<SemiholoMonomial, GaussianRational> terms_;
};

// Polynomial in u whose coefficients are exact Fourier sums in h.
class BraidHeightPolynomial {
 public:
  BraidHeightPolynomial() = default;
  explicit BraidHeightPolynomial(std::vector<ExpLaurentPoly> coeffs)
      : coeffs_(std::move(coeffs)) {}

  static BraidHeightPolynomial one(unsigned order);

  const std::vector<ExpLaurentPoly>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  // Multiply by the linear factor (u - z).
  void append_root(const ExpLaurentPoly& z);

  std::complex<double> eval(std::complex<double> u, double h) const;

 private:
  std::vector<ExpLaurentPoly> coeffs_;  // ascending powers of u
};

// Substitutes exp(i h) -> v, exp(-i h) -> v_bar. Every surviving exponent
// must be an integer multiple of the denominator frequency and every
// coefficient must lie in Q(i).
SemiholoPolynomial to_semiholo(const BraidHeightPolynomial& p);

// Multiply through by the positive lcm of coefficient denominators.
std::pair<SemiholoPolynomial, Integer> integerize(const SemiholoPolynomial& f);

}  // namespace lemknot
