#pragma once

#include <complex>
#include <map>

#include "lemknot/cyclotomic.hpp"

namespace lemknot {

enum class TrigKind { Cos, Sin };

// Finite Fourier sum  sum_m c_m exp(i m h / D)  with exact cyclotomic
// coefficients c_m, all sharing one cyclotomic order. Zero coefficients are
// never stored.
class ExpLaurentPoly {
 public:
  ExpLaurentPoly() : order_(4), denom_(1) {}
  ExpLaurentPoly(unsigned order, long denom) : order_(order), denom_(denom) {
    if (denom < 1) throw Error("denominator frequency must be positive");
  }

  static ExpLaurentPoly constant(unsigned order, const Rational& value);

  unsigned order() const { return order_; }
  long denominator() const { return denom_; }
  const std::map<long, Cyclotomic>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(long exponent, const Cyclotomic& coeff);

  // Representation with denominator new_denom (old must divide it) and/or a
  // promoted cyclotomic order.
  ExpLaurentPoly rescaled(unsigned new_order, long new_denom) const;
  // Smallest denominator representing the same sum.
  ExpLaurentPoly normalized() const;

  ExpLaurentPoly conj() const;  // h-> h with coefficients conjugated, m -> -m

  std::complex<double> eval(double h) const;

  friend ExpLaurentPoly operator+(const ExpLaurentPoly& a, const ExpLaurentPoly& b);
  friend ExpLaurentPoly operator-(const ExpLaurentPoly& a, const ExpLaurentPoly& b);
  friend ExpLaurentPoly operator-(const ExpLaurentPoly& a);
  friend ExpLaurentPoly operator*(const ExpLaurentPoly& a, const ExpLaurentPoly& b);
  friend ExpLaurentPoly operator*(const ExpLaurentPoly& a, const Cyclotomic& s);
  friend ExpLaurentPoly operator*(const ExpLaurentPoly& a, const Rational& s);
  friend bool operator==(const ExpLaurentPoly& a, const ExpLaurentPoly& b);

 private:
  unsigned order_;
  long denom_;
  std::map<long, Cyclotomic> terms_;
};

inline ExpLaurentPoly laurent_mul(const ExpLaurentPoly& p, const ExpLaurentPoly& q) {
  return p * q;
}

// amplitude * cos((freq_num/freq_den) h + 2*pi*phase)  (or sin). The phase is
// a rational multiple of a full turn; its denominator fixes the root of unity
// absorbed into the coefficients. Coefficient order is lcm(4, phase denom).
ExpLaurentPoly trig_term(TrigKind kind, const Rational& amplitude, long freq_num,
                         long freq_den, const Rational& phase);

unsigned lcm_order(unsigned a, unsigned b);
long lcm_long(long a, long b);

}  // namespace lemknot
