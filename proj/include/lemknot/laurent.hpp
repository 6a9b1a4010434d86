#pragma once

#include <map>

#include "lemknot/rational.hpp"

namespace lemknot {

// Laurent polynomial in t over a GMP scalar. Zero coefficients are dropped.
template <typename Scalar>
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const Scalar& constant) {
    if (constant != 0) terms_[0] = constant;
  }
  static LaurentPoly monomial(int exp, const Scalar& c) {
    LaurentPoly p;
    if (c != 0) p.terms_[exp] = c;
    return p;
  }

  const std::map<int, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  int span() const { return terms_.empty() ? 0 : max_exp() - min_exp(); }

  Scalar coefficient(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(int exp, const Scalar& c) {
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
      if (c != 0) terms_[exp] = c;
      return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  Scalar evaluate_at_one() const {
    Scalar acc(0);
    for (const auto& [e, c] : terms_) acc += c;
    return acc;
  }

  LaurentPoly reciprocal() const {  // t -> 1/t
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.terms_[-e] = c;
    return p;
  }

  LaurentPoly shifted(int delta) const {
    LaurentPoly p;
    for (const auto& [e, c] : terms_) p.terms_[e + delta] = c;
    return p;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r;
    for (const auto& [e, c] : a.terms_) r.terms_[e] = -c;
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }

  // Exact division; throws if the quotient is not a Laurent polynomial.
  friend LaurentPoly divide_exact(const LaurentPoly& num, const LaurentPoly& den) {
    if (den.is_zero()) throw Error("laurent division by zero");
    if (num.is_zero()) return {};
    LaurentPoly rem = num;
    LaurentPoly quot;
    const int de = den.max_exp();
    const Scalar& dc = den.terms_.rbegin()->second;
    // exponents of an exact quotient cannot drop below this
    const int low_bound = num.min_exp() - den.min_exp();
    while (!rem.is_zero()) {
      const auto& [re, rc] = *rem.terms_.rbegin();
      int shift = re - de;
      if (shift < low_bound) throw Error("laurent division is not exact");
      Scalar q = rc / dc;
      if (q * dc != rc) throw Error("laurent division is not exact");
      quot.add_term(shift, q);
      for (const auto& [e, c] : den.terms_) rem.add_term(e + shift, -(c * q));
    }
    return quot;
  }

 private:
  std::map<int, Scalar> terms_;
};

using IntLaurentPoly = LaurentPoly<Integer>;
using RatLaurentPoly = LaurentPoly<Rational>;

inline RatLaurentPoly to_rational(const IntLaurentPoly& p) {
  RatLaurentPoly r;
  for (const auto& [e, c] : p.terms()) r.add_term(e, Rational(c));
  return r;
}

}  // namespace lemknot
